#pragma once

#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "surfinv/rational.hpp"
#include "surfinv/upoly.hpp"

namespace surfinv {

/// A simple extension Q(alpha) given by the monic minimal polynomial of alpha.
/// Degree 1 is plain Q. Immutable; shared between all elements of the field.
class NumberField {
 public:
  /// min_poly coefficients ascending, leading coefficient must be 1.
  static std::shared_ptr<const NumberField> make(std::vector<Rational> min_poly,
                                                 std::string generator = "r") {
    return std::shared_ptr<const NumberField>(
        new NumberField(std::move(min_poly), std::move(generator)));
  }

  int degree() const { return deg_; }
  const std::vector<Rational>& min_poly() const { return m_; }
  const std::string& generator() const { return gen_; }

  /// Reduction row for alpha^(degree+i), i in [0, degree-2].
  const std::vector<Rational>& power_row(int i) const { return pow_rows_[i]; }

  bool same_field(const NumberField& o) const {
    if (this == &o) return true;
    return m_ == o.m_;
  }

 private:
  NumberField(std::vector<Rational> min_poly, std::string gen)
      : m_(std::move(min_poly)), gen_(std::move(gen)) {
    if (m_.size() < 2) throw std::invalid_argument("NumberField: min poly must have degree >= 1");
    if (!m_.back().is_one())
      throw std::invalid_argument("NumberField: min poly must be monic");
    deg_ = static_cast<int>(m_.size()) - 1;
    // alpha^deg = -(m_0 + m_1 alpha + ... + m_{deg-1} alpha^{deg-1})
    std::vector<Rational> row(deg_);
    for (int j = 0; j < deg_; ++j) row[j] = -m_[j];
    pow_rows_.push_back(row);
    for (int i = 1; i <= deg_ - 2; ++i) {
      const auto& prev = pow_rows_.back();
      std::vector<Rational> next(deg_);
      // multiply by alpha: shift, then reduce the overflow term.
      for (int j = 0; j + 1 < deg_; ++j) next[j + 1] = prev[j];
      const Rational& top = prev[deg_ - 1];
      if (!top.is_zero())
        for (int j = 0; j < deg_; ++j) next[j] += top * pow_rows_[0][j];
      pow_rows_.push_back(std::move(next));
    }
  }

  std::vector<Rational> m_;
  std::string gen_;
  int deg_ = 1;
  std::vector<std::vector<Rational>> pow_rows_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of Q or of a simple extension Q(alpha). A null context means plain
/// rational; mixed-context arithmetic promotes rationals into the other side's
/// field and rejects genuinely different fields.
class NFElem {
 public:
  NFElem() : c_{Rational()} {}
  NFElem(long n) : c_{Rational(n)} {}
  NFElem(int n) : c_{Rational(n)} {}
  NFElem(Rational r) : c_{std::move(r)} {}
  NFElem(FieldPtr ctx, std::vector<Rational> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    int d = ctx_ ? ctx_->degree() : 1;
    if (static_cast<int>(c_.size()) > d)
      throw std::invalid_argument("NFElem: too many coefficients for field degree");
    c_.resize(d);
    if (d == 1) ctx_.reset();
  }

  static NFElem constant(const FieldPtr& ctx, Rational r) {
    if (!ctx || ctx->degree() == 1) return NFElem(std::move(r));
    std::vector<Rational> c(ctx->degree());
    c[0] = std::move(r);
    return NFElem(ctx, std::move(c));
  }
  static NFElem generator(const FieldPtr& ctx) {
    if (!ctx || ctx->degree() == 1)
      throw std::invalid_argument("NFElem: generator needs degree > 1 context");
    std::vector<Rational> c(ctx->degree());
    c[1] = Rational(1);
    return NFElem(ctx, std::move(c));
  }

  const FieldPtr& context() const { return ctx_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_one() const {
    if (!c_[0].is_one()) return false;
    for (size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  const Rational& rational_part() const { return c_[0]; }

  friend bool operator==(const NFElem& a, const NFElem& b) {
    auto [x, y] = unify(a, b);
    return x.c_ == y.c_;
  }
  friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

  NFElem operator-() const {
    NFElem r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend NFElem operator+(const NFElem& a, const NFElem& b) {
    auto [x, y] = unify(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend NFElem operator-(const NFElem& a, const NFElem& b) {
    auto [x, y] = unify(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
  }
  friend NFElem operator*(const NFElem& a, const NFElem& b) {
    auto [x, y] = unify(a, b);
    if (!x.ctx_) {
      x.c_[0] *= y.c_[0];
      return x;
    }
    const int d = x.ctx_->degree();
    std::vector<Rational> prod(2 * d - 1);
    for (int i = 0; i < d; ++i) {
      if (x.c_[i].is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        if (y.c_[j].is_zero()) continue;
        prod[i + j] += x.c_[i] * y.c_[j];
      }
    }
    std::vector<Rational> red(prod.begin(), prod.begin() + d);
    for (int k = d; k < 2 * d - 1; ++k) {
      if (prod[k].is_zero()) continue;
      const auto& row = x.ctx_->power_row(k - d);
      for (int j = 0; j < d; ++j) red[j] += prod[k] * row[j];
    }
    return NFElem(x.ctx_, std::move(red));
  }
  friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

  NFElem& operator+=(const NFElem& o) { return *this = *this + o; }
  NFElem& operator-=(const NFElem& o) { return *this = *this - o; }
  NFElem& operator*=(const NFElem& o) { return *this = *this * o; }
  NFElem& operator/=(const NFElem& o) { return *this = *this / o; }

  /// Extended-Euclid inverse modulo the minimal polynomial.
  NFElem inverse() const {
    if (is_zero()) throw std::domain_error("NFElem: division by zero");
    if (!ctx_) return NFElem(c_[0].inverse());
    UPoly<Rational> a{std::vector<Rational>(c_)};
    UPoly<Rational> m{std::vector<Rational>(ctx_->min_poly())};
    auto [g, u, v] = UPoly<Rational>::ext_gcd(a, m);
    (void)v;
    if (g.degree() != 0)
      throw std::domain_error("NFElem: element not invertible (reducible min poly?)");
    // g is monic constant 1 already; u*a = 1 mod m.
    std::vector<Rational> inv(ctx_->degree());
    for (int i = 0; i <= u.degree() && i < ctx_->degree(); ++i) inv[i] = u.coeff(i);
    return NFElem(ctx_, std::move(inv));
  }

  /// Deterministic printable form, e.g. "-1496/675*r - 10976/625".
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    const std::string gen = ctx_ ? ctx_->generator() : "r";
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      Rational v = c_[i];
      if (first) {
        if (v.sign() < 0) { os << "-"; v = -v; }
        first = false;
      } else {
        os << (v.sign() < 0 ? " - " : " + ");
        if (v.sign() < 0) v = -v;
      }
      if (i == 0 || !v.is_one()) os << v.str();
      if (i > 0) {
        if (!v.is_one()) os << "*";
        os << gen;
        if (i > 1) os << "^" << i;
      }
    }
    if (first) os << "0";
    return os.str();
  }

  /// lcm of coefficient denominators (for row scaling).
  mpz_class denominator_lcm() const {
    mpz_class l = 1;
    for (const auto& x : c_) l = lcm_z(l, x.denominator());
    return l;
  }
  /// gcd of coefficient numerators, 0 if the element is 0.
  mpz_class numerator_gcd() const {
    mpz_class g = 0;
    for (const auto& x : c_) g = gcd_z(g, x.numerator());
    return g;
  }

  static std::pair<NFElem, NFElem> unify(const NFElem& a, const NFElem& b) {
    if (a.ctx_ == b.ctx_) return {a, b};
    if (!a.ctx_) {
      NFElem ap = constant(b.ctx_, a.c_[0]);
      return {ap, b};
    }
    if (!b.ctx_) return {a, constant(a.ctx_, b.c_[0])};
    if (a.ctx_->same_field(*b.ctx_)) {
      NFElem bp(a.ctx_, std::vector<Rational>(b.c_));
      return {a, bp};
    }
    throw std::domain_error("NFElem: mismatched field contexts");
  }

 private:
  FieldPtr ctx_;               // null = plain rational
  std::vector<Rational> c_;    // length = field degree (1 when ctx_ is null)
};

}  // namespace surfinv
