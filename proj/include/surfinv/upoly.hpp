#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace surfinv {

/// Dense univariate polynomial over a field F, coefficients ascending.
/// F needs default construction (= 0), +,-,*,/, unary -, ==, is_zero().
template <class F>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(F v) { return UPoly(std::vector<F>{std::move(v)}); }
  static UPoly ident() {  // the variable itself
    return UPoly(std::vector<F>{F(), unit()});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : F();
  }
  const F& leading() const {
    if (is_zero()) throw std::domain_error("UPoly: leading of zero");
    return c_.back();
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return UPoly(std::move(r));
  }
  UPoly operator-() const {
    std::vector<F> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<F> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly scaled(const F& s) const {
    std::vector<F> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  /// Euclidean division; requires b != 0.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
    UPoly r = a;
    std::vector<F> q;
    if (a.degree() >= b.degree()) q.resize(a.degree() - b.degree() + 1);
    while (!r.is_zero() && r.degree() >= b.degree()) {
      F f = r.leading() / b.leading();
      int shift = r.degree() - b.degree();
      q[shift] = f;
      // r -= f * x^shift * b
      for (int i = 0; i <= b.degree(); ++i)
        r.c_[i + shift] = r.c_[i + shift] - f * b.c_[i];
      r.trim();
    }
    return {UPoly(std::move(q)), r};
  }

  /// Exact division; throws if the remainder is nonzero.
  static UPoly exact_div(const UPoly& a, const UPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("UPoly: division not exact");
    return q;
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    F inv = unit() / leading();
    return scaled(inv);
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r).monic();
    }
    return a.monic();
  }

  /// Returns (g, u, v) with u*a + v*b = g, g monic (or zero).
  static std::tuple<UPoly, UPoly, UPoly> ext_gcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b;
    UPoly s0 = constant(unit()), s1;
    UPoly t0, t1 = constant(unit());
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      UPoly s = s0 - q * s1;
      UPoly t = t0 - q * t1;
      r0 = std::move(r1); r1 = std::move(r);
      s0 = std::move(s1); s1 = std::move(s);
      t0 = std::move(t1); t1 = std::move(t);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    F inv = unit() / r0.leading();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<F> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * F(static_cast<long>(i));
    return UPoly(std::move(r));
  }

  /// f / gcd(f, f'), made monic. Characteristic-zero fields only.
  UPoly squarefree() const {
    if (is_zero()) return *this;
    UPoly g = gcd(*this, derivative());
    return exact_div(*this, g).monic();
  }

  F eval(const F& x) const {
    F acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

 private:
  static F unit() { return F(1L); }
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<F> c_;
};

}  // namespace surfinv
