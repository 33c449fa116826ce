#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "surfinv/numberfield.hpp"

namespace surfinv {

using VarsPtr = std::shared_ptr<const std::vector<std::string>>;

inline VarsPtr make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

/// Graded lexicographic order; earlier variables rank higher.
struct GrlexLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    int ta = std::accumulate(a.begin(), a.end(), 0);
    int tb = std::accumulate(b.begin(), b.end(), 0);
    if (ta != tb) return ta < tb;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];  // smaller exponent on x ranks lower
    }
    return false;
  }
};

/// Sparse multivariate polynomial over Q or Q(alpha). Exponent vectors have
/// fixed arity equal to the variable list; zero coefficients are never stored.
class MPoly {
 public:
  using TermMap = std::map<std::vector<int>, NFElem, GrlexLess>;

  MPoly() = default;
  MPoly(FieldPtr ctx, VarsPtr vars) : ctx_(std::move(ctx)), vars_(std::move(vars)) {}

  static MPoly zero(FieldPtr ctx, VarsPtr vars) { return MPoly(std::move(ctx), std::move(vars)); }
  static MPoly constant(FieldPtr ctx, VarsPtr vars, NFElem v) {
    MPoly p(std::move(ctx), std::move(vars));
    p.add_term(std::vector<int>(p.arity(), 0), std::move(v));
    return p;
  }
  static MPoly variable(FieldPtr ctx, VarsPtr vars, const std::string& name) {
    MPoly p(ctx, vars);
    std::vector<int> e(p.arity(), 0);
    e[p.var_index(name)] = 1;
    p.add_term(std::move(e), NFElem(1L));
    return p;
  }
  static MPoly monomial(FieldPtr ctx, VarsPtr vars, std::vector<int> exps, NFElem v) {
    MPoly p(std::move(ctx), std::move(vars));
    p.add_term(std::move(exps), std::move(v));
    return p;
  }

  const FieldPtr& context() const { return ctx_; }
  const VarsPtr& vars() const { return vars_; }
  const TermMap& terms() const { return t_; }
  int arity() const { return vars_ ? static_cast<int>(vars_->size()) : 0; }
  bool is_zero() const { return t_.empty(); }

  int var_index(const std::string& name) const {
    if (!vars_) throw std::invalid_argument("MPoly: no variables");
    for (size_t i = 0; i < vars_->size(); ++i)
      if ((*vars_)[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("MPoly: unknown variable '" + name + "'");
  }

  int total_degree() const {  // -1 for zero
    if (t_.empty()) return -1;
    const auto& e = t_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
  }
  int degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e[var]);
    return d;
  }

  NFElem coefficient(const std::vector<int>& exps) const {
    auto it = t_.find(exps);
    return it == t_.end() ? NFElem() : it->second;
  }
  /// Leading term under grlex.
  std::pair<std::vector<int>, NFElem> leading_term() const {
    if (t_.empty()) throw std::domain_error("MPoly: leading term of zero");
    return *t_.rbegin();
  }

  void add_term(std::vector<int> exps, NFElem c) {
    if (static_cast<int>(exps.size()) != arity())
      throw std::invalid_argument("MPoly: exponent arity mismatch");
    if (c.is_zero()) return;
    if (c.context()) merge_ctx(c.context());
    auto it = t_.find(exps);
    if (it == t_.end()) {
      t_.emplace(std::move(exps), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    check_vars(a, b);
    MPoly r = a;
    r.merge_ctx(b.ctx_);
    if (!r.vars_) r.vars_ = b.vars_;
    for (const auto& [e, c] : b.t_) {
      auto it = r.t_.find(e);
      if (it == r.t_.end())
        r.t_.emplace(e, c);
      else {
        it->second += c;
        if (it->second.is_zero()) r.t_.erase(it);
      }
    }
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    check_vars(a, b);
    MPoly r(a.ctx_ ? a.ctx_ : b.ctx_, a.vars_ ? a.vars_ : b.vars_);
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ea, ca] : a.t_) {
      for (const auto& [eb, cb] : b.t_) {
        NFElem c = ca * cb;
        if (c.is_zero()) continue;
        std::vector<int> e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        auto it = r.t_.find(e);
        if (it == r.t_.end())
          r.t_.emplace(std::move(e), std::move(c));
        else {
          it->second += c;
          if (it->second.is_zero()) r.t_.erase(it);
        }
      }
    }
    return r;
  }
  MPoly scaled(const NFElem& s) const {
    MPoly r(ctx_, vars_);
    if (s.is_zero()) return r;
    r.merge_ctx(s.context());
    for (const auto& [e, c] : t_) {
      NFElem v = c * s;
      if (!v.is_zero()) r.t_.emplace(e, std::move(v));
    }
    return r;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return (a - b).is_zero(); }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  /// Simultaneous substitution; every variable not in subs maps to itself.
  MPoly substitute(const std::map<std::string, MPoly>& subs) const {
    for (const auto& [name, p] : subs) (void)var_index(name);  // unknown name -> throw
    std::vector<const MPoly*> image(arity(), nullptr);
    for (const auto& [name, p] : subs) {
      check_vars(*this, p);
      image[var_index(name)] = &p;
    }
    MPoly r(ctx_, vars_);
    for (const auto& [e, c] : t_) {
      MPoly term = MPoly::constant(ctx_, vars_, c);
      for (int v = 0; v < arity(); ++v) {
        if (e[v] == 0) continue;
        if (image[v] == nullptr) {
          std::vector<int> m(arity(), 0);
          m[v] = e[v];
          term = term * MPoly::monomial(ctx_, vars_, std::move(m), NFElem(1L));
        } else {
          term = term * pow(*image[v], e[v]);
        }
      }
      r = r + term;
    }
    return r;
  }

  static MPoly pow(const MPoly& base, int n) {
    if (n < 0) throw std::invalid_argument("MPoly: negative power");
    MPoly acc = MPoly::constant(base.ctx_, base.vars_, NFElem(1L));
    MPoly b = base;
    while (n > 0) {
      if (n & 1) acc = acc * b;
      b = (n >>= 1) ? b * b : b;
    }
    return acc;
  }

  NFElem eval(const std::vector<NFElem>& point) const {
    if (static_cast<int>(point.size()) != arity())
      throw std::invalid_argument("MPoly: evaluation point arity mismatch");
    NFElem acc;
    for (const auto& [e, c] : t_) {
      NFElem term = c;
      for (int v = 0; v < arity(); ++v)
        for (int k = 0; k < e[v]; ++k) term *= point[v];
      acc += term;
    }
    return acc;
  }

  MPoly derivative(int var, int order = 1) const {
    if (order < 0) throw std::invalid_argument("MPoly: negative derivative order");
    MPoly r = *this;
    for (int k = 0; k < order; ++k) {
      MPoly d(r.ctx_, r.vars_);
      for (const auto& [e, c] : r.t_) {
        if (e[var] == 0) continue;
        std::vector<int> e2 = e;
        e2[var] -= 1;
        d.t_.emplace(std::move(e2), c * NFElem(static_cast<long>(e[var])));
      }
      // merging of like terms is impossible here: the exponent shift is injective
      r = std::move(d);
    }
    return r;
  }

  /// Exact division by x_var^k; throws if some term has a smaller exponent.
  MPoly shift_down(int var, int k) const {
    MPoly r(ctx_, vars_);
    for (const auto& [e, c] : t_) {
      if (e[var] < k) throw std::domain_error("MPoly: not divisible by requested power");
      std::vector<int> e2 = e;
      e2[var] -= k;
      r.t_.emplace(std::move(e2), c);
    }
    return r;
  }
  MPoly shift_up(int var, int k) const {
    MPoly r(ctx_, vars_);
    for (const auto& [e, c] : t_) {
      std::vector<int> e2 = e;
      e2[var] += k;
      r.t_.emplace(std::move(e2), c);
    }
    return r;
  }
  /// Largest k with x_var^k dividing the polynomial (0 for zero poly).
  int min_exponent(int var) const {
    int m = -1;
    for (const auto& [e, c] : t_) m = (m < 0) ? e[var] : std::min(m, e[var]);
    return m < 0 ? 0 : m;
  }

  /// Exact multivariate division; throws when not exact.
  static MPoly exact_div(const MPoly& a, const MPoly& b) {
    check_vars(a, b);
    if (b.is_zero()) throw std::domain_error("MPoly: division by zero");
    MPoly r = a;
    MPoly q(a.ctx_ ? a.ctx_ : b.ctx_, a.vars_ ? a.vars_ : b.vars_);
    auto [eb, cb] = b.leading_term();
    while (!r.is_zero()) {
      auto [er, cr] = r.leading_term();
      std::vector<int> e(er.size());
      for (size_t i = 0; i < e.size(); ++i) {
        e[i] = er[i] - eb[i];
        if (e[i] < 0) throw std::domain_error("MPoly: division not exact");
      }
      NFElem c = cr / cb;
      MPoly t = MPoly::monomial(q.ctx_, q.vars_, std::move(e), std::move(c));
      q = q + t;
      r = r - t * b;
    }
    return q;
  }

  /// Coefficients with respect to one variable: result[k] has that variable's
  /// exponent zeroed out.
  std::map<int, MPoly> as_univariate(int var) const {
    std::map<int, MPoly> out;
    for (const auto& [e, c] : t_) {
      std::vector<int> e2 = e;
      int k = e2[var];
      e2[var] = 0;
      auto it = out.find(k);
      if (it == out.end()) it = out.emplace(k, MPoly(ctx_, vars_)).first;
      it->second.t_.emplace(std::move(e2), c);
    }
    return out;
  }

  /// Strictly univariate view; throws if any other variable occurs.
  UPoly<NFElem> to_upoly(int var) const {
    std::vector<NFElem> c(std::max(degree_in(var) + 1, 0));
    for (const auto& [e, coef] : t_) {
      for (int v = 0; v < arity(); ++v)
        if (v != var && e[v] != 0)
          throw std::domain_error("MPoly: not univariate in requested variable");
      c[e[var]] = coef;
    }
    return UPoly<NFElem>(std::move(c));
  }
  static MPoly from_upoly(const UPoly<NFElem>& p, FieldPtr ctx, VarsPtr vars, int var) {
    MPoly r(std::move(ctx), std::move(vars));
    for (int i = 0; i <= p.degree(); ++i) {
      if (p.coeff(i).is_zero()) continue;
      std::vector<int> e(r.arity(), 0);
      e[var] = i;
      r.t_.emplace(std::move(e), p.coeff(i));
    }
    return r;
  }

  /// Rational factor s such that scaled(s) has integral, content-free
  /// coefficients and a positive leading rational component.
  Rational content_scale() const {
    if (is_zero()) return Rational(1);
    mpz_class num = 0, den = 1;
    for (const auto& [e, c] : t_) {
      num = gcd_z(num, c.numerator_gcd());
      den = lcm_z(den, c.denominator_lcm());
    }
    Rational scale{mpq_class(den, num)};
    const auto& lead = t_.rbegin()->second;
    for (auto it = lead.coeffs().rbegin(); it != lead.coeffs().rend(); ++it) {
      if (it->is_zero()) continue;
      if (it->sign() < 0) scale = -scale;
      break;
    }
    return scale;
  }

  /// Divides out the rational content (gcd of all numerators / lcm of all
  /// denominators over every coefficient component); sign fixed so the grlex
  /// leading rational component is positive. Returns the primitive polynomial.
  MPoly primitive() const {
    if (is_zero()) return *this;
    return scaled(NFElem(content_scale()));
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string cs = c.str();
      bool neg = !c.is_rational() ? false : (c.rational_part().sign() < 0);
      bool composite = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
      if (first) {
        first = false;
        if (neg) { os << "-"; cs = (-c).str(); }
      } else {
        os << (neg ? " - " : " + ");
        if (neg) cs = (-c).str();
      }
      std::string mono;
      for (int v = 0; v < arity(); ++v) {
        if (e[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += (*vars_)[v];
        if (e[v] > 1) mono += "^" + std::to_string(e[v]);
      }
      if (mono.empty()) {
        os << (composite ? "(" + cs + ")" : cs);
      } else if (c.is_rational() && (neg ? (-c) : c).rational_part().is_one()) {
        os << mono;
      } else {
        os << (composite ? "(" + cs + ")" : cs) << "*" << mono;
      }
    }
    return os.str();
  }

  static void check_vars(const MPoly& a, const MPoly& b) {
    if (!a.vars_ || !b.vars_) {
      if (a.vars_ != b.vars_ && a.vars_ && b.vars_)
        throw std::invalid_argument("MPoly: variable list mismatch");
      return;
    }
    if (a.vars_ == b.vars_) return;
    if (*a.vars_ != *b.vars_) throw std::invalid_argument("MPoly: variable list mismatch");
  }

 private:
  void merge_ctx(const FieldPtr& other) {
    if (!other) return;
    if (!ctx_) { ctx_ = other; return; }
    if (ctx_ != other && !ctx_->same_field(*other))
      throw std::domain_error("MPoly: mixed field contexts");
  }

  FieldPtr ctx_;
  VarsPtr vars_;
  TermMap t_;
};

}  // namespace surfinv
