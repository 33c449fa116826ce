#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "surfinv/matrix.hpp"
#include "surfinv/mpoly.hpp"

namespace surfinv {

struct BlowupDirection {
  NFElem u, v;
};

/// One base point with its virtual multiplicity sequence m1, m2, ... and the
/// blow-up direction data placing each infinitely near point. Virtual chains
/// are deliberately NOT required to satisfy proximity inequalities, and zero
/// entries mid-chain are pass-through levels.
struct SingularityChain {
  std::pair<NFElem, NFElem> base_point;
  std::vector<int> mults;
  std::vector<BlowupDirection> directions;

  void validate() const {
    if (mults.empty()) throw std::invalid_argument("SingularityChain: empty multiplicity list");
    for (int m : mults)
      if (m < 0) throw std::invalid_argument("SingularityChain: negative multiplicity");
    if (mults.size() > 1 && directions.size() != mults.size() - 1)
      throw std::invalid_argument("SingularityChain: need one direction per level after the first");
    for (const auto& d : directions)
      if (d.u.is_zero() && d.v.is_zero())
        throw std::invalid_argument("SingularityChain: zero direction");
  }
};

struct CurveSection {
  MPoly poly;  // leading coefficient 1 under grlex(x > y)
};

namespace detail {

/// F(..., var + a, ...) via Horner shift.
inline MPoly shift_var(const MPoly& f, int var, const NFElem& a) {
  if (a.is_zero()) return f;
  auto coeffs = f.as_univariate(var);
  int d = f.degree_in(var);
  if (d <= 0) return f;
  MPoly acc(f.context(), f.vars());
  MPoly shift = MPoly::variable(f.context(), f.vars(), (*f.vars())[var]) +
                MPoly::constant(f.context(), f.vars(), a);
  for (int k = d; k >= 0; --k) {
    acc = acc * shift;
    auto it = coeffs.find(k);
    if (it != coeffs.end()) acc = acc + it->second;
  }
  return acc;
}

inline MPoly translate_to_origin(const MPoly& f, const std::pair<NFElem, NFElem>& p, int vx,
                                 int vy) {
  return shift_var(shift_var(f, vx, p.first), vy, p.second);
}

/// Blow-up chart of the convention: for a direction (u,v) with u != 0 the
/// substitution is y <- x*(v/u + y); for u = 0 it is x <- x*y. The infinitely
/// near point sits at the new origin either way.
inline MPoly chart_substitute(const MPoly& f, const BlowupDirection& dir, int vx, int vy) {
  const FieldPtr& ctx = f.context();
  const VarsPtr& vars = f.vars();
  if (!dir.u.is_zero()) {
    NFElem c = dir.v / dir.u;
    auto coeffs = f.as_univariate(vy);
    int d = f.degree_in(vy);
    MPoly mult = MPoly::variable(ctx, vars, (*vars)[vx]) *
                 (MPoly::variable(ctx, vars, (*vars)[vy]) + MPoly::constant(ctx, vars, c));
    MPoly acc(ctx, vars);
    for (int k = std::max(d, 0); k >= 0; --k) {
      acc = acc * mult;
      auto it = coeffs.find(k);
      if (it != coeffs.end()) acc = acc + it->second;
    }
    return acc;
  }
  auto coeffs = f.as_univariate(vx);
  int d = f.degree_in(vx);
  MPoly mult = MPoly::variable(ctx, vars, (*vars)[vx]) * MPoly::variable(ctx, vars, (*vars)[vy]);
  MPoly acc(ctx, vars);
  for (int k = std::max(d, 0); k >= 0; --k) {
    acc = acc * mult;
    auto it = coeffs.find(k);
    if (it != coeffs.end()) acc = acc + it->second;
  }
  return acc;
}

inline int chart_axis(const BlowupDirection& dir, int vx, int vy) {
  return dir.u.is_zero() ? vy : vx;
}

inline bool ambiguous_direction(const BlowupDirection& dir) {
  return !dir.u.is_zero() && !dir.v.is_zero() && dir.u == dir.v;
}

}  // namespace detail

/// Linear system of affine plane curves of degree <= d with virtual
/// multiplicity conditions at (possibly infinitely near) points. Holds the
/// current solution basis as coefficient columns over the monomial list.
class PlaneSystem {
 public:
  /// Unconstrained system of degree d; dimension (d+1)(d+2)/2.
  static PlaneSystem generic(int degree, FieldPtr ctx = nullptr) {
    if (degree < 0) throw std::invalid_argument("PlaneSystem: negative degree");
    PlaneSystem s;
    s.degree_ = degree;
    s.ctx_ = std::move(ctx);
    s.vars_ = make_vars({"x", "y"});
    for (int t = degree; t >= 0; --t)  // grlex descending
      for (int i = t; i >= 0; --i) s.monomials_.push_back({i, t - i});
    const int n = static_cast<int>(s.monomials_.size());
    s.cols_.assign(n, std::vector<NFElem>(n));
    for (int j = 0; j < n; ++j) s.cols_[j][j] = NFElem(1L);
    return s;
  }

  int degree() const { return degree_; }
  int dimension() const { return static_cast<int>(cols_.size()); }
  const FieldPtr& context() const { return ctx_; }
  const VarsPtr& vars() const { return vars_; }
  const std::vector<SingularityChain>& conditions() const { return conditions_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Appends the chain's linear conditions level by level: translate, kill all
  /// jets of order < m, re-parametrize, blow up along the given direction,
  /// divide the transform exactly by the chart coordinate power, repeat.
  PlaneSystem imposed(const SingularityChain& chain) const {
    chain.validate();
    PlaneSystem out = *this;
    out.conditions_.push_back(chain);
    for (const auto& d : chain.directions)
      if (detail::ambiguous_direction(d))
        out.warnings_.push_back(
            "direction with u = v != 0: both blow-up charts apply; using y <- x*(v/u + y)");
    if (out.dimension() == 0) return out;

    const int vx = 0, vy = 1;
    std::vector<MPoly> members = out.members();
    for (auto& f : members) f = detail::translate_to_origin(f, chain.base_point, vx, vy);

    for (size_t lvl = 0; lvl < chain.mults.size(); ++lvl) {
      const int m = chain.mults[lvl];
      if (m > 0) {
        std::vector<std::vector<int>> low;
        for (int a = 0; a < m; ++a)
          for (int b = 0; a + b < m; ++b) low.push_back({a, b});
        ExactMatrix cond(static_cast<int>(low.size()), static_cast<int>(members.size()));
        for (size_t r = 0; r < low.size(); ++r)
          for (size_t t = 0; t < members.size(); ++t)
            cond.at(static_cast<int>(r), static_cast<int>(t)) = members[t].coefficient(low[r]);
        auto kernel = kernel_basis(cond);
        if (kernel.empty()) {
          out.cols_.clear();
          return out;
        }
        out.reparametrize(members, kernel);
      }
      if (lvl + 1 < chain.mults.size()) {
        const auto& dir = chain.directions[lvl];
        const int axis = detail::chart_axis(dir, vx, vy);
        for (size_t t = 0; t < members.size(); ++t) {
          MPoly f = detail::chart_substitute(members[t], dir, vx, vy);
          if (m > 0) f = f.shift_down(axis, m);  // exact by the conditions just imposed
          NFElem s{f.content_scale()};
          members[t] = f.scaled(s);
          for (auto& v : out.cols_[t]) v *= s;
        }
      }
    }
    return out;
  }

  /// Deterministically normalized basis: reduced echelon with respect to
  /// grlex(x > y), each leading coefficient 1.
  std::vector<CurveSection> sections() const {
    std::vector<std::vector<NFElem>> rows;  // one per section, over monomials_
    for (const auto& c : cols_) rows.push_back(c);
    const int n = static_cast<int>(monomials_.size());
    int r = 0;
    for (int col = 0; col < n && r < static_cast<int>(rows.size()); ++col) {
      int piv = -1;
      for (int i = r; i < static_cast<int>(rows.size()); ++i)
        if (!rows[i][col].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(rows[r], rows[piv]);
      NFElem inv = rows[r][col].inverse();
      for (int j = col; j < n; ++j) rows[r][j] *= inv;
      for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        if (i == r || rows[i][col].is_zero()) continue;
        NFElem f = rows[i][col];
        for (int j = col; j < n; ++j) rows[i][j] -= f * rows[r][j];
      }
      ++r;
    }
    std::vector<CurveSection> out;
    for (int i = 0; i < r; ++i) {
      MPoly p(ctx_, vars_);
      for (int j = 0; j < n; ++j)
        if (!rows[i][j].is_zero()) p.add_term(monomials_[j], rows[i][j]);
      out.push_back(CurveSection{std::move(p)});
    }
    return out;
  }

  /// Current basis as polynomials (unnormalized).
  std::vector<MPoly> members() const {
    std::vector<MPoly> out;
    out.reserve(cols_.size());
    for (const auto& c : cols_) {
      MPoly p(ctx_, vars_);
      for (size_t j = 0; j < monomials_.size(); ++j)
        if (!c[j].is_zero()) p.add_term(monomials_[j], c[j]);
      out.push_back(std::move(p));
    }
    return out;
  }

 private:
  void reparametrize(std::vector<MPoly>& members, const std::vector<std::vector<NFElem>>& kernel) {
    std::vector<MPoly> new_members;
    std::vector<std::vector<NFElem>> new_cols;
    new_members.reserve(kernel.size());
    new_cols.reserve(kernel.size());
    for (const auto& k : kernel) {
      MPoly f(ctx_, vars_);
      std::vector<NFElem> col(monomials_.size());
      for (size_t t = 0; t < k.size(); ++t) {
        if (k[t].is_zero()) continue;
        f = f + members[t].scaled(k[t]);
        for (size_t j = 0; j < monomials_.size(); ++j)
          if (!cols_[t][j].is_zero()) col[j] += k[t] * cols_[t][j];
      }
      // one common scale keeps the member polynomial and its coefficient
      // column aligned for the next level's kernel
      NFElem s{f.content_scale()};
      for (auto& v : col) v *= s;
      new_members.push_back(f.scaled(s));
      new_cols.push_back(std::move(col));
    }
    members = std::move(new_members);
    cols_ = std::move(new_cols);
  }

  int degree_ = 0;
  FieldPtr ctx_;
  VarsPtr vars_;
  std::vector<std::vector<int>> monomials_;   // grlex descending
  std::vector<std::vector<NFElem>> cols_;     // solution basis columns
  std::vector<SingularityChain> conditions_;
  std::vector<std::string> warnings_;
};

inline PlaneSystem generic_system(int degree, FieldPtr ctx = nullptr) {
  return PlaneSystem::generic(degree, std::move(ctx));
}
inline PlaneSystem impose_chain(const PlaneSystem& sys, const SingularityChain& chain) {
  return sys.imposed(chain);
}

/// Intersection multiplicity of two affine curves at a point, by the classical
/// recursive reduction: split off powers of the local coordinates, then lower
/// y-degrees by pseudo-division. INFINITE when the curves share a component
/// through the point.
struct LocalIntersection {
  bool infinite = false;
  long long value = 0;
};

namespace detail {

inline long long ord_univariate(const MPoly& f, int var) {
  // order of vanishing at 0 of f restricted to the var-axis
  return f.min_exponent(var);
}

/// f(0, y) as a polynomial (x set to zero).
inline MPoly restrict_var(const MPoly& f, int var) {
  MPoly out(f.context(), f.vars());
  for (const auto& [e, c] : f.terms())
    if (e[var] == 0) out.add_term(e, c);
  return out;
}

inline bool vanishes_at_origin(const MPoly& f) {
  return f.coefficient(std::vector<int>(f.arity(), 0)).is_zero();
}

inline std::optional<long long> local_intersection_origin(MPoly F, MPoly G, int vx, int vy) {
  if (F.is_zero() || G.is_zero()) return std::nullopt;  // infinite
  if (!vanishes_at_origin(F) || !vanishes_at_origin(G)) return 0;

  long long total = 0;
  // split off powers of the local coordinates
  for (int round = 0; round < 2; ++round) {
    MPoly& A = round == 0 ? F : G;
    MPoly& B = round == 0 ? G : F;
    for (int axis : {vx, vy}) {
      int a = A.min_exponent(axis);
      if (a == 0) continue;
      A = A.shift_down(axis, a);
      // I(axis, B) = order of B on the axis
      MPoly rb = restrict_var(B, axis);
      if (rb.is_zero()) return std::nullopt;  // the axis divides both
      total += static_cast<long long>(a) * ord_univariate(rb, axis == vx ? vy : vx);
    }
  }
  if (!vanishes_at_origin(F) || !vanishes_at_origin(G)) return total;

  if (F.degree_in(vy) > G.degree_in(vy)) std::swap(F, G);
  // both now vanish at the origin with no x or y factor, so deg_y >= 1
  auto fc = F.as_univariate(vy);
  const int df = F.degree_in(vy);
  const int dg = G.degree_in(vy);
  MPoly lc = fc.at(df);
  const int k = dg - df + 1;
  // pseudo-remainder of lc^k * G by F in y
  MPoly R = MPoly::pow(lc, k) * G;
  for (int d = dg; d >= df;) {
    auto rc = R.as_univariate(vy);
    auto it = rc.find(d);
    if (it == rc.end() || it->second.is_zero()) {
      --d;
      continue;
    }
    MPoly q = MPoly::exact_div(it->second, lc);
    R = R - q.shift_up(vy, d - df) * F;
    --d;
  }
  if (R.is_zero()) return std::nullopt;

  auto i_fr = local_intersection_origin(F, R, vx, vy);
  if (!i_fr) return std::nullopt;
  auto i_flc = local_intersection_origin(F, lc, vx, vy);
  if (!i_flc) return std::nullopt;
  return total + *i_fr - static_cast<long long>(k) * (*i_flc);
}

}  // namespace detail

inline LocalIntersection local_intersection(const MPoly& F, const MPoly& G,
                                            const std::pair<NFElem, NFElem>& p) {
  if (F.is_zero() || G.is_zero())
    throw std::invalid_argument("local_intersection: zero polynomial");
  const int vx = 0, vy = 1;
  MPoly Ft = detail::translate_to_origin(F, p, vx, vy);
  MPoly Gt = detail::translate_to_origin(G, p, vx, vy);
  auto r = detail::local_intersection_origin(std::move(Ft), std::move(Gt), vx, vy);
  if (!r) return LocalIntersection{true, 0};
  return LocalIntersection{false, *r};
}

/// Per-level verification that a concrete curve satisfies a virtual chain,
/// by actual substitution and division (independent of the linear-condition
/// path used to build systems).
struct ChainCheck {
  int level = 0;
  int required = 0;
  bool passed = false;
};
struct VerifyReport {
  bool ok = true;
  std::vector<ChainCheck> levels;
  std::vector<std::string> warnings;
};

inline VerifyReport verify_chain(const MPoly& F, const SingularityChain& chain) {
  chain.validate();
  if (F.is_zero()) throw std::invalid_argument("verify_chain: zero polynomial");
  const int vx = 0, vy = 1;
  VerifyReport rep;
  MPoly f = detail::translate_to_origin(F, chain.base_point, vx, vy);
  for (size_t lvl = 0; lvl < chain.mults.size(); ++lvl) {
    const int m = chain.mults[lvl];
    bool ok = true;
    for (const auto& [e, c] : f.terms()) {
      if (e[vx] + e[vy] < m) {
        ok = false;
        break;
      }
    }
    rep.levels.push_back(ChainCheck{static_cast<int>(lvl) + 1, m, ok});
    if (!ok) {
      rep.ok = false;
      return rep;
    }
    if (lvl + 1 < chain.mults.size()) {
      const auto& dir = chain.directions[lvl];
      if (detail::ambiguous_direction(dir))
        rep.warnings.push_back(
            "direction with u = v != 0: both blow-up charts apply; using y <- x*(v/u + y)");
      f = detail::chart_substitute(f, dir, vx, vy);
      if (m > 0) f = f.shift_down(detail::chart_axis(dir, vx, vy), m);
      if (f.is_zero()) break;  // curve contains the whole exceptional chain
    }
  }
  return rep;
}

}  // namespace surfinv
