#pragma once

#include <stdexcept>
#include <vector>

#include "surfinv/matrix.hpp"
#include "surfinv/mpoly.hpp"

namespace surfinv {

/// Sylvester matrix of f, g with respect to one variable; entries are
/// polynomials in the remaining variables.
inline std::vector<std::vector<MPoly>> sylvester_matrix(const MPoly& f, const MPoly& g, int var) {
  const int df = f.degree_in(var);
  const int dg = g.degree_in(var);
  if (df <= 0 && dg <= 0)
    throw std::invalid_argument("resultant: both polynomials constant in the variable");
  auto fc = f.as_univariate(var);
  auto gc = g.as_univariate(var);
  const FieldPtr ctx = f.context() ? f.context() : g.context();
  const VarsPtr vars = f.vars() ? f.vars() : g.vars();
  const MPoly z = MPoly::zero(ctx, vars);
  auto coeff = [&](const std::map<int, MPoly>& c, int k) -> MPoly {
    auto it = c.find(k);
    return it == c.end() ? z : it->second;
  };
  const int n = df + dg;
  std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n, z));
  for (int i = 0; i < dg; ++i)
    for (int k = 0; k <= df; ++k) m[i][i + k] = coeff(fc, df - k);
  for (int i = 0; i < df; ++i)
    for (int k = 0; k <= dg; ++k) m[dg + i][i + k] = coeff(gc, dg - k);
  return m;
}

/// res_var(f, g): determinant of the Sylvester matrix, computed fraction-free.
/// Zero exactly when f and g share a factor of positive degree in var.
inline MPoly resultant(const MPoly& f, const MPoly& g, int var) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
  const int df = f.degree_in(var);
  const int dg = g.degree_in(var);
  if (df <= 0 && dg <= 0)
    throw std::invalid_argument("resultant: both polynomials constant in the variable");
  const FieldPtr ctx = f.context() ? f.context() : g.context();
  const VarsPtr vars = f.vars() ? f.vars() : g.vars();
  if (df <= 0) return MPoly::pow(f, dg);   // res(c, g) = c^deg(g)
  if (dg <= 0) return MPoly::pow(g, df);
  auto m = sylvester_matrix(f, g, var);
  return bareiss_determinant(m, MPoly::constant(ctx, vars, NFElem(1L)));
}

inline MPoly resultant(const MPoly& f, const MPoly& g, const std::string& var) {
  return resultant(f, g, f.vars() ? f.var_index(var) : g.var_index(var));
}

/// f / gcd(f, f') for a univariate input, normalized monic.
inline MPoly squarefree_part(const MPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
  int var = -1;
  for (int v = 0; v < f.arity(); ++v) {
    if (f.degree_in(v) > 0) {
      if (var >= 0) throw std::invalid_argument("squarefree_part: polynomial not univariate");
      var = v;
    }
  }
  if (var < 0) return MPoly::constant(f.context(), f.vars(), NFElem(1L));
  UPoly<NFElem> u = f.to_upoly(var);
  return MPoly::from_upoly(u.squarefree(), f.context(), f.vars(), var);
}

}  // namespace surfinv
