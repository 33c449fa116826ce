#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "surfinv/mpoly.hpp"
#include "surfinv/resultant.hpp"

namespace surfinv {

/// Complex number over GMP floats at an explicit working precision.
struct CF {
  mpf_class re, im;

  explicit CF(unsigned long prec) : re(0, prec), im(0, prec) {}
  CF(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}

  unsigned long prec() const { return re.get_prec(); }

  friend CF operator+(const CF& a, const CF& b) { return CF(a.re + b.re, a.im + b.im); }
  friend CF operator-(const CF& a, const CF& b) { return CF(a.re - b.re, a.im - b.im); }
  friend CF operator*(const CF& a, const CF& b) {
    return CF(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend CF operator/(const CF& a, const CF& b) {
    mpf_class d = b.re * b.re + b.im * b.im;
    if (d == 0) throw std::domain_error("CF: division by zero");
    return CF((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
  }
  CF operator-() const { return CF(-re, -im); }

  bool is_zero() const { return re == 0 && im == 0; }
  mpf_class norm2() const { return re * re + im * im; }
  mpf_class abs() const {
    mpf_class n = norm2();
    mpf_class r(0, re.get_prec());
    mpf_sqrt(r.get_mpf_t(), n.get_mpf_t());
    return r;
  }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline mpf_class sqrt_mpf(const mpf_class& x) {
  if (x < 0) throw std::domain_error("sqrt of negative");
  mpf_class r(0, x.get_prec());
  mpf_sqrt(r.get_mpf_t(), x.get_mpf_t());
  return r;
}

inline CF sqrt_cf(const CF& z) {
  unsigned long p = z.prec();
  if (z.is_zero()) return CF(p);
  mpf_class r = z.abs();
  mpf_class two(2, p);
  if (z.re >= 0) {
    mpf_class wr = sqrt_mpf(mpf_class((r + z.re) / two));
    return CF(wr, mpf_class(z.im / (two * wr)));
  }
  mpf_class wi = sqrt_mpf(mpf_class((r - z.re) / two));
  if (z.im < 0) wi = -wi;
  return CF(mpf_class(z.im / (two * wi)), wi);
}

inline CF cf_from_rational(const Rational& q, unsigned long prec) {
  mpf_class r(0, prec);
  mpf_set_q(r.get_mpf_t(), q.raw().get_mpq_t());
  return CF(r, mpf_class(0, prec));
}

/// Horner evaluation of a complex-coefficient polynomial (ascending).
inline CF cf_eval(const std::vector<CF>& coeffs, const CF& z) {
  CF acc(z.prec());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

namespace detail {

struct AberthResult {
  bool converged = false;
  std::vector<CF> roots;
};

/// Aberth-Ehrlich simultaneous iteration. Deterministic start configuration;
/// `warm` optionally seeds from a previous lower-precision run.
inline AberthResult aberth(const std::vector<CF>& coeffs, unsigned long prec,
                           const std::vector<CF>* warm = nullptr) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  AberthResult out;
  if (n < 1) {
    out.converged = true;
    return out;
  }
  std::vector<CF> dc;  // derivative coefficients
  dc.reserve(n);
  for (int i = 1; i <= n; ++i)
    dc.push_back(coeffs[i] * CF(mpf_class(i, prec), mpf_class(0, prec)));

  // Cauchy-style inclusion radius, in double precision (guesses only).
  double lcabs = coeffs[n].abs().get_d();
  if (lcabs == 0) throw std::domain_error("aberth: zero leading coefficient");
  double radius = 0.0;
  for (int i = 0; i < n; ++i) {
    double m = coeffs[i].abs().get_d() / lcabs;
    if (std::isfinite(m)) radius = std::max(radius, m);
  }
  radius = 1.0 + radius;
  if (!std::isfinite(radius) || radius > 1e100) radius = 1e100;

  std::vector<CF> z;
  z.reserve(n);
  for (int j = 0; j < n; ++j) {
    if (warm && j < static_cast<int>(warm->size())) {
      CF w(prec);
      w.re = (*warm)[j].re;
      w.im = (*warm)[j].im;
      z.push_back(w);
      continue;
    }
    double ang = 2.0 * M_PI * j / n + 0.4;
    double rj = radius * (0.35 + 0.5 * (j + 1.0) / n);
    CF w(prec);
    w.re = rj * std::cos(ang);
    w.im = rj * std::sin(ang);
    z.push_back(w);
  }

  mpf_class eps(0, prec);
  mpf_div_2exp(eps.get_mpf_t(), mpf_class(1, prec).get_mpf_t(), prec > 28 ? prec - 24 : 4);

  const int max_iter = 400;
  for (int iter = 0; iter < max_iter; ++iter) {
    mpf_class worst(0, prec);
    for (int j = 0; j < n; ++j) {
      CF p = cf_eval(coeffs, z[j]);
      CF dp = cf_eval(dc, z[j]);
      if (dp.is_zero()) {
        // nudge off the critical point
        z[j].re += mpf_class(1e-3 * (j + 1), prec);
        worst = 1;
        continue;
      }
      CF newton = p / dp;
      CF sum(prec);
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        CF diff = z[j] - z[k];
        if (diff.is_zero()) {
          diff.re += mpf_class(1e-6 * (k + 1), prec);
        }
        sum = sum + CF(mpf_class(1, prec), mpf_class(0, prec)) / diff;
      }
      CF denom = CF(mpf_class(1, prec), mpf_class(0, prec)) - newton * sum;
      CF delta = denom.is_zero() ? newton : newton / denom;
      z[j] = z[j] - delta;
      mpf_class scale = z[j].abs() + 1;
      mpf_class rel = delta.abs() / scale;
      if (rel > worst) worst = rel;
    }
    if (worst < eps) {
      out.converged = true;
      out.roots = std::move(z);
      return out;
    }
  }
  out.roots = std::move(z);
  return out;
}

}  // namespace detail

/// Deterministic complex embedding of the field generator: the root of the
/// minimal polynomial with the largest imaginary part (ties broken by larger
/// real part). For the quadratic fields of interest this is the root with
/// positive imaginary part.
inline CF embed_generator(const NumberField& nf, unsigned long prec) {
  std::vector<CF> mc;
  mc.reserve(nf.min_poly().size());
  for (const auto& q : nf.min_poly()) mc.push_back(cf_from_rational(q, prec));
  auto res = detail::aberth(mc, prec);
  if (!res.converged) throw std::runtime_error("embed_generator: root iteration stalled");
  int best = 0;
  for (int i = 1; i < static_cast<int>(res.roots.size()); ++i) {
    const CF& a = res.roots[i];
    const CF& b = res.roots[best];
    if (a.im > b.im || (a.im == b.im && a.re > b.re)) best = i;
  }
  return res.roots[best];
}

inline CF embed_elem(const NFElem& e, const CF& alpha, unsigned long prec) {
  CF acc(prec);
  const auto& c = e.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * alpha + cf_from_rational(*it, prec);
  return acc;
}

struct IsolatedRoots {
  std::vector<CF> roots;            // one per distinct root of the squarefree part
  unsigned long precision_bits = 0; // final working precision
};

/// Approximates every distinct complex root of f (univariate over Q or
/// Q(alpha)); the input is squarefree-processed internally, so the count is
/// deg(squarefree_part(f)). Precision doubles automatically until the a
/// posteriori error bounds are below tol/8; pairwise separation must then
/// exceed 2*tol or the call fails.
inline IsolatedRoots isolate_roots_exactly(const MPoly& f, double tol,
                                           unsigned long start_prec = 128) {
  if (f.is_zero()) throw std::invalid_argument("isolate_complex_roots: zero polynomial");
  if (tol <= 0) throw std::invalid_argument("isolate_complex_roots: tolerance must be positive");
  MPoly sf = squarefree_part(f);
  int var = -1;
  for (int v = 0; v < sf.arity(); ++v)
    if (sf.degree_in(v) > 0) var = v;
  IsolatedRoots out;
  if (var < 0) {
    out.precision_bits = start_prec;
    return out;  // constant: no roots
  }
  UPoly<NFElem> u = sf.to_upoly(var);
  const int n = u.degree();

  unsigned long prec = start_prec;
  const unsigned long prec_cap = 1u << 15;
  std::vector<CF> warm;
  while (true) {
    CF alpha(prec);
    bool need_alpha = f.context() && f.context()->degree() > 1;
    if (need_alpha) alpha = embed_generator(*f.context(), prec);
    std::vector<CF> coeffs;
    coeffs.reserve(n + 1);
    for (int i = 0; i <= n; ++i) coeffs.push_back(embed_elem(u.coeff(i), alpha, prec));

    auto res = detail::aberth(coeffs, prec, warm.empty() ? nullptr : &warm);
    if (res.converged) {
      // a posteriori bound: a root lies within n*|p/p'| of each approximation
      std::vector<CF> dc;
      for (int i = 1; i <= n; ++i)
        dc.push_back(coeffs[i] * CF(mpf_class(i, prec), mpf_class(0, prec)));
      mpf_class bound_cap(tol / 8, prec);
      bool accurate = true;
      for (const CF& z : res.roots) {
        CF dp = cf_eval(dc, z);
        if (dp.is_zero()) {
          accurate = false;
          break;
        }
        mpf_class b = (cf_eval(coeffs, z) / dp).abs() * n;
        if (b > bound_cap) {
          accurate = false;
          break;
        }
      }
      if (accurate) {
        mpf_class sep(2 * tol, prec);
        for (size_t i = 0; i < res.roots.size(); ++i)
          for (size_t j = i + 1; j < res.roots.size(); ++j)
            if ((res.roots[i] - res.roots[j]).abs() <= sep)
              throw std::runtime_error(
                  "isolate_complex_roots: roots closer than 2*tol; refine the tolerance");
        // deterministic order: ascending (re, im)
        std::sort(res.roots.begin(), res.roots.end(), [](const CF& a, const CF& b) {
          if (a.re != b.re) return a.re < b.re;
          return a.im < b.im;
        });
        out.roots = std::move(res.roots);
        out.precision_bits = prec;
        return out;
      }
    }
    warm = std::move(res.roots);
    if (prec >= prec_cap)
      throw std::runtime_error("isolate_complex_roots: precision cap reached without convergence");
    prec *= 2;
  }
}

inline std::vector<std::complex<double>> isolate_complex_roots(const MPoly& f, double tol = 1e-10) {
  auto iso = isolate_roots_exactly(f, tol);
  std::vector<std::complex<double>> out;
  out.reserve(iso.roots.size());
  for (const auto& z : iso.roots) out.push_back(z.to_complex());
  return out;
}

/// Single-linkage clustering with merge distance `tol`; returns cluster count.
inline int cluster_count(const std::vector<CF>& pts, double tol) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    mpf_class t(tol, pts[i].prec());
    for (int j = i + 1; j < n; ++j) {
      if ((pts[i] - pts[j]).abs() <= t) {
        int a = find(i), b = find(j);
        if (a != b) parent[a] = b;
      }
    }
  }
  int count = 0;
  for (int i = 0; i < n; ++i)
    if (find(i) == i) ++count;
  return count;
}

}  // namespace surfinv
