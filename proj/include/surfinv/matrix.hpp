#pragma once

#include <stdexcept>
#include <vector>

#include "surfinv/mpoly.hpp"
#include "surfinv/numberfield.hpp"

namespace surfinv {

/// Rectangular matrix over Q(alpha).
class ExactMatrix {
 public:
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("ExactMatrix: negative shape");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  NFElem& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const NFElem& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

 private:
  int rows_, cols_;
  std::vector<NFElem> a_;
};

namespace detail {

/// Scales a row so every rational component is integral, then strips the
/// integer content. Pure row scaling: kernel and row space are unchanged.
inline void normalize_row(std::vector<NFElem>& row) {
  mpz_class den = 1, num = 0;
  for (const auto& e : row) {
    den = lcm_z(den, e.denominator_lcm());
    num = gcd_z(num, e.numerator_gcd());
  }
  if (num == 0) return;
  Rational s{mpq_class(den, num)};
  if (s.is_one()) return;
  NFElem f{s};
  for (auto& e : row) e *= f;
}

}  // namespace detail

/// Fraction-free (Bareiss-style) forward elimination. Column pivot is the
/// first row with a nonzero entry in the current column; rows are scaled
/// integral before elimination. Returns the echelon rows, pivot column per
/// pivot row, and the rank.
struct Echelon {
  std::vector<std::vector<NFElem>> rows;
  std::vector<int> pivot_cols;
  int rank = 0;
};

inline Echelon echelonize(const ExactMatrix& m) {
  Echelon ech;
  std::vector<std::vector<NFElem>> a(m.rows(), std::vector<NFElem>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  for (auto& row : a) detail::normalize_row(row);

  int r = 0;  // next pivot row slot
  NFElem prev_pivot{1L};
  for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!a[i][col].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    NFElem p = a[r][col];
    for (int i = r + 1; i < m.rows(); ++i) {
      NFElem f = a[i][col];
      if (f.is_zero()) {
        // keep the minor pattern so later divisions stay exact
        for (int j = col + 1; j < m.cols(); ++j)
          if (!a[i][j].is_zero()) a[i][j] = a[i][j] * p / prev_pivot;
      } else {
        for (int j = col + 1; j < m.cols(); ++j)
          a[i][j] = (a[i][j] * p - f * a[r][j]) / prev_pivot;
        a[i][col] = NFElem();
      }
    }
    prev_pivot = p;
    ech.pivot_cols.push_back(col);
    ++r;
  }
  ech.rank = r;
  a.resize(r);
  ech.rows = std::move(a);
  return ech;
}

inline int rank(const ExactMatrix& m) { return echelonize(m).rank; }

/// Exact basis of the null space {v : Mv = 0}, in reduced echelon
/// parametrization: one vector per free column, with value 1 there and 0 at
/// the other free columns. Deterministic.
inline std::vector<std::vector<NFElem>> kernel_basis(const ExactMatrix& m) {
  Echelon ech = echelonize(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<NFElem>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<NFElem> v(m.cols());
    v[f] = NFElem(1L);
    for (int i = ech.rank - 1; i >= 0; --i) {
      int pc = ech.pivot_cols[i];
      NFElem s;
      for (int j = pc + 1; j < m.cols(); ++j) {
        if (v[j].is_zero() || ech.rows[i][j].is_zero()) continue;
        s += ech.rows[i][j] * v[j];
      }
      v[pc] = -s / ech.rows[i][pc];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline NFElem exact_divide(const NFElem& a, const NFElem& b) { return a / b; }
inline MPoly exact_divide(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return a;
  return MPoly::exact_div(a, b);
}

/// Fraction-free determinant over any commutative integral domain supporting
/// *, -, exact division and zero tests (NFElem, MPoly, ...).
template <class R>
R bareiss_determinant(std::vector<std::vector<R>> a, const R& one) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return one;
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("determinant: matrix not square");
  R prev = one;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return a[k][k];  // structurally zero determinant
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        R num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = exact_divide(num, prev);
      }
      a[i][k] = R();
    }
    prev = a[k][k];
  }
  R det = a[n - 1][n - 1];
  return sign < 0 ? R() - det : det;
}

}  // namespace surfinv
