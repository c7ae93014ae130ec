#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "cohomdyn/poly.hpp"
#include "cohomdyn/rational.hpp"

namespace cohomdyn {

// Index sets for exterior algebra bases: 0-based positions, strictly
// ascending. Basis order is lexicographic on the index tuples.
using IndexSet = std::vector<int>;

// all p-subsets of {0..n-1} in lexicographic order
std::vector<IndexSet> combinations(int n, int p);

inline long binomial(int n, int p) {
  if (p < 0 || p > n) return 0;
  long r = 1;
  for (int i = 0; i < p; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// rank of a p-subset in the lexicographic order used by combinations()
int lex_rank(const IndexSet& s, int n);

// sign of the permutation sorting the concatenation of two disjoint
// ascending index sets: (-1)^{#inversions between a and b}
int merge_sign(const IndexSet& a, const IndexSet& b);

// merged ascending union of two disjoint ascending sets
IndexSet merge_sets(const IndexSet& a, const IndexSet& b);

template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool is_square() const { return rows == cols; }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat conjugate() const {
    Mat t = *this;
    for (auto& v : t.a) v = conj_scalar(v);
    return t;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
      throw PreconditionError("matrix add: dimension mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
      throw PreconditionError("matrix sub: dimension mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw PreconditionError("matrix mul: dimension mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const T& v = x(i, k);
        if (is_zero_scalar(v)) continue;
        for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
      }
    return r;
  }
  friend Mat operator*(const Mat& x, const T& s) {
    Mat r = x;
    for (auto& v : r.a) v = v * s;
    return r;
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (!((*this)(i, j) == (i == j ? T(1) : T(0)))) return false;
    return true;
  }
};

// Kronecker product with row-major index pairing:
// entry((i1,i2),(j1,j2)) = M(i1,j1) * N(i2,j2), pair index i1*N.rows + i2.
template <class T>
Mat<T> kronecker(const Mat<T>& m, const Mat<T>& n) {
  Mat<T> r(m.rows * n.rows, m.cols * n.cols);
  for (int i1 = 0; i1 < m.rows; ++i1)
    for (int j1 = 0; j1 < m.cols; ++j1) {
      const T& v = m(i1, j1);
      if (is_zero_scalar(v)) continue;
      for (int i2 = 0; i2 < n.rows; ++i2)
        for (int j2 = 0; j2 < n.cols; ++j2)
          r(i1 * n.rows + i2, j1 * n.cols + j2) = v * n(i2, j2);
    }
  return r;
}

// determinant over a field, exact Gaussian elimination
template <class T>
T det_field(Mat<T> m) {
  if (!m.is_square()) throw PreconditionError("det: non-square matrix");
  int n = m.rows;
  T det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!is_zero_scalar(m(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) return T(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det = det * m(col, col);
    T inv = T(1) / m(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (is_zero_scalar(m(i, col))) continue;
      T f = m(i, col) * inv;
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

// p x p minor on rows I, columns J
template <class T>
T minor_det(const Mat<T>& m, const IndexSet& I, const IndexSet& J) {
  Mat<T> s(static_cast<int>(I.size()), static_cast<int>(J.size()));
  for (size_t i = 0; i < I.size(); ++i)
    for (size_t j = 0; j < J.size(); ++j) s(i, j) = m(I[i], J[j]);
  return det_field(std::move(s));
}

// Exterior power: entry at (I, J) is the p x p minor of m on rows I,
// columns J, bases ordered lexicographically on index sets.
template <class T>
Mat<T> exterior_power(const Mat<T>& m, int p) {
  if (!m.is_square()) throw PreconditionError("exterior_power: non-square matrix");
  if (p < 0 || p > m.rows)
    throw PreconditionError("exterior_power: order out of range");
  auto sets = combinations(m.rows, p);
  int d = static_cast<int>(sets.size());
  Mat<T> r(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r(i, j) = p == 0 ? T(1) : minor_det(m, sets[i], sets[j]);
  return r;
}

// Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier scheme;
// only divisions by integers occur, so the result is exact over any
// field of characteristic zero.
template <class T>
Poly<T> char_poly(const Mat<T>& m) {
  if (!m.is_square()) throw PreconditionError("char_poly: non-square matrix");
  int n = m.rows;
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  Mat<T> acc = Mat<T>::identity(n);
  for (int k = 1; k <= n; ++k) {
    acc = m * acc;
    T tr(0);
    for (int i = 0; i < n; ++i) tr += acc(i, i);
    T ck = -(tr / T((long)k));
    c[n - k] = ck;
    for (int i = 0; i < n; ++i) acc(i, i) += ck;
  }
  return Poly<T>(std::move(c));
}

// reduced row echelon form in place; returns pivot columns
template <class T>
std::vector<int> rref(Mat<T>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (!is_zero_scalar(m(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    T inv = T(1) / m(r, col);
    for (int j = 0; j < m.cols; ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || is_zero_scalar(m(i, col))) continue;
      T f = m(i, col);
      for (int j = 0; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

// basis of the right null space (columns as vectors)
template <class T>
std::vector<std::vector<T>> null_space(Mat<T> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols, T(0));
    v[free] = T(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
int rank_field(Mat<T> m) {
  return static_cast<int>(rref(m).size());
}

// exact field inverse
template <class T>
Mat<T> inverse_field(const Mat<T>& m) {
  if (!m.is_square()) throw PreconditionError("inverse: non-square matrix");
  int n = m.rows;
  Mat<T> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) != n || piv[n - 1] != n - 1)
    throw PreconditionError("inverse: singular matrix");
  Mat<T> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

using RatMat = Mat<Rat>;
using GaussMat = Mat<GaussRat>;

struct Inertia {
  int n_plus = 0, n_minus = 0, n_zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

// exact inertia of a symmetric rational matrix by congruence
// diagonalization (no floating point anywhere)
Inertia signature(const RatMat& s);

// exact inertia of a Hermitian Gaussian-rational matrix
Inertia hermitian_inertia(const GaussMat& h);

inline bool is_positive_definite(const GaussMat& h) {
  Inertia in = hermitian_inertia(h);
  return in.n_minus == 0 && in.n_zero == 0;
}
inline bool is_positive_semidefinite(const GaussMat& h) {
  return hermitian_inertia(h).n_minus == 0;
}

GaussMat rat_to_gauss(const RatMat& m);

}  // namespace cohomdyn
