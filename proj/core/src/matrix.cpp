#include "cohomdyn/matrix.hpp"

#include <type_traits>

namespace cohomdyn {

std::vector<IndexSet> combinations(int n, int p) {
  std::vector<IndexSet> out;
  if (p < 0 || p > n) return out;
  IndexSet cur(p);
  for (int i = 0; i < p; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int i = p - 1;
    while (i >= 0 && cur[i] == n - p + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int lex_rank(const IndexSet& s, int n) {
  int p = static_cast<int>(s.size());
  long rank = 0;
  int prev = -1;
  for (int i = 0; i < p; ++i) {
    for (int v = prev + 1; v < s[i]; ++v) rank += binomial(n - 1 - v, p - 1 - i);
    prev = s[i];
  }
  return static_cast<int>(rank);
}

int merge_sign(const IndexSet& a, const IndexSet& b) {
  long inversions = 0;
  for (int x : b)
    for (int y : a)
      if (y > x) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

IndexSet merge_sets(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

namespace {

int diag_sign(const Rat& d) { return sgn(d); }
int diag_sign(const GaussRat& d) {
  if (d.im != 0) throw CertificationError("Hermitian diagonal not real");
  return sgn(d.re);
}

// Congruence diagonalization E S E^H with symmetric pivoting. Works for
// real symmetric (T = Rat) and Hermitian (T = GaussRat) input alike.
template <class T>
Inertia congruence_inertia(Mat<T> s) {
  int n = s.rows;
  Inertia in;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && !is_zero_scalar(s(i, i))) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // all active diagonals vanish; repair with a nonzero off-diagonal
      int oi = -1, oj = -1;
      for (int i = 0; i < n && oi < 0; ++i) {
        if (done[i]) continue;
        for (int j = i + 1; j < n; ++j)
          if (!done[j] && !is_zero_scalar(s(i, j))) {
            oi = i;
            oj = j;
            break;
          }
      }
      if (oi < 0) {
        for (int i = 0; i < n; ++i)
          if (!done[i]) ++in.n_zero;
        return in;
      }
      // row_oi += t row_oj / col_oi += conj(t) col_oj puts
      // 2 Re(conj(t) S(oi,oj)) on the diagonal
      T t(1);
      T twice_re = s(oi, oj) + conj_scalar(s(oi, oj));
      if (is_zero_scalar(twice_re)) {
        if constexpr (std::is_same_v<T, GaussRat>)
          t = gauss_i();
        else
          throw CertificationError("symmetric zero-diagonal repair failed");
      }
      for (int c = 0; c < n; ++c) s(oi, c) += t * s(oj, c);
      for (int r = 0; r < n; ++r) s(r, oi) += conj_scalar(t) * s(r, oj);
      piv = oi;
    }
    T d = s(piv, piv);
    done[piv] = true;
    int sg = diag_sign(d);
    if (sg > 0)
      ++in.n_plus;
    else
      ++in.n_minus;
    for (int i = 0; i < n; ++i) {
      if (i == piv || is_zero_scalar(s(i, piv))) continue;
      T f = s(i, piv) / d;
      for (int c = 0; c < n; ++c) s(i, c) -= f * s(piv, c);
      T fc = conj_scalar(f);
      for (int r = 0; r < n; ++r) s(r, i) -= fc * s(r, piv);
    }
  }
  return in;
}

}  // namespace

Inertia signature(const RatMat& s) {
  if (!s.is_square()) throw PreconditionError("signature: non-square matrix");
  for (int i = 0; i < s.rows; ++i)
    for (int j = i + 1; j < s.cols; ++j)
      if (s(i, j) != s(j, i))
        throw PreconditionError("signature: matrix not symmetric");
  return congruence_inertia(s);
}

Inertia hermitian_inertia(const GaussMat& h) {
  if (!h.is_square()) throw PreconditionError("inertia: non-square matrix");
  for (int i = 0; i < h.rows; ++i)
    for (int j = i; j < h.cols; ++j)
      if (!(h(i, j) == h(j, i).conj()))
        throw PreconditionError("inertia: matrix not Hermitian");
  return congruence_inertia(h);
}

GaussMat rat_to_gauss(const RatMat& m) {
  GaussMat g(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) g(i, j) = GaussRat(m(i, j));
  return g;
}

}  // namespace cohomdyn
