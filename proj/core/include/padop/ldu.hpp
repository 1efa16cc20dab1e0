#pragma once

#include <vector>

#include "padop/matrix.hpp"

namespace padop {

// P_r A P_c = C T E with C unit lower triangular, T diagonal, E unit upper
// triangular.  row_perm[i] (col_perm[j]) is the source index in A of the
// permuted row i (column j), so (P_r A P_c)[i][j] = A[row_perm[i]][col_perm[j]].
struct TriDecomposition {
  std::vector<int> row_perm;
  std::vector<int> col_perm;
  PMatrix C, T, E;
  int rank = 0;
};

// Full max-norm pivoting, ties broken by lowest row then lowest column index.
// Guarantees |C - I| <= 1, |E - I| <= 1 and |T_ii| non-increasing.  Rank
// deficiency leaves trailing exact zeros on T's diagonal.  With pivot = false
// the diagonal entry in order is forced as the pivot and no permutation
// happens.
TriDecomposition ldu_decompose(const PMatrix& a, bool pivot = true);

// P_r A P_c, for checking the reconstruction C*T*E against it.
PMatrix permuted_input(const TriDecomposition& d, const PMatrix& a);

namespace detail {

// Max-norm pivot among rows [k, n) of column j: returns the row index, or -1
// when every candidate is exact zero.  Raises PrecisionExhausted when an
// uncertified entry could exceed the best certified candidate.
template <typename S>
int pick_pivot_row(const Mat<S>& a, int k, int j) {
  int best = -1;
  ExactPower best_norm = ExactPower::zero();
  ExactPower loose = ExactPower::zero();
  for (int i = k; i < a.rows(); ++i) {
    const S& e = a.at(i, j);
    if (e.certified_nonzero()) {
      ExactPower ni = e.norm();
      if (best < 0 || ni > best_norm) {
        best = i;
        best_norm = ni;
      }
    } else if (!e.is_exact_zero()) {
      loose = ExactPower::max(loose, e.norm_upper_bound());
    }
  }
  if (best < 0) {
    if (!loose.is_zero())
      fail(errc::precision_exhausted, "no pivot certified at precision");
    return -1;
  }
  if (!loose.is_zero() && best_norm < loose)
    fail(errc::precision_exhausted, "uncertified entry may dominate pivot");
  return best;
}

}  // namespace detail

// Gaussian elimination solve of A X = B for square certified-invertible A.
template <typename S>
Mat<S> solve_linear(Mat<S> a, Mat<S> b) {
  if (!a.is_square()) fail(errc::dimension_mismatch, "A must be square");
  if (a.rows() != b.rows())
    fail(errc::dimension_mismatch, "row counts of A and B differ");
  int n = a.rows();
  int m = b.cols();
  for (int k = 0; k < n; ++k) {
    int piv = detail::pick_pivot_row(a, k, k);
    if (piv < 0) fail(errc::singular, "column collapses to exact zero");
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
      for (int j = 0; j < m; ++j) std::swap(b.at(k, j), b.at(piv, j));
    }
    for (int i = k + 1; i < n; ++i) {
      S f = a.at(i, k) / a.at(k, k);
      if (f.is_zero()) continue;
      for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
      for (int j = 0; j < m; ++j) b.at(i, j) -= f * b.at(k, j);
      a.at(i, k) = S::zero(a.prime());
    }
  }
  Mat<S> x(a.prime(), n, m);
  for (int j = 0; j < m; ++j) {
    for (int i = n - 1; i >= 0; --i) {
      S acc = b.at(i, j);
      for (int t = i + 1; t < n; ++t) acc -= a.at(i, t) * x.at(t, j);
      x.at(i, j) = acc / a.at(i, i);
    }
  }
  return x;
}

template <typename S>
Mat<S> inverse(const Mat<S>& a) {
  return solve_linear(a, Mat<S>::identity(a.prime(), a.rows()));
}

}  // namespace padop
