#include "padop/ldu.hpp"

#include <tuple>
#include <utility>

namespace padop {

namespace {

// Max-norm pivot in the trailing submatrix W[k..n)[k..n), scanning rows then
// columns so ties land on the lowest row, then lowest column.  Returns
// {-1, -1} when every candidate is exact zero.
std::pair<int, int> pick_pivot_full(const PMatrix& w, int k) {
  int bi = -1, bj = -1;
  ExactPower best = ExactPower::zero();
  ExactPower loose = ExactPower::zero();
  for (int i = k; i < w.rows(); ++i)
    for (int j = k; j < w.cols(); ++j) {
      const PadicScalar& e = w.at(i, j);
      if (e.certified_nonzero()) {
        ExactPower ni = e.norm();
        if (bi < 0 || ni > best) {
          bi = i;
          bj = j;
          best = ni;
        }
      } else if (!e.is_exact_zero()) {
        loose = ExactPower::max(loose, e.norm_upper_bound());
      }
    }
  if (bi < 0) {
    if (!loose.is_zero())
      fail(errc::precision_exhausted, "no pivot certified at precision");
    return {-1, -1};
  }
  if (!loose.is_zero() && best < loose)
    fail(errc::precision_exhausted, "uncertified entry may dominate pivot");
  return {bi, bj};
}

}  // namespace

TriDecomposition ldu_decompose(const PMatrix& a, bool pivot) {
  if (!a.is_square())
    fail(errc::dimension_mismatch, "triangular decomposition needs a square");
  const std::uint32_t p = a.prime();
  const int n = a.rows();

  TriDecomposition d;
  d.row_perm.resize(n);
  d.col_perm.resize(n);
  for (int i = 0; i < n; ++i) d.row_perm[i] = d.col_perm[i] = i;
  d.C = PMatrix::identity(p, n);
  d.E = PMatrix::identity(p, n);
  d.T = PMatrix(p, n, n);
  d.rank = n;

  PMatrix w = a;
  for (int k = 0; k < n; ++k) {
    int bi, bj;
    if (pivot) {
      std::tie(bi, bj) = pick_pivot_full(w, k);
      if (bi < 0) {
        d.rank = k;  // trailing block is exactly zero
        break;
      }
    } else {
      bi = bj = k;
      const PadicScalar& e = w.at(k, k);
      if (e.is_exact_zero()) {
        d.rank = k;
        bool trailing_zero = true;
        for (int i = k; i < n && trailing_zero; ++i)
          for (int j = k; j < n; ++j)
            if (!w.at(i, j).is_exact_zero()) {
              trailing_zero = false;
              break;
            }
        if (trailing_zero) break;
        fail(errc::singular, "exact zero pivot without permutations");
      }
      if (!e.certified_nonzero())
        fail(errc::precision_exhausted, "diagonal pivot not certified");
    }
    if (bi != k) {
      for (int j = k; j < n; ++j) std::swap(w.at(k, j), w.at(bi, j));
      for (int j = 0; j < k; ++j) std::swap(d.C.at(k, j), d.C.at(bi, j));
      std::swap(d.row_perm[k], d.row_perm[bi]);
    }
    if (bj != k) {
      for (int i = k; i < n; ++i) std::swap(w.at(i, k), w.at(i, bj));
      for (int i = 0; i < k; ++i) std::swap(d.E.at(i, k), d.E.at(i, bj));
      std::swap(d.col_perm[k], d.col_perm[bj]);
    }

    PadicScalar t = w.at(k, k);
    d.T.at(k, k) = t;
    for (int i = k + 1; i < n; ++i) d.C.at(i, k) = w.at(i, k) / t;
    for (int j = k + 1; j < n; ++j) d.E.at(k, j) = w.at(k, j) / t;
    // Schur complement: W_ij -= (W_ik / t) W_kj keeps every entry bounded by
    // the pivot norm, which is what makes |T_ii| non-increasing.
    for (int i = k + 1; i < n; ++i) {
      const PadicScalar& f = d.C.at(i, k);
      if (f.is_zero()) continue;
      for (int j = k + 1; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
    }
  }
  return d;
}

PMatrix permuted_input(const TriDecomposition& d, const PMatrix& a) {
  const int n = a.rows();
  PMatrix r(a.prime(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.at(i, j) = a.at(d.row_perm[i], d.col_perm[j]);
  return r;
}

}  // namespace padop
