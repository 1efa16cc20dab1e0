#include "padop/charpoly.hpp"

#include <algorithm>

namespace padop {

// Berkowitz: grow the leading principal submatrix one row at a time; the new
// characteristic polynomial is a lower-triangular Toeplitz transform of the
// previous one with column [1, -a_rr, -R Cc, -R M Cc, -R M^2 Cc, ...].
PPolynomial charpoly(const PMatrix& a) {
  if (!a.is_square())
    fail(errc::dimension_mismatch, "characteristic polynomial needs a square");
  const std::uint32_t p = a.prime();
  const int n = a.rows();
  const PadicScalar zero = PadicScalar::zero(p);

  // leading-first coefficient vector of det(xI - M_r)
  std::vector<PadicScalar> poly = {PadicScalar::one(p, kMaxPrecision)};
  if (n >= 1) poly.push_back(-a.at(0, 0));

  for (int r = 2; r <= n; ++r) {
    // M = leading (r-1)x(r-1) block, R = row r's left part, Cc = column r's
    // top part as vectors in the ambient matrix a
    std::vector<PadicScalar> q(static_cast<std::size_t>(r) + 1, zero);
    q[0] = PadicScalar::one(p, kMaxPrecision);
    q[1] = -a.at(r - 1, r - 1);
    // w starts as Cc and is repeatedly hit by M
    std::vector<PadicScalar> w(static_cast<std::size_t>(r) - 1, zero);
    for (int i = 0; i < r - 1; ++i) w[i] = a.at(i, r - 1);
    for (int k = 2; k <= r; ++k) {
      PadicScalar dot = zero;
      for (int i = 0; i < r - 1; ++i) dot += a.at(r - 1, i) * w[i];
      q[k] = -dot;
      if (k == r) break;
      std::vector<PadicScalar> mw(static_cast<std::size_t>(r) - 1, zero);
      for (int i = 0; i < r - 1; ++i) {
        PadicScalar acc = zero;
        for (int j = 0; j < r - 1; ++j) acc += a.at(i, j) * w[j];
        mw[i] = acc;
      }
      w = std::move(mw);
    }

    std::vector<PadicScalar> next(static_cast<std::size_t>(r) + 1, zero);
    for (std::size_t i = 0; i < next.size(); ++i) {
      PadicScalar acc = zero;
      for (std::size_t j = 0; j < poly.size(); ++j) {
        if (i < j || i - j >= q.size()) continue;
        acc += q[i - j] * poly[j];
      }
      next[i] = acc;
    }
    poly = std::move(next);
  }

  std::reverse(poly.begin(), poly.end());  // ascending for PPolynomial
  return PPolynomial(p, std::move(poly));
}

}  // namespace padop
