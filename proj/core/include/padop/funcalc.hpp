#pragma once

#include <vector>

#include "padop/matrix.hpp"
#include "padop/poly.hpp"
#include "padop/power.hpp"

namespace padop {

// Series in the binomial basis: x maps to sum of a_k * binom(x, k) over the
// unit ball.  Continuous functions on Z_p are exactly the series with
// |a_k| -> 0, and the sup norm equals max_k |a_k|.
class MahlerSeries {
 public:
  MahlerSeries(std::uint32_t p, std::vector<PadicScalar> coeffs);

  // Finite differences of a sample table at x = 0..K; reconstruction at the
  // sample points is exact.
  static MahlerSeries from_samples(std::uint32_t p,
                                   const std::vector<PadicScalar>& values);

  std::uint32_t prime() const { return p_; }
  int order() const { return static_cast<int>(a_.size()) - 1; }
  const std::vector<PadicScalar>& coeffs() const { return a_; }

  ExactPower sup_norm() const;              // max_k |a_k|
  ExactPower tail_bound(int k_prime) const;  // max over stored k > k_prime

  PadicScalar eval(const PadicScalar& x) const;
  PadicScalar eval_truncated(const PadicScalar& x, int k_prime) const;

 private:
  std::uint32_t p_;
  std::vector<PadicScalar> a_;
};

// Horner evaluation of S at A.
PMatrix poly_eval(const PPolynomial& s, const PMatrix& a);

// Exact sup of |S(t)| over the ball |t| <= p^r, via the Mahler basis of the
// rescaled polynomial S(p^{-r} s) on |s| <= 1.
ExactPower sup_norm_on_ball(const PPolynomial& s, std::int64_t radius_exponent);

// For unitriangular C, the certified bound max_h |C-I|^h (h up to the
// nilpotency index, capped by k) on |C^k|; the directly computed power is
// checked against it.
ExactPower binom_expand_bound(const PMatrix& c, std::int64_t k);

// f(A) = Cinv diag(f(lambda_i)) C through the symmetric eigendecomposition.
// Requires |A| <= 1 with the whole spectrum in the base field.
PMatrix funcalc_spectral(const MahlerSeries& f, const PMatrix& a);
PMatrix funcalc_spectral(const PPolynomial& s, const PMatrix& a);

// The literal product S(C) S(T) S(E) from the pivotless triangular
// decomposition of A.  Not equal to S(A) in general; callers compare it to
// poly_eval and report the discrepancy.
PMatrix funcalc_triangular(const PPolynomial& s, const PMatrix& a);

// Piecewise shell scaling: identity on the unit ball, t -> p^{2k-1} t on the
// shell |t| = p^k.  Always lands in the unit ball; idempotent.
PadicScalar clamp(const PadicScalar& t);

struct ClampFunction {
  std::uint32_t p = 0;
  PadicScalar operator()(const PadicScalar& t) const { return clamp(t); }
};

// B with B^n = A through eigenvalue roots, certified to be a polynomial in A.
PMatrix operator_root(const PMatrix& a, int n);

}  // namespace padop
