#pragma once

#include <cstdint>
#include <vector>

#include "padop/ext.hpp"
#include "padop/matrix.hpp"
#include "padop/scalar.hpp"

namespace padop {

// Polynomial over Q_p, coefficients ascending (coeffs[k] multiplies x^k).
// Trailing exact zeros are trimmed; the zero polynomial has no coefficients.
class PPolynomial {
 public:
  explicit PPolynomial(std::uint32_t p) : p_(p) {}
  PPolynomial(std::uint32_t p, std::vector<PadicScalar> coeffs);

  static PPolynomial from_integers(std::uint32_t p,
                                   const std::vector<long long>& c,
                                   int digits = kDefaultPrecision);

  std::uint32_t prime() const { return p_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<PadicScalar>& coeffs() const { return coeffs_; }
  const PadicScalar& coeff(int k) const { return coeffs_[k]; }

  PadicScalar eval(const PadicScalar& x) const;
  ExtScalar eval(const ExtScalar& x) const;
  PMatrix eval(const PMatrix& a) const;

  PPolynomial derivative() const;

  // max_k |s_k|, the sup norm of the coefficient list.
  ExactPower coeff_norm() const;

 private:
  std::uint32_t p_;
  std::vector<PadicScalar> coeffs_;
};

}  // namespace padop
