#include "padop/poly.hpp"

namespace padop {

PPolynomial::PPolynomial(std::uint32_t p, std::vector<PadicScalar> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
  for (const PadicScalar& c : coeffs_)
    if (c.prime() != p_) fail(errc::prime_mismatch, "coefficient prime");
  while (!coeffs_.empty() && coeffs_.back().is_exact_zero()) coeffs_.pop_back();
}

PPolynomial PPolynomial::from_integers(std::uint32_t p,
                                       const std::vector<long long>& c,
                                       int digits) {
  std::vector<PadicScalar> v;
  v.reserve(c.size());
  for (long long x : c) v.push_back(PadicScalar::from_integer(p, x, digits));
  return PPolynomial(p, std::move(v));
}

PadicScalar PPolynomial::eval(const PadicScalar& x) const {
  PadicScalar acc = PadicScalar::zero(p_);
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

ExtScalar PPolynomial::eval(const ExtScalar& x) const {
  ExtScalar acc = ExtScalar::zero(p_);
  for (std::size_t k = coeffs_.size(); k-- > 0;)
    acc = acc * x + ExtScalar::embed(coeffs_[k]);
  return acc;
}

PMatrix PPolynomial::eval(const PMatrix& a) const {
  if (!a.is_square()) fail(errc::dimension_mismatch, "needs a square matrix");
  PMatrix id = PMatrix::identity(p_, a.rows());
  PMatrix acc(p_, a.rows(), a.rows());
  for (std::size_t k = coeffs_.size(); k-- > 0;)
    acc = acc * a + id.scaled(coeffs_[k]);
  return acc;
}

PPolynomial PPolynomial::derivative() const {
  std::vector<PadicScalar> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d.push_back(coeffs_[k] *
                PadicScalar::from_integer(p_, static_cast<long long>(k),
                                          kMaxPrecision));
  return PPolynomial(p_, std::move(d));
}

ExactPower PPolynomial::coeff_norm() const {
  ExactPower m = ExactPower::zero();
  for (const PadicScalar& c : coeffs_) m = ExactPower::max(m, c.norm());
  return m;
}

}  // namespace padop
