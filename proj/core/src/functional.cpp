#include "padop/functional.hpp"

#include "padop/errors.hpp"

namespace padop {

namespace {

void require_operand(const SymmetricFunctional& rho, const PMatrix& a) {
  if (a.prime() != rho.p)
    fail(errc::prime_mismatch, "functional and operand use different primes");
  if (a.rows() != rho.n || a.cols() != rho.n)
    fail(errc::dimension_mismatch, "functional and operand sizes do not match");
}

}  // namespace

SymmetricFunctional make_functional(const PMatrix& r) {
  if (r.rows() != r.cols())
    fail(errc::dimension_mismatch, "a functional needs a square coefficient matrix");
  SymmetricFunctional rho;
  rho.p = r.prime();
  rho.n = r.rows();
  rho.r = r;
  rho.symmetric = PMatrix::dist(r, r.transpose()).is_zero();
  rho.unital = (r.trace() - PadicScalar::one(r.prime(), kMaxPrecision)).is_zero();
  return rho;
}

PadicScalar functional_eval(const SymmetricFunctional& rho, const PMatrix& a) {
  require_operand(rho, a);
  PadicScalar acc = PadicScalar::zero(rho.p);
  for (int j = 0; j < rho.n; ++j)
    for (int k = 0; k < rho.n; ++k) {
      const PadicScalar& c = rho.r.at(j, k);
      if (!c.is_exact_zero()) acc += c * a.at(j, k);
    }
  return acc;
}

bool is_state(const SymmetricFunctional& rho) {
  return rho.symmetric && rho.unital;
}

bool is_definite_on(const SymmetricFunctional& rho, const PMatrix& a,
                    int k_max) {
  require_operand(rho, a);
  if (k_max < 1) fail(errc::domain_error, "the power bound must be positive");
  const PadicScalar r1 = functional_eval(rho, a);
  PMatrix pw = a;
  PadicScalar acc = r1;
  for (int k = 2; k <= k_max; ++k) {
    pw = pw * a;
    acc = acc * r1;
    if (!(functional_eval(rho, pw) - acc).is_zero()) return false;
  }
  return true;
}

bool is_multiplicative_on(const SymmetricFunctional& rho,
                          const AlgebraSpan& alg) {
  if (alg.p != rho.p)
    fail(errc::prime_mismatch, "functional and span use different primes");
  if (alg.n != rho.n)
    fail(errc::dimension_mismatch, "functional and span sizes do not match");
  for (const PMatrix& a : alg.basis) {
    const PadicScalar ra = functional_eval(rho, a);
    for (const PMatrix& b : alg.basis) {
      const PadicScalar rb = functional_eval(rho, b);
      if (!(functional_eval(rho, a * b) - ra * rb).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace padop
