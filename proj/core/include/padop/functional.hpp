#pragma once

#include <cstdint>

#include "padop/matrix.hpp"
#include "padop/span.hpp"

namespace padop {

// Linear functional rho(A) = sum_{jk} R_{jk} A_{jk}, with flags verified at
// construction: symmetric means rho(A^t) = rho(A) (i.e. R = R^t), unital
// means rho(I) = tr(R) = 1.
struct SymmetricFunctional {
  std::uint32_t p = 0;
  int n = 0;
  PMatrix r;
  bool symmetric = false;
  bool unital = false;
};

SymmetricFunctional make_functional(const PMatrix& r);

PadicScalar functional_eval(const SymmetricFunctional& rho, const PMatrix& a);

// A state is a symmetric unital functional.
bool is_state(const SymmetricFunctional& rho);

// rho(A^k) = rho(A)^k for k = 1..k_max.
bool is_definite_on(const SymmetricFunctional& rho, const PMatrix& a,
                    int k_max = 8);

// rho(AB) = rho(A) rho(B) on every basis pair of the span.
bool is_multiplicative_on(const SymmetricFunctional& rho,
                          const AlgebraSpan& alg);

}  // namespace padop
