#pragma once

#include "padop/matrix.hpp"
#include "padop/poly.hpp"

namespace padop {

// Characteristic polynomial det(xI - A), monic, by the division-free
// Berkowitz recursion.
PPolynomial charpoly(const PMatrix& a);

}  // namespace padop
