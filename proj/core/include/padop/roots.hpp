#pragma once

#include <cstdint>
#include <optional>

#include "padop/ext.hpp"
#include "padop/scalar.hpp"

namespace padop {

// Square root of a residue mod an odd prime (Tonelli-Shanks); the input must
// be a quadratic residue.
std::uint32_t residue_sqrt(std::uint32_t a, std::uint32_t p);

bool is_quadratic_residue(std::uint32_t a, std::uint32_t p);

// Square root of a unit whose leading digit is a quadratic residue, lifted by
// Newton iteration.  Canonical choice: leading digit in [1, (p-1)/2].
PadicScalar hensel_sqrt_unit(const PadicScalar& u);

// Square root of any x in Q_p (odd p), landing in the minimal quadratic
// class: kOne when x is a square, else exactly one of kU / kP / kPU
// depending on the valuation parity and the residue class of the unit part.
// Canonical choice: the nonzero component's leading digit lies in
// [1, (p-1)/2].
ExtScalar padic_sqrt(const PadicScalar& x);

// n-th root inside Q_p, gcd(n, p) = 1.  The valuation must be divisible by n
// and the leading digit must have an n-th root mod p; canonical choice is the
// least residue digit among the residue roots.
PadicScalar padic_nth_root(const PadicScalar& x, int n);

// Square root within the extension Q_p(sqrt(d)) itself, when it exists there.
std::optional<ExtScalar> ext_sqrt(const ExtScalar& x);

}  // namespace padop
