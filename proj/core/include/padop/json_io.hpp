#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padop/derivation.hpp"
#include "padop/ext.hpp"
#include "padop/matrix.hpp"
#include "padop/poly.hpp"
#include "padop/power.hpp"
#include "padop/scalar.hpp"

namespace padop {

// Wire formats (little-endian base-p digit arrays, leading digit nonzero):
//   scalar   {"digits":[3,0,6],"p":7,"v":-1}
//   zero     {"p":7,"zero":true}            exact
//            {"floor":12,"p":7,"zero":true} zero at precision p^-12
//   ext      {"a":{...},"b":{...},"d":"u","p":7}     d in {1,u,p,pu}
//   matrix   {"entries":[[scalar,...],...],"n":3,"p":7}
//   poly     {"coeffs":[scalar,...],"p":7}           ascending powers
//   table    {"domain":"Zp","samples":[scalar,...]}  values at 0..K
//   map      {"matrix":[[scalar x n^2] x n^2],"n":2,"vec_order":"row-major"}
//   span     {"generators":[matrix,...]}
// Parsing rejects unknown keys and non-canonical digit arrays; every error
// carries the JSON path of the offending field.  The `at` argument names the
// root of the given text in those paths.
PadicScalar parse_scalar_json(const std::string& text,
                              const std::string& at = "$");
ExtScalar parse_ext_json(const std::string& text, const std::string& at = "$");
PMatrix parse_matrix_json(const std::string& text, const std::string& at = "$");
PPolynomial parse_poly_json(const std::string& text,
                            const std::string& at = "$");
std::vector<PadicScalar> parse_samples_json(const std::string& text,
                                            const std::string& at = "$");
DerivationMap parse_derivation_json(const std::string& text,
                                    const std::string& at = "$");
std::vector<PMatrix> parse_generators_json(const std::string& text,
                                           const std::string& at = "$");

// Serialization is canonical: compact, keys sorted, digit windows kept
// verbatim, so serialize(parse(serialize(x))) is byte-identical.
std::string scalar_to_json(const PadicScalar& x);
std::string ext_to_json(const ExtScalar& x);
std::string matrix_to_json(const PMatrix& a);
std::string poly_to_json(const PPolynomial& s);
std::string samples_to_json(const std::vector<PadicScalar>& v);
std::string derivation_to_json(const DerivationMap& d);

// Exact p-power exponent for report certification blocks:
//   {"zero":true} | {"exp":-3} | {"exp2":-7} (twice the exponent when the
// power is half-integral, as happens for ramified extension norms).
std::string power_to_json(const ExactPower& w);

}  // namespace padop
