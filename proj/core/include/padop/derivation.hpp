#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "padop/ext.hpp"
#include "padop/matrix.hpp"
#include "padop/power.hpp"
#include "padop/span.hpp"

namespace padop {

// Total linear map on n x n matrices over Q_p, stored as the n^2 x n^2
// matrix acting on row-major vectorizations: vec(D(A)) = m * vec(A).
// domain records the span on which the map is meant to satisfy the Leibniz
// rule; it stays null for maps defined everywhere (ad B, the zero map).
struct DerivationMap {
  std::uint32_t p = 0;
  int n = 0;
  PMatrix m;
  std::shared_ptr<const AlgebraSpan> domain;

  PMatrix apply(const PMatrix& a) const;
};

DerivationMap zero_derivation(std::uint32_t p, int n);

// ad B = [B, .] on the full matrix algebra.
DerivationMap ad_map(const PMatrix& b);

// max over basis pairs (A, B) of ||D(AB) - D(A)B - A D(B)||.  Zero certifies
// the Leibniz rule on the span at working precision.
ExactPower leibniz_defect(const DerivationMap& d, const AlgebraSpan& alg);

enum class Codomain { kSelf, kAmbient };

// Basis of the space of linear maps satisfying the Leibniz rule on the span,
// valued in the span itself (kSelf) or in the full matrix algebra (kAmbient).
// Each returned map is completed by zero on a complement of the span.
std::vector<DerivationMap> derivation_space(const AlgebraSpan& alg,
                                            Codomain codomain);

struct InnerSolveResult {
  bool inner = false;
  PMatrix witness;            // commuting part removed: trace zero per block
  ExactPower residual;        // certified size of [B, A_i] - D(A_i) on the basis
  ExactPower residual_bound;  // same data, counting unresolved zero floors
  ExactPower mismatch;        // inconsistency magnitude when not inner
  int derivation_space_dimension = 0;  // ambient-valued maps, for the report
};

// Solves [B, A_i] = D(A_i) over the span basis for B in the span.
InnerSolveResult solve_inner(const DerivationMap& d, const AlgebraSpan& alg);

// true iff D kills every basis element of center(alg).
bool annihilates_center(const DerivationMap& d, const AlgebraSpan& alg);

// For symmetric a with split spectrum: D's values on the span of {I, a},
// projected back onto that span by diagonal extraction in the eigenbasis,
// are zero.
bool projected_derivation_vanishes(const DerivationMap& d, const PMatrix& a);

// Coefficient-wise extension of a map to matrices over Q_p(sqrt(d)).
struct ExtDerivationMap {
  QuadClass cls = QuadClass::kOne;
  std::uint32_t p = 0;
  int n = 0;
  EMatrix m;

  EMatrix apply(const EMatrix& a) const;
};

ExtDerivationMap extend_derivation(const DerivationMap& d, QuadClass cls);

// Precondition: ad b preserves the span ([b, A] in the span for every basis
// A); violations raise DomainError rather than returning false.  Returns
// whether ad b also maps the commutant of the span into itself, checked by
// membership residuals on a commutant basis.
bool commutant_derivation_check(const PMatrix& b, const AlgebraSpan& alg);

}  // namespace padop
