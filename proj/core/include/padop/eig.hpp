#pragma once

#include <vector>

#include "padop/charpoly.hpp"
#include "padop/ext.hpp"
#include "padop/matrix.hpp"
#include "padop/poly.hpp"

namespace padop {

struct CharRoot {
  ExtScalar value;
  int multiplicity = 1;
};

// Deterministic total order for reporting spectra: larger norm first, then
// quadratic class, then digit-lexicographic components.
bool canonical_less(const ExtScalar& x, const ExtScalar& y);

// All roots of det(xI - A) in Q_p or one of its quadratic extensions, in
// canonical order, each certified by charpoly(root) vanishing at precision.
// Roots are found per Newton-polygon segment by Hensel lifting from simple
// residue roots (F_p, F_{p^2}, or ramified starts t*sqrt(d)*p^j); only the
// exact eigenvalue 0 may carry multiplicity > 1.
std::vector<CharRoot> char_roots(const PMatrix& a);

// Rows of C are eigenvectors: C A = diag(eigenvalues) C, so
// A = Cinv * diag(eigenvalues) * C.  When isometric, Cinv = C^t exactly.
struct EigDecomposition {
  std::vector<ExtScalar> eigenvalues;  // canonical order, matching C's rows
  Mat<ExtScalar> C;
  Mat<ExtScalar> Cinv;
  bool isometric = false;
};

// Symmetric eigendecomposition with distinct eigenvalues.  Each eigenvector
// row is scaled by sqrt(v^t v) when all the required square roots live in one
// supported quadratic extension (giving C C^t = I); otherwise the rows stay
// unnormalized and Cinv is computed directly.
EigDecomposition eig_symmetric(const PMatrix& a);

Mat<ExtScalar> eigenvalue_diagonal(const EigDecomposition& e);

// Entrywise embedding of a base-field matrix into the extension type.
Mat<ExtScalar> embed_matrix(const PMatrix& a);

}  // namespace padop
