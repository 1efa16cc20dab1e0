#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "padop/matrix.hpp"
#include "padop/power.hpp"
#include "padop/scalar.hpp"

namespace padop {

std::vector<PadicScalar> vec_row_major(const PMatrix& a);
PMatrix unvec_row_major(std::uint32_t p, int rows, int cols,
                        const std::vector<PadicScalar>& v);

// Outcome of adjoining a vector to a row space: it grew the space, it was
// already contained at precision, or (augmented solves) its only certified
// entries sit beyond the pivot window.
enum class SpanInsert { kGrew, kContained, kBeyondWindow };

// Span of vectors over Q_p kept in reduced echelon form with certified pivot
// decisions: every stored row has an exact 1 at its own pivot column and
// exact zeros at the pivots of the other rows, so membership coordinates can
// be read off at the pivot columns.  Pivots are chosen by maximal norm among
// certified entries; a vector whose uncertified entries could outweigh every
// certified one raises PrecisionExhausted instead of guessing the rank.
class RowSpace {
 public:
  RowSpace(std::uint32_t p, int width) : p_(p), width_(width) {}
  // Wraps rows that are already reduced (unit pivots, cleared columns).
  RowSpace(std::uint32_t p, int width,
           std::vector<std::vector<PadicScalar>> rows, std::vector<int> pivots)
      : p_(p), width_(width), rows_(std::move(rows)),
        pivots_(std::move(pivots)) {}

  std::uint32_t prime() const { return p_; }
  int width() const { return width_; }
  int dimension() const { return static_cast<int>(rows_.size()); }
  const std::vector<PadicScalar>& row(int i) const { return rows_[i]; }
  int pivot(int i) const { return pivots_[i]; }

  // v minus its projection onto the space; pivot columns end up exact zero.
  std::vector<PadicScalar> reduce(std::vector<PadicScalar> v) const;
  ExactPower residual_norm(const std::vector<PadicScalar>& v) const;
  bool contains(const std::vector<PadicScalar>& v) const;
  // Entries of v at the pivot columns; these are the coordinates over row()
  // when v is a member, exact because the rows are fully reduced.
  std::vector<PadicScalar> coordinates(const std::vector<PadicScalar>& v) const;

  SpanInsert adjoin(std::vector<PadicScalar> v, int pivot_window);
  bool insert(std::vector<PadicScalar> v) {
    return adjoin(std::move(v), width_) == SpanInsert::kGrew;
  }

 private:
  std::uint32_t p_;
  int width_;
  std::vector<std::vector<PadicScalar>> rows_;
  std::vector<int> pivots_;
};

// Basis of the solution space of rows * x = 0, free coordinates taken in
// column order.  Raises PrecisionExhausted on uncertifiable rank decisions.
std::vector<std::vector<PadicScalar>> nullspace(
    std::uint32_t p, int width, const std::vector<std::vector<PadicScalar>>& rows);

struct LinearSolveOutcome {
  bool consistent = false;
  std::vector<PadicScalar> solution;  // free coordinates pinned to zero
  ExactPower mismatch;                // certified defect when inconsistent
};

// One solution of the stacked system rows * x = rhs, or a certified
// inconsistency report.
LinearSolveOutcome solve_affine(std::uint32_t p, int width,
                                const std::vector<std::vector<PadicScalar>>& rows,
                                const std::vector<PadicScalar>& rhs);

// A multiplicatively closed subspace of Mat_n(Q_p), closed by iterating
// products of its generators.  The basis is the reduced echelon form of the
// vectorized span; elements/origins record how each independent closure
// witness arose (a generator, or a product of two earlier witnesses), which
// is what lets a map prescribed on the generators propagate over the span.
struct AlgebraSpan {
  std::uint32_t p = 0;
  int n = 0;
  std::vector<PMatrix> generators;

  std::vector<PMatrix> basis;
  std::vector<int> pivots;  // pivot coordinate of each basis row

  struct Provenance {
    int gen = -1;    // index into generators, or
    int left = -1;   // elements[left] * elements[right]
    int right = -1;
  };
  std::vector<PMatrix> elements;
  std::vector<Provenance> origins;

  // Orthogonal central idempotents summing to I, one per detected block;
  // empty when the span is not recognized as block-diagonal semisimple.
  std::vector<PMatrix> idempotents;

  bool has_unit = false;
  bool closed_under_transpose = false;

  int dimension() const { return static_cast<int>(basis.size()); }
  bool has_block_structure() const { return !idempotents.empty(); }
};

// Iterates products until the span stops growing, then echelonizes and
// detects block structure.  Raises PrecisionExhausted when a rank decision
// is uncertifiable.
AlgebraSpan close_span(const std::vector<PMatrix>& generators);

// The echelon rows of alg.basis as a RowSpace (no recomputation).
RowSpace span_rows(const AlgebraSpan& alg);

ExactPower span_residual(const PMatrix& a, const AlgebraSpan& alg);
bool in_span(const PMatrix& a, const AlgebraSpan& alg);
// Coordinates over alg.basis; meaningful for members.
std::vector<PadicScalar> span_coordinates(const PMatrix& a,
                                          const AlgebraSpan& alg);
bool same_span(const AlgebraSpan& x, const AlgebraSpan& y);

// Elements of alg commuting with all of alg, as a closed span.
AlgebraSpan center(const AlgebraSpan& alg);
// Everything in Mat_n commuting with alg, as a closed span; ambient_n must
// match the ambient dimension of alg.
AlgebraSpan commutant(const AlgebraSpan& alg, int ambient_n);

// Sum of the central idempotents acting nontrivially on a; satisfies
// carrier * a = a.  Requires detected block structure.
PMatrix central_carrier(const PMatrix& a, const AlgebraSpan& alg);

// Trace form tr(ad a . ad b) of the adjoint actions on the subspace of alg
// that is trace-orthogonal to the center (the blockwise trace-zero part).
PadicScalar killing_form(const PMatrix& a, const PMatrix& b,
                         const AlgebraSpan& alg);

struct KillingGram {
  std::vector<PMatrix> basis;  // echelon basis of the trace-zero subspace
  PMatrix gram;
  PadicScalar det;
};
KillingGram killing_gram(const AlgebraSpan& alg);

}  // namespace padop
