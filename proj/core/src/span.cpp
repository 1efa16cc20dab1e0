#include "padop/span.hpp"

#include <deque>
#include <utility>

#include "padop/ldu.hpp"

namespace padop {

std::vector<PadicScalar> vec_row_major(const PMatrix& a) {
  std::vector<PadicScalar> v;
  v.reserve(static_cast<std::size_t>(a.rows()) * a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) v.push_back(a.at(i, j));
  return v;
}

PMatrix unvec_row_major(std::uint32_t p, int rows, int cols,
                        const std::vector<PadicScalar>& v) {
  if (v.size() != static_cast<std::size_t>(rows) * cols)
    fail(errc::dimension_mismatch, "vector length is not rows*cols");
  PMatrix m(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = v[static_cast<std::size_t>(i) * cols + j];
  return m;
}

std::vector<PadicScalar> RowSpace::reduce(std::vector<PadicScalar> v) const {
  if (static_cast<int>(v.size()) != width_)
    fail(errc::dimension_mismatch, "vector width differs from the space");
  for (int i = 0; i < dimension(); ++i) {
    const PadicScalar c = v[pivots_[i]];
    if (c.is_exact_zero()) continue;
    // An uncertified c is eliminated too: its pivot-slot residue c - c*1 is
    // exactly zero, and the contributions c*r[k] keep their own floors.
    const std::vector<PadicScalar>& r = rows_[i];
    for (int k = 0; k < width_; ++k) {
      if (k == pivots_[i] || r[k].is_exact_zero()) continue;
      v[k] -= c * r[k];
    }
    v[pivots_[i]] = PadicScalar::zero(p_);
  }
  return v;
}

ExactPower RowSpace::residual_norm(const std::vector<PadicScalar>& v) const {
  std::vector<PadicScalar> r = reduce(v);
  ExactPower m = ExactPower::zero();
  for (const PadicScalar& e : r) m = ExactPower::max(m, e.norm());
  return m;
}

bool RowSpace::contains(const std::vector<PadicScalar>& v) const {
  return residual_norm(v).is_zero();
}

std::vector<PadicScalar> RowSpace::coordinates(
    const std::vector<PadicScalar>& v) const {
  if (static_cast<int>(v.size()) != width_)
    fail(errc::dimension_mismatch, "vector width differs from the space");
  std::vector<PadicScalar> c;
  c.reserve(rows_.size());
  for (int i = 0; i < dimension(); ++i) c.push_back(v[pivots_[i]]);
  return c;
}

SpanInsert RowSpace::adjoin(std::vector<PadicScalar> v, int pivot_window) {
  v = reduce(std::move(v));
  int best = -1;
  ExactPower best_norm = ExactPower::zero();
  ExactPower loose = ExactPower::zero();
  bool beyond = false;
  for (int k = 0; k < width_; ++k) {
    const PadicScalar& e = v[k];
    if (e.certified_nonzero()) {
      if (k >= pivot_window) {
        beyond = true;
      } else if (best < 0 || e.norm() > best_norm) {
        best = k;
        best_norm = e.norm();
      }
    } else if (!e.is_exact_zero() && k < pivot_window) {
      loose = ExactPower::max(loose, e.norm_upper_bound());
    }
  }
  if (best < 0)
    return beyond ? SpanInsert::kBeyondWindow : SpanInsert::kContained;
  if (best_norm < loose)
    fail(errc::precision_exhausted,
         "an uncertified entry could outweigh every certified pivot");
  const PadicScalar piv = v[best];
  for (int k = 0; k < width_; ++k) {
    if (k == best || v[k].is_exact_zero()) continue;
    v[k] /= piv;
  }
  v[best] = PadicScalar::one(p_, kMaxPrecision);  // piv / piv, exactly
  for (int i = 0; i < dimension(); ++i) {
    std::vector<PadicScalar>& r = rows_[i];
    const PadicScalar c = r[best];
    if (c.is_exact_zero()) continue;
    for (int k = 0; k < width_; ++k) {
      if (k == best || v[k].is_exact_zero()) continue;
      r[k] -= c * v[k];
    }
    r[best] = PadicScalar::zero(p_);
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(best);
  return SpanInsert::kGrew;
}

std::vector<std::vector<PadicScalar>> nullspace(
    std::uint32_t p, int width,
    const std::vector<std::vector<PadicScalar>>& rows) {
  RowSpace rs(p, width);
  for (const auto& r : rows) {
    bool live = false;
    for (const PadicScalar& e : r)
      if (e.certified_nonzero()) {
        live = true;
        break;
      }
    if (live) rs.adjoin(r, width);
  }
  std::vector<bool> is_piv(width, false);
  for (int i = 0; i < rs.dimension(); ++i) is_piv[rs.pivot(i)] = true;
  std::vector<std::vector<PadicScalar>> basis;
  for (int f = 0; f < width; ++f) {
    if (is_piv[f]) continue;
    std::vector<PadicScalar> x(width, PadicScalar::zero(p));
    x[f] = PadicScalar::one(p, kMaxPrecision);
    for (int i = 0; i < rs.dimension(); ++i) x[rs.pivot(i)] = -rs.row(i)[f];
    basis.push_back(std::move(x));
  }
  return basis;
}

LinearSolveOutcome solve_affine(
    std::uint32_t p, int width,
    const std::vector<std::vector<PadicScalar>>& rows,
    const std::vector<PadicScalar>& rhs) {
  if (rows.size() != rhs.size())
    fail(errc::dimension_mismatch, "row and rhs counts differ");
  RowSpace rs(p, width + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != width)
      fail(errc::dimension_mismatch, "row width differs from the system");
    std::vector<PadicScalar> aug = rows[i];
    aug.push_back(rhs[i]);
    if (rs.adjoin(std::move(aug), width) == SpanInsert::kBeyondWindow) {
      // the row reduces to 0 = r with r certified nonzero
      std::vector<PadicScalar> red = rows[i];
      red.push_back(rhs[i]);
      red = rs.reduce(std::move(red));
      LinearSolveOutcome out;
      out.consistent = false;
      out.mismatch = red[width].norm();
      return out;
    }
  }
  LinearSolveOutcome out;
  out.consistent = true;
  out.solution.assign(width, PadicScalar::zero(p));
  for (int i = 0; i < rs.dimension(); ++i)
    out.solution[rs.pivot(i)] = rs.row(i)[width];
  return out;
}

namespace {

// Members of alg commuting with every generator, hence with all of alg.
std::vector<PMatrix> commuting_members(const AlgebraSpan& alg) {
  const int d = alg.dimension();
  if (d == 0) return {};
  const int n = alg.n;
  std::vector<std::vector<PadicScalar>> rows;
  for (const PMatrix& g : alg.generators) {
    std::vector<PMatrix> brackets;
    brackets.reserve(d);
    for (const PMatrix& b : alg.basis) brackets.push_back(b * g - g * b);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        std::vector<PadicScalar> row;
        row.reserve(d);
        bool live = false;
        for (int k = 0; k < d; ++k) {
          row.push_back(brackets[k].at(x, y));
          if (row.back().certified_nonzero()) live = true;
        }
        if (live) rows.push_back(std::move(row));
      }
  }
  std::vector<std::vector<PadicScalar>> coords = nullspace(alg.p, d, rows);
  std::vector<PMatrix> out;
  out.reserve(coords.size());
  for (const auto& c : coords) {
    PMatrix z(alg.p, n, n);
    for (int k = 0; k < d; ++k)
      if (!c[k].is_zero()) z += alg.basis[k].scaled(c[k]);
    out.push_back(std::move(z));
  }
  return out;
}

// Recognizes orthogonal central idempotents summing to I.  Requires the
// center to consist of diagonal matrices; positions fall into one block per
// central-value class, and each indicator must itself be a central member.
void detect_blocks(AlgebraSpan& alg, const RowSpace& rs) {
  if (!alg.has_unit) return;
  const int n = alg.n;
  std::vector<PMatrix> zs = commuting_members(alg);
  for (const PMatrix& z : zs)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !z.at(i, j).is_zero()) return;
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (auto& cls : classes) {
      const int r = cls.front();
      bool agree = true;
      for (const PMatrix& z : zs)
        if (!PadicScalar::dist(z.at(i, i), z.at(r, r)).is_zero()) {
          agree = false;
          break;
        }
      if (agree) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }
  std::vector<PMatrix> idems;
  idems.reserve(classes.size());
  for (const auto& cls : classes) {
    PMatrix pr(alg.p, n, n);
    for (int i : cls) pr.at(i, i) = PadicScalar::one(alg.p, kMaxPrecision);
    if (!rs.contains(vec_row_major(pr))) return;
    for (const PMatrix& g : alg.generators)
      if (!PMatrix::dist(pr * g, g * pr).is_zero()) return;
    idems.push_back(std::move(pr));
  }
  alg.idempotents = std::move(idems);
}

int perm_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// Echelon rows of the subspace of alg that is trace-orthogonal to the
// center.  Commutators of members land in it, so adjoint actions restrict.
RowSpace trace_zero_rows(const AlgebraSpan& alg) {
  const int d = alg.dimension();
  std::vector<PMatrix> zs = commuting_members(alg);
  std::vector<std::vector<PadicScalar>> rows;
  for (const PMatrix& z : zs) {
    std::vector<PadicScalar> row;
    row.reserve(d);
    bool live = false;
    for (const PMatrix& b : alg.basis) {
      row.push_back((b * z).trace());
      if (row.back().certified_nonzero()) live = true;
    }
    if (live) rows.push_back(std::move(row));
  }
  std::vector<std::vector<PadicScalar>> coords = nullspace(alg.p, d, rows);
  RowSpace out(alg.p, alg.n * alg.n);
  for (const auto& c : coords) {
    PMatrix m(alg.p, alg.n, alg.n);
    for (int k = 0; k < d; ++k)
      if (!c[k].is_zero()) m += alg.basis[k].scaled(c[k]);
    if (!out.insert(vec_row_major(m)))
      fail(errc::precision_exhausted,
           "trace-zero basis lost rank at precision");
  }
  return out;
}

// tr of X -> [a, [b, X]] on the trace-zero subspace held by lt.
PadicScalar killing_on(const RowSpace& lt, const PMatrix& a, const PMatrix& b,
                       std::uint32_t p, int n) {
  PadicScalar acc = PadicScalar::zero(p);
  for (int i = 0; i < lt.dimension(); ++i) {
    PMatrix x = unvec_row_major(p, n, n, lt.row(i));
    PMatrix y = b * x - x * b;
    y = a * y - y * a;
    std::vector<PadicScalar> v = vec_row_major(y);
    if (!lt.contains(v))
      fail(errc::precision_exhausted,
           "adjoint image left the trace-zero subspace at precision");
    acc += lt.coordinates(v)[i];
  }
  return acc;
}

void require_ambient(const PMatrix& a, const AlgebraSpan& alg,
                     const char* what) {
  if (a.prime() != alg.p) fail(errc::prime_mismatch, what);
  if (a.rows() != alg.n || a.cols() != alg.n)
    fail(errc::dimension_mismatch, what);
}

}  // namespace

AlgebraSpan close_span(const std::vector<PMatrix>& generators) {
  if (generators.empty())
    fail(errc::domain_error, "a span needs at least one generator");
  const std::uint32_t p = generators.front().prime();
  const int n = generators.front().rows();
  for (const PMatrix& g : generators) {
    if (!g.is_square())
      fail(errc::dimension_mismatch, "generators must be square");
    if (g.rows() != n) fail(errc::dimension_mismatch, "generator sizes differ");
    if (g.prime() != p) fail(errc::prime_mismatch, "generator primes differ");
  }

  AlgebraSpan alg;
  alg.p = p;
  alg.n = n;
  alg.generators = generators;

  RowSpace rs(p, n * n);
  std::deque<std::pair<int, int>> work;
  auto adjoin_witness = [&](const PMatrix& m, AlgebraSpan::Provenance o) {
    if (!rs.insert(vec_row_major(m))) return;
    const int idx = static_cast<int>(alg.elements.size());
    for (int j = 0; j < idx; ++j) {
      work.emplace_back(idx, j);
      work.emplace_back(j, idx);
    }
    work.emplace_back(idx, idx);
    alg.elements.push_back(m);
    alg.origins.push_back(o);
  };

  for (std::size_t g = 0; g < generators.size(); ++g)
    adjoin_witness(generators[g], {static_cast<int>(g), -1, -1});
  while (!work.empty() && rs.dimension() < n * n) {
    auto [i, j] = work.front();
    work.pop_front();
    adjoin_witness(alg.elements[i] * alg.elements[j], {-1, i, j});
  }

  for (int i = 0; i < rs.dimension(); ++i) {
    alg.basis.push_back(unvec_row_major(p, n, n, rs.row(i)));
    alg.pivots.push_back(rs.pivot(i));
  }
  alg.has_unit = rs.contains(vec_row_major(PMatrix::identity(p, n)));
  alg.closed_under_transpose = true;
  for (const PMatrix& b : alg.basis)
    if (!rs.contains(vec_row_major(b.transpose()))) {
      alg.closed_under_transpose = false;
      break;
    }
  detect_blocks(alg, rs);
  return alg;
}

RowSpace span_rows(const AlgebraSpan& alg) {
  std::vector<std::vector<PadicScalar>> rows;
  rows.reserve(alg.basis.size());
  for (const PMatrix& b : alg.basis) rows.push_back(vec_row_major(b));
  return RowSpace(alg.p, alg.n * alg.n, std::move(rows), alg.pivots);
}

ExactPower span_residual(const PMatrix& a, const AlgebraSpan& alg) {
  require_ambient(a, alg, "membership candidate does not fit the span");
  return span_rows(alg).residual_norm(vec_row_major(a));
}

bool in_span(const PMatrix& a, const AlgebraSpan& alg) {
  return span_residual(a, alg).is_zero();
}

std::vector<PadicScalar> span_coordinates(const PMatrix& a,
                                          const AlgebraSpan& alg) {
  require_ambient(a, alg, "coordinate candidate does not fit the span");
  return span_rows(alg).coordinates(vec_row_major(a));
}

bool same_span(const AlgebraSpan& x, const AlgebraSpan& y) {
  if (x.p != y.p || x.n != y.n || x.dimension() != y.dimension()) return false;
  RowSpace rx = span_rows(x);
  for (const PMatrix& b : y.basis)
    if (!rx.contains(vec_row_major(b))) return false;
  return true;
}

AlgebraSpan center(const AlgebraSpan& alg) {
  std::vector<PMatrix> zs = commuting_members(alg);
  if (zs.empty()) {
    AlgebraSpan empty;
    empty.p = alg.p;
    empty.n = alg.n;
    return empty;
  }
  return close_span(zs);
}

AlgebraSpan commutant(const AlgebraSpan& alg, int ambient_n) {
  if (ambient_n != alg.n)
    fail(errc::dimension_mismatch,
         "the commutant is taken in the ambient matrix algebra");
  const int n = alg.n;
  const int w = n * n;
  std::vector<std::vector<PadicScalar>> rows;
  for (const PMatrix& g : alg.generators) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        // entry (x, y) of Xg - gX as a row over vec(X)
        std::vector<PadicScalar> row(w, PadicScalar::zero(alg.p));
        for (int k = 0; k < n; ++k) {
          row[x * n + k] += g.at(k, y);
          row[k * n + y] -= g.at(x, k);
        }
        bool live = false;
        for (const PadicScalar& e : row)
          if (e.certified_nonzero()) {
            live = true;
            break;
          }
        if (live) rows.push_back(std::move(row));
      }
  }
  std::vector<std::vector<PadicScalar>> xs = nullspace(alg.p, w, rows);
  if (xs.empty()) {
    AlgebraSpan empty;
    empty.p = alg.p;
    empty.n = alg.n;
    return empty;
  }
  std::vector<PMatrix> mats;
  mats.reserve(xs.size());
  for (const auto& v : xs) mats.push_back(unvec_row_major(alg.p, n, n, v));
  return close_span(mats);
}

PMatrix central_carrier(const PMatrix& a, const AlgebraSpan& alg) {
  require_ambient(a, alg, "carrier argument does not fit the span");
  if (!alg.has_block_structure())
    fail(errc::no_block_structure,
         "no orthogonal central idempotents detected for this span");
  PMatrix c(alg.p, alg.n, alg.n);
  for (const PMatrix& pr : alg.idempotents) {
    const PMatrix image = pr * a;
    bool hit = false;
    for (int i = 0; i < alg.n && !hit; ++i)
      for (int j = 0; j < alg.n; ++j)
        if (image.at(i, j).certified_nonzero()) {
          hit = true;
          break;
        }
    if (hit) c += pr;
  }
  return c;
}

PadicScalar killing_form(const PMatrix& a, const PMatrix& b,
                         const AlgebraSpan& alg) {
  require_ambient(a, alg, "killing form argument does not fit the span");
  require_ambient(b, alg, "killing form argument does not fit the span");
  if (!in_span(a, alg) || !in_span(b, alg))
    fail(errc::domain_error, "killing form arguments must lie in the span");
  return killing_on(trace_zero_rows(alg), a, b, alg.p, alg.n);
}

KillingGram killing_gram(const AlgebraSpan& alg) {
  RowSpace lt = trace_zero_rows(alg);
  const int k = lt.dimension();
  KillingGram out;
  out.basis.reserve(k);
  for (int i = 0; i < k; ++i)
    out.basis.push_back(unvec_row_major(alg.p, alg.n, alg.n, lt.row(i)));
  out.gram = PMatrix(alg.p, k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out.gram.at(i, j) = killing_on(lt, out.basis[i], out.basis[j], alg.p, alg.n);
  if (k == 0) {
    out.det = PadicScalar::one(alg.p, kMaxPrecision);
    return out;
  }
  TriDecomposition t = ldu_decompose(out.gram);
  PadicScalar d = PadicScalar::one(alg.p, kMaxPrecision);
  for (int i = 0; i < k; ++i) d *= t.T.at(i, i);
  if (perm_sign(t.row_perm) * perm_sign(t.col_perm) < 0) d = -d;
  out.det = d;
  return out;
}

}  // namespace padop
