#include "padop/derivation.hpp"

#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "padop/eig.hpp"
#include "padop/errors.hpp"
#include "padop/ldu.hpp"

namespace padop {

namespace {

void require_compatible(const DerivationMap& d, std::uint32_t p, int n) {
  if (d.p != p) fail(errc::prime_mismatch, "map and operand use different primes");
  if (d.n != n)
    fail(errc::dimension_mismatch, "map and operand sizes do not match");
}

// One unknown block of n^2 values per element that entered the span as a
// generator; every later element carries a linear form in those unknowns,
// built by pushing the Leibniz rule along its recorded product provenance.
struct ValueForms {
  int width = 0;
  std::vector<int> block;      // element index -> block offset, -1 for products
  std::vector<PMatrix> forms;  // per element: n^2 x width coefficient matrix
};

ValueForms value_forms(const AlgebraSpan& alg) {
  const std::uint32_t p = alg.p;
  const int n = alg.n;
  const int nn = n * n;
  const int count = static_cast<int>(alg.elements.size());
  ValueForms vf;
  vf.block.assign(static_cast<std::size_t>(count), -1);
  for (int m = 0; m < count; ++m)
    if (alg.origins[static_cast<std::size_t>(m)].gen >= 0) {
      vf.block[static_cast<std::size_t>(m)] = vf.width;
      vf.width += nn;
    }
  vf.forms.reserve(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    PMatrix v(p, nn, vf.width);
    const int bm = vf.block[static_cast<std::size_t>(m)];
    if (bm >= 0) {
      for (int t = 0; t < nn; ++t)
        v.at(t, bm + t) = PadicScalar::one(p, kMaxPrecision);
    } else {
      const auto& o = alg.origins[static_cast<std::size_t>(m)];
      const PMatrix& el = alg.elements[static_cast<std::size_t>(o.left)];
      const PMatrix& er = alg.elements[static_cast<std::size_t>(o.right)];
      const PMatrix& vl = vf.forms[static_cast<std::size_t>(o.left)];
      const PMatrix& vr = vf.forms[static_cast<std::size_t>(o.right)];
      // D(e_l e_r) = D(e_l) e_r + e_l D(e_r), one vectorized row at a time
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const int t = i * n + j;
          for (int k = 0; k < n; ++k) {
            const PadicScalar& cr = er.at(k, j);
            if (!cr.is_exact_zero())
              for (int u = 0; u < vf.width; ++u) {
                const PadicScalar& x = vl.at(i * n + k, u);
                if (!x.is_exact_zero()) v.at(t, u) += cr * x;
              }
            const PadicScalar& cl = el.at(i, k);
            if (!cl.is_exact_zero())
              for (int u = 0; u < vf.width; ++u) {
                const PadicScalar& x = vr.at(k * n + j, u);
                if (!x.is_exact_zero()) v.at(t, u) += cl * x;
              }
          }
        }
    }
    vf.forms.push_back(std::move(v));
  }
  return vf;
}

// S[m][k] = vec(e_m)[pivot_k]: element coordinates over the echelon rows.
// Invertible because every element grew the span when it was adjoined.
PMatrix element_mix(const AlgebraSpan& alg) {
  const int count = static_cast<int>(alg.elements.size());
  PMatrix s(alg.p, count, count);
  for (int m = 0; m < count; ++m)
    for (int k = 0; k < count; ++k) {
      const int t = alg.pivots[static_cast<std::size_t>(k)];
      s.at(m, k) = alg.elements[static_cast<std::size_t>(m)].at(t / alg.n,
                                                               t % alg.n);
    }
  return s;
}

// Coordinates of an in-span matrix over the elements: S^t c = pivot reads.
std::vector<PadicScalar> element_coords(const AlgebraSpan& alg,
                                        const PMatrix& inv_mix,
                                        const PMatrix& q) {
  const int count = static_cast<int>(alg.elements.size());
  std::vector<PadicScalar> reads;
  reads.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const int t = alg.pivots[static_cast<std::size_t>(k)];
    reads.push_back(q.at(t / alg.n, t % alg.n));
  }
  std::vector<PadicScalar> c(static_cast<std::size_t>(count),
                             PadicScalar::zero(alg.p));
  for (int m = 0; m < count; ++m)
    for (int k = 0; k < count; ++k) {
      const PadicScalar& w = inv_mix.at(k, m);
      if (!w.is_exact_zero() && !reads[static_cast<std::size_t>(k)].is_exact_zero())
        c[static_cast<std::size_t>(m)] += w * reads[static_cast<std::size_t>(k)];
    }
  return c;
}

// The Leibniz rule for a product pair that created an element holds by
// construction of that element's value form, so only pairs whose product
// folded back into the span contribute rows.  Imposing the rule for every
// generator block against every element is enough: the two-sided identity
// L(ab, c) = a L(b, c) + L(a, bc) - L(a, b) c propagates it to all products.
std::vector<std::vector<PadicScalar>> leibniz_rows(const AlgebraSpan& alg,
                                                   const ValueForms& vf,
                                                   const PMatrix& inv_mix,
                                                   Codomain codomain) {
  const std::uint32_t p = alg.p;
  const int n = alg.n;
  const int nn = n * n;
  const int count = static_cast<int>(alg.elements.size());
  std::unordered_map<long long, int> made_by;
  for (int m = 0; m < count; ++m) {
    const auto& o = alg.origins[static_cast<std::size_t>(m)];
    if (o.gen < 0)
      made_by.emplace(static_cast<long long>(o.left) * count + o.right, m);
  }

  std::vector<std::vector<PadicScalar>> rows;
  for (int g = 0; g < count; ++g) {
    const int bg = vf.block[static_cast<std::size_t>(g)];
    if (bg < 0) continue;
    const PMatrix& eg = alg.elements[static_cast<std::size_t>(g)];
    for (int j = 0; j < count; ++j) {
      if (made_by.count(static_cast<long long>(g) * count + j)) continue;
      const PMatrix& ej = alg.elements[static_cast<std::size_t>(j)];
      const std::vector<PadicScalar> c =
          element_coords(alg, inv_mix, eg * ej);
      const PMatrix& vj = vf.forms[static_cast<std::size_t>(j)];
      for (int i = 0; i < n; ++i)
        for (int j2 = 0; j2 < n; ++j2) {
          const int t = i * n + j2;
          std::vector<PadicScalar> row(static_cast<std::size_t>(vf.width),
                                       PadicScalar::zero(p));
          for (int m = 0; m < count; ++m) {
            const PadicScalar& cm = c[static_cast<std::size_t>(m)];
            if (cm.is_exact_zero()) continue;
            const PMatrix& vm = vf.forms[static_cast<std::size_t>(m)];
            for (int u = 0; u < vf.width; ++u) {
              const PadicScalar& x = vm.at(t, u);
              if (!x.is_exact_zero())
                row[static_cast<std::size_t>(u)] += cm * x;
            }
          }
          for (int k = 0; k < n; ++k) {
            const PadicScalar& ckj = ej.at(k, j2);
            if (!ckj.is_exact_zero())
              row[static_cast<std::size_t>(bg + i * n + k)] -= ckj;
          }
          for (int k = 0; k < n; ++k) {
            const PadicScalar& cik = eg.at(i, k);
            if (cik.is_exact_zero()) continue;
            const int src = k * n + j2;
            for (int u = 0; u < vf.width; ++u) {
              const PadicScalar& x = vj.at(src, u);
              if (!x.is_exact_zero())
                row[static_cast<std::size_t>(u)] -= cik * x;
            }
          }
          bool live = false;
          for (const PadicScalar& x : row)
            if (!x.is_exact_zero()) {
              live = true;
              break;
            }
          if (live) rows.push_back(std::move(row));
        }
    }
  }

  if (codomain == Codomain::kSelf) {
    // Generator values must reduce to zero against the echelon rows; the
    // product elements then stay inside by multiplicative closure.
    std::vector<char> is_pivot(static_cast<std::size_t>(nn), 0);
    for (int t : alg.pivots) is_pivot[static_cast<std::size_t>(t)] = 1;
    for (int g = 0; g < count; ++g) {
      const int bg = vf.block[static_cast<std::size_t>(g)];
      if (bg < 0) continue;
      for (int t = 0; t < nn; ++t) {
        if (is_pivot[static_cast<std::size_t>(t)]) continue;
        std::vector<PadicScalar> row(static_cast<std::size_t>(vf.width),
                                     PadicScalar::zero(p));
        row[static_cast<std::size_t>(bg + t)] = PadicScalar::one(p, kMaxPrecision);
        for (int k = 0; k < count; ++k) {
          const PadicScalar& e =
              alg.basis[static_cast<std::size_t>(k)].at(t / n, t % n);
          if (!e.is_exact_zero())
            row[static_cast<std::size_t>(
                bg + alg.pivots[static_cast<std::size_t>(k)])] -= e;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

// Values of one solution on every element, by provenance recursion.
std::vector<PMatrix> element_values(const AlgebraSpan& alg,
                                    const ValueForms& vf,
                                    const std::vector<PadicScalar>& u) {
  const std::uint32_t p = alg.p;
  const int n = alg.n;
  const int nn = n * n;
  const int count = static_cast<int>(alg.elements.size());
  std::vector<PMatrix> val;
  val.reserve(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    const int bm = vf.block[static_cast<std::size_t>(m)];
    if (bm >= 0) {
      PMatrix dm(p, n, n);
      for (int t = 0; t < nn; ++t)
        dm.at(t / n, t % n) = u[static_cast<std::size_t>(bm + t)];
      val.push_back(std::move(dm));
    } else {
      const auto& o = alg.origins[static_cast<std::size_t>(m)];
      val.push_back(val[static_cast<std::size_t>(o.left)] *
                        alg.elements[static_cast<std::size_t>(o.right)] +
                    alg.elements[static_cast<std::size_t>(o.left)] *
                        val[static_cast<std::size_t>(o.right)]);
    }
  }
  return val;
}

DerivationMap assemble_map(const AlgebraSpan& alg, const ValueForms& vf,
                           const PMatrix& inv_mix,
                           const std::vector<PadicScalar>& u,
                           std::shared_ptr<const AlgebraSpan> dom) {
  const std::uint32_t p = alg.p;
  const int n = alg.n;
  const int nn = n * n;
  const int count = static_cast<int>(alg.elements.size());
  const std::vector<PMatrix> val = element_values(alg, vf, u);
  // Column pivot_k carries vec(D(row_k)); the map is zero on the complement
  // spanned by the non-pivot coordinates.
  PMatrix big(p, nn, nn);
  for (int k = 0; k < count; ++k) {
    for (int t = 0; t < nn; ++t) {
      PadicScalar acc = PadicScalar::zero(p);
      for (int m = 0; m < count; ++m) {
        const PadicScalar& w = inv_mix.at(k, m);
        if (w.is_exact_zero()) continue;
        const PadicScalar& x = val[static_cast<std::size_t>(m)].at(t / n, t % n);
        if (!x.is_exact_zero()) acc += w * x;
      }
      big.at(t, alg.pivots[static_cast<std::size_t>(k)]) = acc;
    }
  }
  DerivationMap out;
  out.p = p;
  out.n = n;
  out.m = std::move(big);
  out.domain = std::move(dom);
  return out;
}

std::string space_key(const AlgebraSpan& alg, Codomain c) {
  std::ostringstream os;
  os << alg.p << ':' << alg.n << ':' << (c == Codomain::kSelf ? 's' : 'a');
  for (int t : alg.pivots) os << ',' << t;
  for (const PMatrix& b : alg.basis)
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) os << ';' << b.at(i, j).to_string();
  return os.str();
}

std::mutex g_space_mutex;
std::deque<std::pair<std::string, std::vector<DerivationMap>>> g_space_cache;
constexpr std::size_t kSpaceCacheCap = 8;

}  // namespace

PMatrix DerivationMap::apply(const PMatrix& a) const {
  if (a.prime() != p) fail(errc::prime_mismatch, "map and operand use different primes");
  if (a.rows() != n || a.cols() != n)
    fail(errc::dimension_mismatch, "map and operand sizes do not match");
  const std::vector<PadicScalar> v = vec_row_major(a);
  PMatrix out(p, n, n);
  for (int t = 0; t < n * n; ++t) {
    PadicScalar acc = PadicScalar::zero(p);
    for (int u = 0; u < n * n; ++u) {
      const PadicScalar& c = m.at(t, u);
      if (!c.is_exact_zero()) acc += c * v[static_cast<std::size_t>(u)];
    }
    out.at(t / n, t % n) = acc;
  }
  return out;
}

DerivationMap zero_derivation(std::uint32_t p, int n) {
  DerivationMap d;
  d.p = p;
  d.n = n;
  d.m = PMatrix(p, n * n, n * n);
  return d;
}

DerivationMap ad_map(const PMatrix& b) {
  if (b.rows() != b.cols())
    fail(errc::dimension_mismatch, "ad needs a square matrix");
  const int n = b.rows();
  const std::uint32_t p = b.prime();
  PMatrix m(p, n * n, n * n);
  // [B, X]_{ij} = sum_k B_{ik} X_{kj} - X_{ik} B_{kj}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        m.at(i * n + j, k * n + j) += b.at(i, k);
        m.at(i * n + j, i * n + k) -= b.at(k, j);
      }
  DerivationMap d;
  d.p = p;
  d.n = n;
  d.m = std::move(m);
  return d;
}

ExactPower leibniz_defect(const DerivationMap& d, const AlgebraSpan& alg) {
  require_compatible(d, alg.p, alg.n);
  std::vector<PMatrix> dv;
  dv.reserve(alg.basis.size());
  for (const PMatrix& b : alg.basis) dv.push_back(d.apply(b));
  ExactPower defect = ExactPower::zero();
  for (std::size_t i = 0; i < alg.basis.size(); ++i)
    for (std::size_t j = 0; j < alg.basis.size(); ++j) {
      const PMatrix lhs = d.apply(alg.basis[i] * alg.basis[j]);
      const PMatrix rhs = dv[i] * alg.basis[j] + alg.basis[i] * dv[j];
      defect = ExactPower::max(defect, PMatrix::dist(lhs, rhs));
    }
  return defect;
}

std::vector<DerivationMap> derivation_space(const AlgebraSpan& alg,
                                            Codomain codomain) {
  if (alg.elements.empty()) return {};
  const std::string key = space_key(alg, codomain);
  {
    std::lock_guard<std::mutex> lock(g_space_mutex);
    for (const auto& entry : g_space_cache)
      if (entry.first == key) return entry.second;
  }
  const ValueForms vf = value_forms(alg);
  const PMatrix inv_mix = inverse(element_mix(alg));
  const auto rows = leibniz_rows(alg, vf, inv_mix, codomain);
  const auto sols = nullspace(alg.p, vf.width, rows);
  auto dom = std::make_shared<const AlgebraSpan>(alg);
  std::vector<DerivationMap> out;
  out.reserve(sols.size());
  for (const auto& u : sols)
    out.push_back(assemble_map(alg, vf, inv_mix, u, dom));
  {
    std::lock_guard<std::mutex> lock(g_space_mutex);
    g_space_cache.emplace_back(key, out);
    while (g_space_cache.size() > kSpaceCacheCap) g_space_cache.pop_front();
  }
  return out;
}

InnerSolveResult solve_inner(const DerivationMap& d, const AlgebraSpan& alg) {
  require_compatible(d, alg.p, alg.n);
  const std::uint32_t p = alg.p;
  const int n = alg.n;
  const int count = alg.dimension();
  InnerSolveResult out;
  out.witness = PMatrix(p, n, n);
  out.residual = ExactPower::zero();
  out.residual_bound = ExactPower::zero();
  out.mismatch = ExactPower::zero();
  out.derivation_space_dimension =
      static_cast<int>(derivation_space(alg, Codomain::kAmbient).size());
  if (count == 0) {
    out.inner = true;
    return out;
  }

  std::vector<PMatrix> dv;
  dv.reserve(static_cast<std::size_t>(count));
  for (const PMatrix& b : alg.basis) dv.push_back(d.apply(b));

  std::vector<std::vector<PadicScalar>> rows;
  std::vector<PadicScalar> rhs;
  rows.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(n * n));
  for (int i = 0; i < count; ++i) {
    const PMatrix& ai = alg.basis[static_cast<std::size_t>(i)];
    std::vector<PMatrix> coms;
    coms.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      const PMatrix& bk = alg.basis[static_cast<std::size_t>(k)];
      coms.push_back(bk * ai - ai * bk);
    }
    for (int t = 0; t < n * n; ++t) {
      std::vector<PadicScalar> row;
      row.reserve(static_cast<std::size_t>(count));
      for (int k = 0; k < count; ++k)
        row.push_back(coms[static_cast<std::size_t>(k)].at(t / n, t % n));
      rows.push_back(std::move(row));
      rhs.push_back(dv[static_cast<std::size_t>(i)].at(t / n, t % n));
    }
  }

  const LinearSolveOutcome sol = solve_affine(p, count, rows, rhs);
  if (!sol.consistent) {
    out.inner = false;
    out.mismatch = sol.mismatch;
    return out;
  }

  PMatrix b(p, n, n);
  for (int k = 0; k < count; ++k) {
    const PadicScalar& x = sol.solution[static_cast<std::size_t>(k)];
    if (!x.is_exact_zero())
      b += alg.basis[static_cast<std::size_t>(k)].scaled(x);
  }
  // Remove the commuting part so the witness is canonical: trace zero within
  // each block when blocks are known, global trace zero otherwise.
  if (!alg.idempotents.empty()) {
    for (const PMatrix& pr : alg.idempotents) {
      const PadicScalar t = (pr * b).trace();
      b -= pr.scaled(t / pr.trace());
    }
  } else if (alg.has_unit) {
    const PadicScalar t = b.trace() / PadicScalar::from_integer(p, n, kMaxPrecision);
    b -= PMatrix::identity(p, n).scaled(t);
  }

  ExactPower res = ExactPower::zero();
  ExactPower bound = ExactPower::zero();
  for (int i = 0; i < count; ++i) {
    const PMatrix& ai = alg.basis[static_cast<std::size_t>(i)];
    const PMatrix r = b * ai - ai * b - dv[static_cast<std::size_t>(i)];
    res = ExactPower::max(res, r.norm());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        bound = ExactPower::max(bound, r.at(x, y).norm_upper_bound());
  }
  out.witness = std::move(b);
  out.residual = res;
  out.residual_bound = bound;
  out.inner = res.is_zero();
  return out;
}

bool annihilates_center(const DerivationMap& d, const AlgebraSpan& alg) {
  require_compatible(d, alg.p, alg.n);
  const AlgebraSpan z = center(alg);
  for (const PMatrix& zb : z.basis)
    if (!d.apply(zb).is_zero()) return false;
  return true;
}

bool projected_derivation_vanishes(const DerivationMap& d, const PMatrix& a) {
  if (a.rows() != a.cols())
    fail(errc::dimension_mismatch, "spectral projection needs a square matrix");
  require_compatible(d, a.prime(), a.rows());
  const AlgebraSpan alg =
      close_span({PMatrix::identity(a.prime(), a.rows()), a});
  const EigDecomposition e = eig_symmetric(a);
  for (const PMatrix& bm : alg.basis) {
    const EMatrix y = e.C * embed_matrix(d.apply(bm)) * e.Cinv;
    for (int i = 0; i < a.rows(); ++i)
      if (!y.at(i, i).is_zero()) return false;
  }
  return true;
}

EMatrix ExtDerivationMap::apply(const EMatrix& a) const {
  if (a.prime() != p) fail(errc::prime_mismatch, "map and operand use different primes");
  if (a.rows() != n || a.cols() != n)
    fail(errc::dimension_mismatch, "map and operand sizes do not match");
  std::vector<ExtScalar> v;
  v.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v.push_back(a.at(i, j));
  EMatrix out(p, n, n);
  for (int t = 0; t < n * n; ++t) {
    ExtScalar acc = ExtScalar::zero(p);
    for (int u = 0; u < n * n; ++u) {
      const ExtScalar& c = m.at(t, u);
      if (c.a().is_exact_zero() && c.b().is_exact_zero()) continue;
      acc = acc + c * v[static_cast<std::size_t>(u)];
    }
    out.at(t / n, t % n) = acc;
  }
  return out;
}

ExtDerivationMap extend_derivation(const DerivationMap& d, QuadClass cls) {
  ExtDerivationMap out;
  out.cls = cls;
  out.p = d.p;
  out.n = d.n;
  out.m = EMatrix(d.p, d.n * d.n, d.n * d.n);
  for (int t = 0; t < d.n * d.n; ++t)
    for (int u = 0; u < d.n * d.n; ++u)
      out.m.at(t, u) =
          ExtScalar::from_parts(cls, d.m.at(t, u), PadicScalar::zero(d.p));
  return out;
}

bool commutant_derivation_check(const PMatrix& b, const AlgebraSpan& alg) {
  if (b.rows() != b.cols() || b.rows() != alg.n)
    fail(errc::dimension_mismatch, "candidate must act on the span's space");
  if (b.prime() != alg.p)
    fail(errc::prime_mismatch, "candidate and span use different primes");
  for (const PMatrix& a : alg.basis)
    if (!in_span(b * a - a * b, alg))
      fail(errc::domain_error,
           "the candidate's bracket leaves the span, so it induces no map on it");
  const AlgebraSpan cm = commutant(alg, alg.n);
  for (const PMatrix& t : cm.basis)
    if (!in_span(b * t - t * b, cm)) return false;
  return true;
}

}  // namespace padop
