#include "padop/selftest.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "padop/derivation.hpp"
#include "padop/eig.hpp"
#include "padop/errors.hpp"
#include "padop/ext.hpp"
#include "padop/funcalc.hpp"
#include "padop/functional.hpp"
#include "padop/ldu.hpp"
#include "padop/matrix.hpp"
#include "padop/poly.hpp"
#include "padop/rng.hpp"
#include "padop/scalar.hpp"
#include "padop/span.hpp"

namespace padop {

namespace {

// ---- random instance generators -------------------------------------------

PadicScalar random_unit(Rng& rng, std::uint32_t p, int prec, std::int64_t vlo,
                        std::int64_t vhi) {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(prec));
  d[0] = static_cast<std::uint32_t>(rng.range(1, p - 1));
  for (int k = 1; k < prec; ++k)
    d[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(rng.below(p));
  return PadicScalar::from_digit_string(p, rng.range(vlo, vhi), d);
}

// Unit with a prescribed residue, for spectra that must stay squarefree mod p.
PadicScalar unit_with_residue(Rng& rng, std::uint32_t p, int prec,
                              std::uint32_t r) {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(prec));
  d[0] = r;
  for (int k = 1; k < prec; ++k)
    d[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(rng.below(p));
  return PadicScalar::from_digit_string(p, 0, d);
}

PMatrix random_matrix(Rng& rng, std::uint32_t p, int n, int prec,
                      std::int64_t vlo, std::int64_t vhi, int zero_weight = 6) {
  PMatrix a(p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (zero_weight == 0 || rng.below(static_cast<std::uint64_t>(zero_weight)))
        a.at(i, j) = random_unit(rng, p, prec, vlo, vhi);
  return a;
}

// diag(1..n) and the blockwise cyclic shift generate the full block algebra.
std::vector<PMatrix> block_gens(std::uint32_t p, const std::vector<int>& sizes,
                                int prec) {
  int n = 0;
  for (int s : sizes) n += s;
  PMatrix diag(p, n, n);
  for (int i = 0; i < n; ++i)
    diag.at(i, i) = PadicScalar::from_integer(p, i + 1, prec);
  PMatrix shift(p, n, n);
  int off = 0;
  for (int s : sizes) {
    for (int i = 0; i < s; ++i)
      shift.at(off + (i + 1) % s, off + i) = PadicScalar::one(p, prec);
    off += s;
  }
  return {diag, shift};
}

// Product of Givens rotations with tangents in pZ_p: c = (1-t^2)/(1+t^2),
// s = 2t/(1+t^2) satisfy c^2 + s^2 = 1 and the product is I mod p, so
// conjugation preserves residue spectra.
PMatrix givens_orthogonal(Rng& rng, std::uint32_t p, int n, int prec) {
  PMatrix q = PMatrix::identity(p, n);
  const PadicScalar one = PadicScalar::one(p, prec);
  const PadicScalar two = PadicScalar::from_integer(p, 2, prec);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const PadicScalar t = random_unit(rng, p, prec, 1, 2);
      const PadicScalar tt = t * t;
      const PadicScalar den = one + tt;
      const PadicScalar c = (one - tt) / den;
      const PadicScalar s = two * t / den;
      PMatrix g = PMatrix::identity(p, n);
      g.at(i, i) = c;
      g.at(j, j) = c;
      g.at(i, j) = s;
      g.at(j, i) = -s;
      q = g * q;
    }
  return q;
}

struct SplitSymmetric {
  PMatrix a;
  std::vector<PadicScalar> eigenvalues;
};

// Q^t diag(lambda) Q for orthogonal Q and units lambda_i with distinct
// residues mod p: symmetric at precision, fully split spectrum, norm 1.
SplitSymmetric random_split_symmetric(Rng& rng, std::uint32_t p, int n,
                                      int prec) {
  std::vector<std::uint32_t> residues;
  for (std::uint32_t r = 1; r < p; ++r) residues.push_back(r);
  for (std::size_t k = residues.size(); k > 1; --k)
    std::swap(residues[k - 1], residues[rng.below(k)]);
  SplitSymmetric out;
  out.eigenvalues.reserve(static_cast<std::size_t>(n));
  PMatrix d(p, n, n);
  for (int i = 0; i < n; ++i) {
    PadicScalar lam = unit_with_residue(rng, p, prec,
                                        residues[static_cast<std::size_t>(i)]);
    d.at(i, i) = lam;
    out.eigenvalues.push_back(std::move(lam));
  }
  const PMatrix q = givens_orthogonal(rng, p, n, prec);
  out.a = q.transpose() * d * q;
  return out;
}

// Random composition of a total in [2, total_max], parts of size 1..3.
std::vector<int> random_block_sizes(Rng& rng, int total_max) {
  const int total = 2 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(total_max - 1)));
  std::vector<int> sizes;
  int left = total;
  while (left > 0) {
    const int s = 1 + static_cast<int>(
                          rng.below(static_cast<std::uint64_t>(
                              std::min(left, 3))));
    sizes.push_back(s);
    left -= s;
  }
  return sizes;
}

PPolynomial random_poly(Rng& rng, std::uint32_t p, int prec, int max_degree) {
  const int deg = static_cast<int>(rng.below(
                      static_cast<std::uint64_t>(max_degree))) + 1;
  std::vector<PadicScalar> cs(static_cast<std::size_t>(deg) + 1,
                              PadicScalar::zero(p));
  for (int k = 0; k <= deg; ++k)
    if (k == deg || rng.below(4))
      cs[static_cast<std::size_t>(k)] = random_unit(rng, p, prec, -2, 2);
  return PPolynomial(p, std::move(cs));
}

// ---- suites ----------------------------------------------------------------

using SuiteFn = SuiteResult (*)(std::uint32_t, int, int, Rng&);

SuiteResult s01_inner_recovery(std::uint32_t p, int n_max, int prec, Rng& rng) {
  SuiteResult r{"s01_inner_recovery", 0, 0, ""};
  const int top = std::min(n_max, 4);
  for (int n = 2; n <= std::max(2, top); ++n) {
    for (int t = 0; t < 3; ++t) {
      ++r.trials;
      try {
        const auto alg = close_span(block_gens(p, {n}, prec));
        const PMatrix b0 = random_matrix(rng, p, n, prec, 0, 0);
        const InnerSolveResult res = solve_inner(ad_map(b0), alg);
        bool ok = res.inner && res.residual.is_zero();
        ok = ok && !(res.residual_bound >
                     ExactPower::from_valuation(prec - 2));
        // recovered witness differs from b0 by a scalar matrix
        const PMatrix diff = res.witness - b0;
        const PMatrix scal =
            PMatrix::identity(p, n).scaled(diff.at(0, 0));
        ok = ok && PMatrix::dist(diff, scal).is_zero();
        if (!ok) ++r.failures;
      } catch (const Error&) {
        ++r.failures;
      }
    }
  }
  return r;
}

SuiteResult s02_derivation_dimensions(std::uint32_t p, int n_max, int prec,
                                      Rng& rng) {
  (void)rng;
  SuiteResult r{"s02_derivation_dimensions", 0, 0, ""};
  for (int n = 2; n <= std::max(2, std::min(n_max, 4)); ++n) {
    ++r.trials;
    try {
      const auto alg = close_span(block_gens(p, {n}, prec));
      const auto space = derivation_space(alg, Codomain::kSelf);
      if (static_cast<int>(space.size()) != n * n - 1) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  for (int m = 2; m <= std::max(2, std::min(n_max + 2, 6)); ++m) {
    ++r.trials;
    try {
      const auto alg =
          close_span(block_gens(p, std::vector<int>(m, 1), prec));
      if (!derivation_space(alg, Codomain::kSelf).empty()) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

SuiteResult s03_center_annihilation(std::uint32_t p, int n_max, int prec,
                                    Rng& rng) {
  SuiteResult r{"s03_center_annihilation", 0, 0, ""};
  const int total_max = std::min(n_max + 2, 6);
  for (int t = 0; t < 5; ++t) {
    ++r.trials;
    try {
      const auto sizes = random_block_sizes(rng, total_max);
      const auto alg = close_span(block_gens(p, sizes, prec));
      const auto zb = center(alg).basis;
      bool ok = true;
      for (const DerivationMap& d : derivation_space(alg, Codomain::kSelf)) {
        if (!annihilates_center(d, alg)) ok = false;
        for (const PMatrix& z : zb)
          if (!d.apply(z).is_zero()) ok = false;
      }
      if (!ok) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

SuiteResult s04_carrier_law(std::uint32_t p, int n_max, int prec, Rng& rng) {
  SuiteResult r{"s04_carrier_law", 0, 0, ""};
  const int total_max = std::min(n_max + 2, 6);
  for (int round = 0; round < 3; ++round) {
    std::vector<int> sizes;
    try {
      sizes = random_block_sizes(rng, total_max);
    } catch (const Error&) {
      continue;
    }
    int n = 0;
    for (int s : sizes) n += s;
    AlgebraSpan alg;
    try {
      alg = close_span(block_gens(p, sizes, prec));
    } catch (const Error&) {
      r.trials += 8;
      r.failures += 8;
      continue;
    }
    for (int t = 0; t < 8; ++t) {
      ++r.trials;
      try {
        PMatrix b(p, n, n);
        PMatrix q(p, n, n);
        bool overlap = false;
        int off = 0;
        for (int s : sizes) {
          const bool bs = rng.coin();
          const bool qs = rng.coin();
          overlap = overlap || (bs && qs);
          if (bs)
            for (int i = 0; i < s; ++i)
              for (int j = 0; j < s; ++j)
                b.at(off + i, off + j) = random_unit(rng, p, prec, 0, 1);
          if (qs) {
            const PadicScalar c = random_unit(rng, p, prec, 0, 1);
            for (int i = 0; i < s; ++i) q.at(off + i, off + i) = c;
          }
          off += s;
        }
        const bool product_zero = (b * q).is_zero();
        const PMatrix cb = central_carrier(b, alg);
        const PMatrix cq = central_carrier(q, alg);
        const bool carriers_zero = (cb * cq).is_zero();
        if (product_zero != carriers_zero || product_zero == overlap)
          ++r.failures;
      } catch (const Error&) {
        ++r.failures;
      }
    }
  }
  return r;
}

SuiteResult s05_ldu_reconstruction(std::uint32_t p, int n_max, int prec,
                                   Rng& rng) {
  SuiteResult r{"s05_ldu_reconstruction", 0, 0, ""};
  const int top = std::min(n_max + 4, 8);
  for (int t = 0; t < 40; ++t) {
    ++r.trials;
    try {
      const int n = 1 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(top)));
      PMatrix a = random_matrix(rng, p, n, prec, -2, 2, 5);
      if (rng.below(6) == 0) {
        // exact rank deficiency: blank a row and a column
        const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        for (int k = 0; k < n; ++k) {
          a.at(i, k) = PadicScalar::zero(p);
          a.at(k, j) = PadicScalar::zero(p);
        }
      }
      const TriDecomposition d = ldu_decompose(a);
      bool ok = PMatrix::dist(permuted_input(d, a), d.C * d.T * d.E).is_zero();
      ok = ok && !((d.C - PMatrix::identity(p, n)).norm() > ExactPower::one());
      ok = ok && !((d.E - PMatrix::identity(p, n)).norm() > ExactPower::one());
      if (!ok) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

SuiteResult s06_norm_bounds(std::uint32_t p, int n_max, int prec, Rng& rng) {
  SuiteResult r{"s06_norm_bounds", 0, 0, ""};
  const int top = std::max(2, std::min({n_max, static_cast<int>(p) - 1, 5}));
  for (int t = 0; t < 24; ++t) {
    ++r.trials;
    try {
      const int n = 2 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(top - 1)));
      const SplitSymmetric sym = random_split_symmetric(rng, p, n, prec);
      const std::int64_t e = rng.range(-1, 1);
      const PMatrix a = sym.a.scaled(
          PadicScalar::one(p, prec).shifted(e));
      const PPolynomial s = random_poly(rng, p, prec, 6);
      bool ok = !(poly_eval(s, a).norm() >
                  sup_norm_on_ball(s, a.norm().log()));
      if (e == 0) {
        std::vector<PadicScalar> samples;
        for (int k = 0; k < 8; ++k)
          samples.push_back(rng.below(5) ? random_unit(rng, p, prec, 0, 2)
                                         : PadicScalar::zero(p));
        const MahlerSeries f = MahlerSeries::from_samples(p, samples);
        ok = ok && !(funcalc_spectral(f, sym.a).norm() > f.sup_norm());
      }
      if (!ok) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

SuiteResult s07_eig_isometry(std::uint32_t p, int n_max, int prec, Rng& rng) {
  SuiteResult r{"s07_eig_isometry", 0, 0, ""};
  const int top = std::max(2, std::min({n_max + 1, static_cast<int>(p) - 1, 5}));
  int isometric = 0;
  for (int t = 0; t < 12; ++t) {
    ++r.trials;
    try {
      const int n = 2 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(top - 1)));
      const SplitSymmetric sym = random_split_symmetric(rng, p, n, prec);
      const EigDecomposition dec = eig_symmetric(sym.a);
      const EMatrix rec = dec.Cinv * eigenvalue_diagonal(dec) * dec.C;
      bool ok = EMatrix::dist(rec, embed_matrix(sym.a)).is_zero();
      if (dec.isometric) {
        ++isometric;
        const EMatrix id = EMatrix::identity(p, n);
        ok = ok && EMatrix::dist(dec.C * dec.C.transpose(), id).is_zero();
      }
      if (!ok) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  r.notes = "isometric " + std::to_string(isometric) + "/" +
            std::to_string(r.trials);
  return r;
}

SuiteResult s08_operator_roots(std::uint32_t p, int n_max, int prec, Rng& rng) {
  SuiteResult r{"s08_operator_roots", 0, 0, ""};
  for (int t = 0; t < 8; ++t) {
    ++r.trials;
    try {
      const int k = 2 + static_cast<int>(rng.below(2));
      // residues whose k-th powers stay distinct mod p
      std::vector<std::uint32_t> mu_res;
      std::vector<std::uint32_t> seen;
      for (std::uint32_t c = 1; c < p; ++c) {
        std::uint32_t pw = 1;
        for (int e = 0; e < k; ++e) pw = pw * c % p;
        if (std::find(seen.begin(), seen.end(), pw) == seen.end()) {
          seen.push_back(pw);
          mu_res.push_back(c);
        }
      }
      const int want = 2 + static_cast<int>(rng.below(2));
      const int m = std::min({want, n_max, static_cast<int>(mu_res.size())});
      for (std::size_t z = mu_res.size(); z > 1; --z)
        std::swap(mu_res[z - 1], mu_res[rng.below(z)]);
      PMatrix d(p, m, m);
      for (int i = 0; i < m; ++i) {
        PadicScalar mu = unit_with_residue(rng, p, prec,
                                           mu_res[static_cast<std::size_t>(i)]);
        PadicScalar lam = mu;
        for (int e = 1; e < k; ++e) lam *= mu;
        d.at(i, i) = lam;
      }
      const PMatrix q = givens_orthogonal(rng, p, m, prec);
      const PMatrix a = q.transpose() * d * q;
      const PMatrix b = operator_root(a, k);
      PMatrix bk = b;
      for (int e = 1; e < k; ++e) bk = bk * b;
      bool ok = PMatrix::dist(bk, a).is_zero();
      ok = ok && (b * a - a * b).is_zero();
      // recover the certified polynomial expression of B in A: one equation
      // per matrix position, one unknown per power of A
      std::vector<std::vector<PadicScalar>> powers;
      PMatrix ak = PMatrix::identity(p, m);
      for (int e = 0; e < m; ++e) {
        powers.push_back(vec_row_major(ak));
        ak = ak * a;
      }
      std::vector<std::vector<PadicScalar>> rows(
          static_cast<std::size_t>(m) * m,
          std::vector<PadicScalar>(static_cast<std::size_t>(m),
                                   PadicScalar::zero(p)));
      for (std::size_t pos = 0; pos < rows.size(); ++pos)
        for (int e = 0; e < m; ++e)
          rows[pos][static_cast<std::size_t>(e)] =
              powers[static_cast<std::size_t>(e)][pos];
      const LinearSolveOutcome sol = solve_affine(p, m, rows, vec_row_major(b));
      ok = ok && sol.consistent;
      if (sol.consistent) {
        PMatrix recon(p, m, m);
        PMatrix pw = PMatrix::identity(p, m);
        for (int e = 0; e < m; ++e) {
          recon = recon + pw.scaled(sol.solution[static_cast<std::size_t>(e)]);
          pw = pw * a;
        }
        ok = ok && PMatrix::dist(recon, b).is_zero();
      }
      if (!ok) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

SuiteResult s09_mahler_tails(std::uint32_t p, int n_max, int prec, Rng& rng) {
  (void)n_max;
  SuiteResult r{"s09_mahler_tails", 0, 0, ""};
  // f(x) = x^p sampled at 0..25; the series terminates, so full evaluation
  // is exact everywhere and truncation errors are honest tail sums.
  std::vector<PadicScalar> samples;
  for (int x = 0; x <= 25; ++x) {
    PadicScalar v = PadicScalar::one(p, prec);
    const PadicScalar base = PadicScalar::from_integer(p, x, prec);
    for (std::uint32_t e = 0; e < p; ++e) v *= base;
    samples.push_back(std::move(v));
  }
  const MahlerSeries f = MahlerSeries::from_samples(p, samples);
  for (int t = 0; t < 60; ++t) {
    ++r.trials;
    try {
      const PadicScalar x = rng.below(7)
                                ? random_unit(rng, p, prec, 0, 4)
                                : PadicScalar::from_integer(
                                      p, static_cast<long long>(rng.below(26)),
                                      prec);
      const PadicScalar full = f.eval(x);
      bool ok = true;
      for (int kp = 0; kp <= 25; ++kp) {
        const PadicScalar err = full - f.eval_truncated(x, kp);
        if (err.norm() > f.tail_bound(kp)) ok = false;
      }
      if (!ok) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

SuiteResult s10_clamp(std::uint32_t p, int n_max, int prec, Rng& rng) {
  SuiteResult r{"s10_clamp", 0, 0, ""};
  for (std::int64_t v = -8; v <= 8; ++v) {
    for (int t = 0; t < 2; ++t) {
      ++r.trials;
      try {
        const PadicScalar x = random_unit(rng, p, prec, v, v);
        const PadicScalar c = clamp(x);
        bool ok = !(c.norm() > ExactPower::one());
        ok = ok && PadicScalar::dist(clamp(c), c).is_zero();
        if (v >= 0) ok = ok && PadicScalar::dist(c, x).is_zero();
        if (!ok) ++r.failures;
      } catch (const Error&) {
        ++r.failures;
      }
    }
  }
  // on operators with |A| <= 1 the clamp table acts as the identity
  const int top = std::max(2, std::min({n_max, static_cast<int>(p) - 1, 4}));
  for (int t = 0; t < 3; ++t) {
    ++r.trials;
    try {
      const int n = 2 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(top - 1)));
      const SplitSymmetric sym = random_split_symmetric(rng, p, n, prec);
      std::vector<PadicScalar> table;
      for (int x = 0; x <= 8; ++x)
        table.push_back(clamp(PadicScalar::from_integer(p, x, prec)));
      const MahlerSeries f = MahlerSeries::from_samples(p, table);
      if (!PMatrix::dist(funcalc_spectral(f, sym.a), sym.a).is_zero())
        ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

SuiteResult s11_functionals(std::uint32_t p, int n_max, int prec, Rng& rng) {
  SuiteResult r{"s11_functionals", 0, 0, ""};
  const int top = std::max(2, std::min({n_max, static_cast<int>(p) - 1, 4}));
  for (int t = 0; t < 12; ++t) {
    ++r.trials;
    try {
      const int m = 2 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(top - 1)));
      const auto alg = close_span(block_gens(p, std::vector<int>(m, 1), prec));
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
      PMatrix rmat(p, m, m);
      rmat.at(j, j) = PadicScalar::one(p, prec);
      const SymmetricFunctional rho = make_functional(rmat);

      // diagonal member with distinct residues, so the calculus applies
      std::vector<std::uint32_t> residues;
      for (std::uint32_t c = 1; c < p; ++c) residues.push_back(c);
      for (std::size_t z = residues.size(); z > 1; --z)
        std::swap(residues[z - 1], residues[rng.below(z)]);
      PMatrix a(p, m, m);
      for (int i = 0; i < m; ++i)
        a.at(i, i) = unit_with_residue(rng, p, prec,
                                       residues[static_cast<std::size_t>(i)]);

      bool ok = is_state(rho) && is_multiplicative_on(rho, alg) &&
                is_definite_on(rho, a, 8);
      ok = ok && PadicScalar::dist(functional_eval(rho, a), a.at(j, j)).is_zero();

      std::vector<PadicScalar> samples;
      for (int x = 0; x <= 6; ++x)
        samples.push_back(rng.below(5) ? random_unit(rng, p, prec, 0, 2)
                                       : PadicScalar::zero(p));
      const MahlerSeries f = MahlerSeries::from_samples(p, samples);
      const PadicScalar lhs = functional_eval(rho, funcalc_spectral(f, a));
      const PadicScalar rhs = f.eval(functional_eval(rho, a));
      ok = ok && PadicScalar::dist(lhs, rhs).is_zero();

      // commutators with a diagonal operand have zero diagonal
      const PMatrix bamb = random_matrix(rng, p, m, prec, 0, 1);
      ok = ok && functional_eval(rho, ad_map(bamb).apply(a)).is_zero();
      if (!ok) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

}  // namespace

SelftestReport run_selftest(std::uint32_t p, int n_max, int prec,
                            std::uint64_t seed) {
  if (p < 2) fail(errc::domain_error, "p must be a prime");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) fail(errc::domain_error, "p must be a prime");
  if (n_max < 1 || n_max > 8)
    fail(errc::domain_error, "n_max must lie in [1, 8]");
  if (prec < 4 || prec > kMaxPrecision)
    fail(errc::domain_error, "precision must lie in [4, 256]");

  static constexpr std::pair<const char*, SuiteFn> kSuites[] = {
      {"s01_inner_recovery", s01_inner_recovery},
      {"s02_derivation_dimensions", s02_derivation_dimensions},
      {"s03_center_annihilation", s03_center_annihilation},
      {"s04_carrier_law", s04_carrier_law},
      {"s05_ldu_reconstruction", s05_ldu_reconstruction},
      {"s06_norm_bounds", s06_norm_bounds},
      {"s07_eig_isometry", s07_eig_isometry},
      {"s08_operator_roots", s08_operator_roots},
      {"s09_mahler_tails", s09_mahler_tails},
      {"s10_clamp", s10_clamp},
      {"s11_functionals", s11_functionals},
  };

  SelftestReport report;
  report.p = p;
  report.n_max = n_max;
  report.prec = prec;
  report.seed = seed;
  report.all_passed = true;
  for (const auto& [name, fn] : kSuites) {
    Rng rng = suite_rng(seed, name);
    SuiteResult res = fn(p, n_max, prec, rng);
    report.all_passed = report.all_passed && res.failures == 0;
    report.suites.push_back(std::move(res));
  }
  return report;
}

std::string selftest_report_json(const SelftestReport& report) {
  nlohmann::json suites = nlohmann::json::array();
  for (const SuiteResult& s : report.suites) {
    nlohmann::json row;
    row["name"] = s.name;
    row["trials"] = s.trials;
    row["failures"] = s.failures;
    row["notes"] = s.notes;
    suites.push_back(std::move(row));
  }
  nlohmann::json j;
  j["p"] = report.p;
  j["n_max"] = report.n_max;
  j["prec"] = report.prec;
  j["seed"] = report.seed;
  j["suites"] = std::move(suites);
  j["all_passed"] = report.all_passed;
  return j.dump();
}

}  // namespace padop
