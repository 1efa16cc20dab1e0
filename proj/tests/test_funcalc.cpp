#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "padop/eig.hpp"
#include "padop/funcalc.hpp"
#include "padop/ldu.hpp"
#include "padop/matrix.hpp"
#include "padop/poly.hpp"
#include "padop/rng.hpp"
#include "padop/roots.hpp"

using padop::errc;
using padop::Error;
using padop::ExactPower;
using padop::ExtScalar;
using padop::MahlerSeries;
using padop::Mat;
using padop::PadicScalar;
using padop::PMatrix;
using padop::PPolynomial;
using padop::Rng;

namespace {

PadicScalar random_unit(Rng& rng, std::uint32_t p, int digits = 32) {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(digits));
  d[0] = static_cast<std::uint32_t>(rng.range(1, p - 1));
  for (std::size_t i = 1; i < d.size(); ++i)
    d[i] = static_cast<std::uint32_t>(rng.below(p));
  return PadicScalar::from_digit_string(p, 0, d);
}

PadicScalar random_integral(Rng& rng, std::uint32_t p) {
  return random_unit(rng, p).shifted(rng.range(0, 3));
}

PMatrix from_ints(std::uint32_t p, const std::vector<std::vector<long long>>& v) {
  PMatrix a(p, static_cast<int>(v.size()), static_cast<int>(v[0].size()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      a.at(i, j) = PadicScalar::from_integer(p, v[i][j]);
  return a;
}

PMatrix plane_rotation(std::uint32_t p, int n, int i, int j, long long t) {
  PMatrix g = PMatrix::identity(p, n);
  const long long den = 1 + t * t;
  g.at(i, i) = PadicScalar::from_rational(p, 1 - t * t, den, padop::kMaxPrecision);
  g.at(j, j) = g.at(i, i);
  g.at(i, j) = PadicScalar::from_rational(p, 2 * t, den, padop::kMaxPrecision);
  g.at(j, i) = -g.at(i, j);
  return g;
}

PMatrix conjugate_by_rotations(Rng& rng, const PMatrix& d) {
  static const std::vector<long long> safe_t = {1, 4, 6, 9};
  const int n = d.rows();
  PMatrix a = d;
  for (int k = 0; k < n; ++k) {
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (i == j) j = (j + 1) % n;
    const PMatrix g = plane_rotation(
        d.prime(), n, std::min(i, j), std::max(i, j),
        safe_t[static_cast<std::size_t>(rng.below(safe_t.size()))]);
    a = g.transpose() * a * g;
  }
  return a;
}

struct Planted {
  PMatrix a;
  std::vector<PadicScalar> eigs;
};

// Symmetric matrix with a certified split spectrum: distinct
// (valuation, residue) diagonal entries conjugated by rational rotations.
// root_power > 0 plants eigenvalues that are exact root_power-th powers.
Planted planted_symmetric(Rng& rng, std::uint32_t p, int n, std::int64_t vmax,
                          int root_power = 0) {
  std::set<std::pair<std::int64_t, std::uint32_t>> used;
  PMatrix d(p, n, n);
  std::vector<PadicScalar> eigs;
  for (int i = 0; i < n; ++i) {
    for (;;) {
      PadicScalar cand = random_unit(rng, p);
      if (root_power > 0) {
        PadicScalar powed = cand;
        for (int q = 1; q < root_power; ++q) powed = powed * cand;
        cand = powed.shifted(root_power * rng.range(0, vmax));
      } else {
        cand = cand.shifted(rng.range(0, vmax));
      }
      const std::pair<std::int64_t, std::uint32_t> key{cand.valuation(),
                                                       cand.leading_digit()};
      if (used.insert(key).second) {
        d.at(i, i) = cand;
        eigs.push_back(cand);
        break;
      }
    }
  }
  return {conjugate_by_rotations(rng, d), eigs};
}

PPolynomial random_poly(Rng& rng, std::uint32_t p, int deg) {
  std::vector<PadicScalar> c;
  for (int k = 0; k <= deg; ++k)
    c.push_back(PadicScalar::from_integer(p, rng.range(-20, 20)));
  c.push_back(PadicScalar::one(p));  // keep the degree honest
  return PPolynomial(p, std::move(c));
}

bool fails_with(errc code, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("poly_eval closed forms") {
  const auto swap2 = from_ints(5, {{0, 1}, {1, 0}});
  const PPolynomial sq = PPolynomial::from_integers(5, {0, 0, 1});
  CHECK(PMatrix::dist(padop::poly_eval(sq, swap2), PMatrix::identity(5, 2)).is_zero());
  const PPolynomial id = PPolynomial::from_integers(5, {0, 1});
  CHECK(PMatrix::dist(padop::poly_eval(id, swap2), swap2).is_zero());
}

TEST_CASE("polynomial norm bound on the unit ball") {
  // S = x^2 + p x on unit-norm symmetric split inputs over Q5
  Rng rng(0xfc01);
  const PPolynomial s = PPolynomial::from_integers(5, {0, 5, 1});
  const ExactPower bound = padop::sup_norm_on_ball(s, 0);
  CHECK(bound == ExactPower::one());
  for (int trial = 0; trial < 60; ++trial) {
    const Planted pl = planted_symmetric(rng, 5, static_cast<int>(rng.range(2, 4)), 0);
    const PMatrix image = padop::poly_eval(s, pl.a);
    CHECK(image.norm() <= bound);
    // eigenvalue oracle: the norm is the largest eigenvalue image
    ExactPower eo = ExactPower::zero();
    for (const PadicScalar& l : pl.eigs)
      eo = ExactPower::max(eo, s.eval(l).norm());
    CHECK(image.norm() == eo);
  }
}

TEST_CASE("sup_norm_on_ball closed forms and sampling oracle") {
  const PPolynomial sq = PPolynomial::from_integers(5, {0, 0, 1});
  CHECK(padop::sup_norm_on_ball(sq, 0) == ExactPower::one());
  const PPolynomial px = PPolynomial::from_integers(5, {0, 5});
  CHECK(padop::sup_norm_on_ball(px, 0) == ExactPower::from_valuation(1));
  const PPolynomial lin = PPolynomial::from_integers(5, {0, 1});
  CHECK(padop::sup_norm_on_ball(lin, -1) == ExactPower::from_valuation(1));
  CHECK(padop::sup_norm_on_ball(lin, 1) == ExactPower::from_valuation(-1));

  Rng rng(0xfc02);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t p = trial % 2 == 0 ? 5 : 7;
    const PPolynomial s = random_poly(rng, p, static_cast<int>(rng.range(1, 5)));
    const ExactPower sup = padop::sup_norm_on_ball(s, 0);
    // the sup is attained among the first deg+1 integers
    ExactPower inil = ExactPower::zero();
    for (int i = 0; i <= s.degree(); ++i)
      inil = ExactPower::max(
          inil, s.eval(PadicScalar::from_integer(p, i, padop::kMaxPrecision)).norm());
    CHECK(sup == inil);
    for (int k = 0; k < 400; ++k)
      CHECK(s.eval(random_integral(rng, p)).norm() <= sup);
  }
}

TEST_CASE("binomial expansion bound for unipotent matrices") {
  const PMatrix i3 = PMatrix::identity(5, 3);
  CHECK(padop::binom_expand_bound(i3, 7) == ExactPower::one());

  auto n3 = from_ints(5, {{1, 2, 7}, {0, 1, 3}, {0, 0, 1}});
  CHECK(padop::binom_expand_bound(n3, 1000) == ExactPower::one());

  Rng rng(0xfc03);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng.range(2, 5));
    PMatrix c = PMatrix::identity(5, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        c.at(i, j) = random_unit(rng, 5).shifted(rng.range(0, 2));
    const std::int64_t k = rng.range(1, 64);
    const ExactPower bound = padop::binom_expand_bound(c, k);
    CHECK(bound == ExactPower::one());
    PMatrix pw = PMatrix::identity(5, n);
    for (std::int64_t q = 0; q < k; ++q) pw = pw * c;
    CHECK(pw.norm() <= bound);
  }

  // a non-contractive nilpotent part still gets a certified bound
  auto big = from_ints(5, {{1, 0}, {0, 1}});
  big.at(0, 1) = PadicScalar::from_rational(5, 1, 25, padop::kMaxPrecision);
  const ExactPower bigb = padop::binom_expand_bound(big, 9);
  CHECK(bigb == ExactPower::from_valuation(-2));

  CHECK(fails_with(errc::not_unitriangular,
                   [] { padop::binom_expand_bound(from_ints(5, {{2, 0}, {0, 1}}), 3); }));
}

TEST_CASE("Mahler coefficients by finite differences") {
  const std::uint32_t p = 5;
  std::vector<PadicScalar> sq;
  for (long long i = 0; i <= 3; ++i)
    sq.push_back(PadicScalar::from_integer(p, i * i, padop::kMaxPrecision));
  const MahlerSeries ms = MahlerSeries::from_samples(p, sq);
  REQUIRE(ms.order() == 3);
  CHECK(ms.coeffs()[0].is_zero());
  CHECK(PadicScalar::dist(ms.coeffs()[1], PadicScalar::one(p)).is_zero());
  CHECK(PadicScalar::dist(ms.coeffs()[2], PadicScalar::from_integer(p, 2)).is_zero());
  CHECK(ms.coeffs()[3].is_zero());

  std::vector<PadicScalar> cst(6, PadicScalar::from_integer(p, 9));
  const MahlerSeries mc = MahlerSeries::from_samples(p, cst);
  CHECK(PadicScalar::dist(mc.coeffs()[0], PadicScalar::from_integer(p, 9)).is_zero());
  for (int k = 1; k <= mc.order(); ++k) CHECK(mc.coeffs()[static_cast<std::size_t>(k)].is_zero());

  // reconstruction at the sample points is exact
  Rng rng(0xfc04);
  std::vector<PadicScalar> tbl;
  for (int i = 0; i < 9; ++i) tbl.push_back(random_integral(rng, p));
  const MahlerSeries mr = MahlerSeries::from_samples(p, tbl);
  for (int i = 0; i < 9; ++i)
    CHECK(PadicScalar::dist(
              mr.eval(PadicScalar::from_integer(p, i, padop::kMaxPrecision)), tbl[static_cast<std::size_t>(i)])
              .is_zero());
}

TEST_CASE("Mahler tail bounds for x^p over Q5") {
  const std::uint32_t p = 5;
  std::vector<PadicScalar> tbl;
  for (long long i = 0; i <= 25; ++i) {
    long long v = 1;
    for (int q = 0; q < 5; ++q) v *= i;
    tbl.push_back(PadicScalar::from_integer(p, v, padop::kMaxPrecision));
  }
  const MahlerSeries ms = MahlerSeries::from_samples(p, tbl);
  REQUIRE(ms.order() == 25);
  // x^5 is a degree-5 polynomial: coefficients above k = 5 vanish,
  // and a_5 = 5! has norm 1/5
  for (int k = 6; k <= 25; ++k) CHECK(ms.coeffs()[static_cast<std::size_t>(k)].is_zero());
  CHECK(ms.coeffs()[5].norm() == ExactPower::from_valuation(1));
  CHECK(ms.sup_norm() == ExactPower::one());

  Rng rng(0xfc05);
  for (int pt = 0; pt < 150; ++pt) {
    const PadicScalar x = random_integral(rng, p);
    PadicScalar direct = PadicScalar::one(p, padop::kMaxPrecision);
    for (int q = 0; q < 5; ++q) direct = direct * x;
    for (int kp = 0; kp <= 25; ++kp) {
      const ExactPower err =
          PadicScalar::dist(direct, ms.eval_truncated(x, kp));
      CHECK(err <= ms.tail_bound(kp));
    }
  }
}

TEST_CASE("spectral calculus agrees with direct polynomial evaluation") {
  const auto swap2 = from_ints(5, {{0, 1}, {1, 0}});
  const PPolynomial sq = PPolynomial::from_integers(5, {0, 0, 1});
  CHECK(PMatrix::dist(padop::funcalc_spectral(sq, swap2),
                      PMatrix::identity(5, 2))
            .is_zero());

  Rng rng(0xfc06);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t p = trial % 2 == 0 ? 5 : 7;
    const Planted pl = planted_symmetric(rng, p, static_cast<int>(rng.range(2, 4)), 1);
    const PPolynomial s = random_poly(rng, p, static_cast<int>(rng.range(1, 4)));
    const PMatrix via_spec = padop::funcalc_spectral(s, pl.a);
    const PMatrix via_horner = padop::poly_eval(s, pl.a);
    CHECK(PMatrix::dist(via_spec, via_horner).is_zero());
  }
}

TEST_CASE("spectral calculus applies Mahler series") {
  Rng rng(0xfc07);
  const std::uint32_t p = 5;
  // identity function as a sample table
  std::vector<PadicScalar> idt;
  for (long long i = 0; i <= 8; ++i)
    idt.push_back(PadicScalar::from_integer(p, i, padop::kMaxPrecision));
  const MahlerSeries id = MahlerSeries::from_samples(p, idt);
  for (int trial = 0; trial < 25; ++trial) {
    const Planted pl = planted_symmetric(rng, p, static_cast<int>(rng.range(2, 4)), 1);
    CHECK(PMatrix::dist(padop::funcalc_spectral(id, pl.a), pl.a).is_zero());
  }

  // norm bound: image norm never exceeds the coefficient sup
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<PadicScalar> tbl;
    for (int i = 0; i <= 6; ++i) tbl.push_back(random_integral(rng, p));
    const MahlerSeries f = MahlerSeries::from_samples(p, tbl);
    const Planted pl = planted_symmetric(rng, p, 3, 1);
    const PMatrix img = padop::funcalc_spectral(f, pl.a);
    CHECK(img.norm() <= f.sup_norm());
  }
}

TEST_CASE("spectral calculus rejects bad domains") {
  PMatrix big(5, 2, 2);
  big.at(0, 0) = PadicScalar::from_rational(5, 1, 5);
  big.at(1, 1) = PadicScalar::from_integer(5, 2);
  const PPolynomial id5 = PPolynomial::from_integers(5, {0, 1});
  CHECK(fails_with(errc::series_diverges,
                   [&] { padop::funcalc_spectral(id5, big); }));
  // eigenvalues upstairs: Mahler functions have no values there
  const auto ext = from_ints(5, {{1, 1}, {1, -1}});
  CHECK(fails_with(errc::spectrum_not_split,
                   [&] { padop::funcalc_spectral(id5, ext); }));
}

TEST_CASE("triangular route: literal factor product") {
  const std::uint32_t p = 5;
  const PPolynomial sq = PPolynomial::from_integers(p, {0, 0, 1});
  const PPolynomial id = PPolynomial::from_integers(p, {0, 1});

  // S = x reproduces A itself
  const auto a = from_ints(p, {{1, 2}, {3, 4}});
  CHECK(PMatrix::dist(padop::funcalc_triangular(id, a), a).is_zero());

  // monomials on diagonal matrices agree with plain evaluation
  const auto d = from_ints(p, {{2, 0}, {0, 15}});
  CHECK(PMatrix::dist(padop::funcalc_triangular(sq, d),
                      padop::poly_eval(sq, d))
            .is_zero());

  // hand-checked S = x^2 on [[1,2],[3,4]]: S(C) S(T) S(E) = [[1,4],[6,28]],
  // which differs from A^2 = [[7,10],[15,22]]
  const PMatrix tri = padop::funcalc_triangular(sq, a);
  CHECK(PMatrix::dist(tri, from_ints(p, {{1, 4}, {6, 28}})).is_zero());
  const PMatrix direct = padop::poly_eval(sq, a);
  CHECK(!PMatrix::dist(tri, direct).is_zero());
}

TEST_CASE("clamp maps everything into the unit ball") {
  Rng rng(0xfc08);
  for (const std::uint32_t p : {5u, 7u}) {
    for (std::int64_t v = -8; v <= 8; ++v) {
      for (int trial = 0; trial < 8; ++trial) {
        const PadicScalar t = random_unit(rng, p).shifted(v);
        const PadicScalar c = padop::clamp(t);
        CHECK(c.norm() <= ExactPower::one());
        if (v >= 0) {
          CHECK(PadicScalar::dist(c, t).is_zero());
        } else {
          // shell formula: scale by p^{2k-1} on |t| = p^k
          CHECK(PadicScalar::dist(c, t.shifted(-2 * v - 1)).is_zero());
          CHECK(c.valuation() == -v - 1);
        }
        CHECK(PadicScalar::dist(padop::clamp(c), c).is_zero());
      }
    }
  }
  // closed forms: 1/p lands on 1, p^{-2} lands on p
  const PadicScalar invp = PadicScalar::from_rational(5, 1, 5);
  CHECK(PadicScalar::dist(padop::clamp(invp), PadicScalar::one(5)).is_zero());
  const PadicScalar pm2 = PadicScalar::from_rational(5, 1, 25);
  CHECK(PadicScalar::dist(padop::clamp(pm2), PadicScalar::from_integer(5, 5)).is_zero());
  // zero states pass through or weaken to a unit-ball certificate
  const PadicScalar z = PadicScalar::zero(5);
  CHECK(padop::clamp(z).is_exact_zero());
  const PadicScalar zap = PadicScalar::zero_at_precision(5, 6);
  CHECK(padop::clamp(zap).zero_floor() == 6);
  const PadicScalar deep = PadicScalar::zero_at_precision(5, -3);
  CHECK(padop::clamp(deep).zero_floor() == 0);
}

TEST_CASE("clamp acts as the identity through the spectral calculus") {
  Rng rng(0xfc09);
  const std::uint32_t p = 5;
  std::vector<PadicScalar> tbl;
  for (long long i = 0; i <= 10; ++i)
    tbl.push_back(padop::clamp(PadicScalar::from_integer(p, i, padop::kMaxPrecision)));
  const MahlerSeries cl = MahlerSeries::from_samples(p, tbl);
  for (int trial = 0; trial < 20; ++trial) {
    const Planted pl = planted_symmetric(rng, p, static_cast<int>(rng.range(2, 4)), 1);
    CHECK(PMatrix::dist(padop::funcalc_spectral(cl, pl.a), pl.a).is_zero());
  }
}

TEST_CASE("operator roots") {
  // sqrt of diag(4, 9) over Q7 picks the canonical residues 2 and 3
  const auto d49 = from_ints(7, {{4, 0}, {0, 9}});
  const PMatrix r = padop::operator_root(d49, 2);
  CHECK(PMatrix::dist(r, from_ints(7, {{2, 0}, {0, 3}})).is_zero());

  // any root of the identity is the identity
  const PMatrix i3 = PMatrix::identity(5, 3);
  CHECK(PMatrix::dist(padop::operator_root(i3, 4), i3).is_zero());

  Rng rng(0xfc0a);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t p = trial % 2 == 0 ? 5 : 7;
    const int n = trial % 3 == 0 ? 3 : 2;
    const int sz = static_cast<int>(rng.range(2, 3));
    const Planted pl = planted_symmetric(rng, p, sz, 1, n);
    const PMatrix b = padop::operator_root(pl.a, n);

    PMatrix bn = PMatrix::identity(p, sz);
    for (int q = 0; q < n; ++q) bn = bn * b;
    CHECK(PMatrix::dist(bn, pl.a).is_zero());
    CHECK((b * pl.a - pl.a * b).is_zero());

    // independent membership certificate: interpolate the root choices over
    // the canonically ordered spectrum and compare q(A) with B
    std::vector<ExtScalar> lams;
    for (const PadicScalar& l : pl.eigs) lams.push_back(ExtScalar::embed(l));
    std::sort(lams.begin(), lams.end(), padop::canonical_less);
    PMatrix vand(p, sz, sz);
    PMatrix rhs(p, sz, 1);
    for (int i = 0; i < sz; ++i) {
      PadicScalar pw = PadicScalar::one(p, padop::kMaxPrecision);
      for (int j = 0; j < sz; ++j) {
        vand.at(i, j) = pw;
        pw = pw * lams[static_cast<std::size_t>(i)].a();
      }
      rhs.at(i, 0) = padop::padic_nth_root(lams[static_cast<std::size_t>(i)].a(), n);
    }
    const PMatrix qc = padop::solve_linear(vand, rhs);
    std::vector<PadicScalar> cs;
    for (int i = 0; i < sz; ++i) cs.push_back(qc.at(i, 0));
    CHECK(PMatrix::dist(PPolynomial(p, cs).eval(pl.a), b).is_zero());
  }

  // eigenvalues with no base-field root propagate the root error
  const auto nr = from_ints(5, {{2, 0}, {0, 3}});
  CHECK(fails_with(errc::no_residue_root, [&] { padop::operator_root(nr, 2); }));
}
