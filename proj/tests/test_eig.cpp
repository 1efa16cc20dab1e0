#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "padop/charpoly.hpp"
#include "padop/eig.hpp"
#include "padop/matrix.hpp"
#include "padop/poly.hpp"
#include "padop/rng.hpp"
#include "padop/roots.hpp"

using padop::CharRoot;
using padop::EigDecomposition;
using padop::errc;
using padop::Error;
using padop::ExactPower;
using padop::ExtScalar;
using padop::Mat;
using padop::PadicScalar;
using padop::PMatrix;
using padop::PPolynomial;
using padop::QuadClass;
using padop::Rng;

namespace {

PadicScalar random_unit(Rng& rng, std::uint32_t p, int digits = 32) {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(digits));
  d[0] = static_cast<std::uint32_t>(rng.range(1, p - 1));
  for (std::size_t i = 1; i < d.size(); ++i)
    d[i] = static_cast<std::uint32_t>(rng.below(p));
  return PadicScalar::from_digit_string(p, 0, d);
}

PMatrix random_matrix(Rng& rng, std::uint32_t p, int n) {
  PMatrix a(p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a.at(i, j) = random_unit(rng, p).shifted(rng.range(0, 2));
  return a;
}

PMatrix from_ints(std::uint32_t p, const std::vector<std::vector<long long>>& v) {
  PMatrix a(p, static_cast<int>(v.size()), static_cast<int>(v[0].size()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      a.at(i, j) = PadicScalar::from_integer(p, v[i][j]);
  return a;
}

PadicScalar det_laplace(const PMatrix& m) {
  const int n = m.rows();
  if (n == 1) return m.at(0, 0);
  PadicScalar acc = PadicScalar::zero(m.prime());
  for (int i = 0; i < n; ++i) {
    PMatrix sub(m.prime(), n - 1, n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (int col = 1; col < n; ++col) sub.at(rr, col - 1) = m.at(r, col);
      ++rr;
    }
    const PadicScalar term = m.at(i, 0) * det_laplace(sub);
    acc = (i % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// det(tI - A) at an integer point, the quantity charpoly interpolates.
PadicScalar charpoly_point(const PMatrix& a, long long t) {
  PMatrix m(a.prime(), a.rows(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.rows(); ++j) {
      m.at(i, j) = -a.at(i, j);
      if (i == j)
        m.at(i, j) += PadicScalar::from_integer(a.prime(), t, padop::kMaxPrecision);
    }
  return det_laplace(m);
}

// Plane rotation with c = (1-t^2)/(1+t^2), s = 2t/(1+t^2), so c^2 + s^2 = 1.
PMatrix plane_rotation(std::uint32_t p, int n, int i, int j, long long t) {
  PMatrix g = PMatrix::identity(p, n);
  const long long den = 1 + t * t;
  g.at(i, i) = PadicScalar::from_rational(p, 1 - t * t, den, padop::kMaxPrecision);
  g.at(j, j) = g.at(i, i);
  g.at(i, j) = PadicScalar::from_rational(p, 2 * t, den, padop::kMaxPrecision);
  g.at(j, i) = -g.at(i, j);
  return g;
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

TEST_CASE("charpoly matches the expanded determinant at sample points") {
  Rng rng(0xe16001);
  for (const std::uint32_t p : {5u, 7u}) {
    for (int n = 1; n <= 4; ++n) {
      for (int trial = 0; trial < 8; ++trial) {
        const PMatrix a = random_matrix(rng, p, n);
        const PPolynomial f = padop::charpoly(a);
        CHECK(f.degree() == n);
        CHECK(PadicScalar::dist(f.coeff(n), PadicScalar::one(p)).is_zero());
        CHECK(PadicScalar::dist(f.coeff(n - 1), -a.trace()).is_zero());
        for (long long t = 0; t <= n; ++t) {
          const PadicScalar via_poly =
              f.eval(PadicScalar::from_integer(p, t, padop::kMaxPrecision));
          CHECK(PadicScalar::dist(via_poly, charpoly_point(a, t)).is_zero());
        }
      }
    }
  }
}

TEST_CASE("charpoly closed forms for small matrices") {
  const auto a = from_ints(5, {{1, 2}, {3, 4}});  // x^2 - 5x - 2
  const PPolynomial f = padop::charpoly(a);
  CHECK(PadicScalar::dist(f.coeff(0), PadicScalar::from_integer(5, -2)).is_zero());
  CHECK(PadicScalar::dist(f.coeff(1), PadicScalar::from_integer(5, -5)).is_zero());
  CHECK(PadicScalar::dist(f.coeff(2), PadicScalar::one(5)).is_zero());

  const auto b = from_ints(7, {{3}});
  const PPolynomial g = padop::charpoly(b);
  CHECK(g.degree() == 1);
  CHECK(PadicScalar::dist(g.coeff(0), PadicScalar::from_integer(7, -3)).is_zero());
}

TEST_CASE("Cayley-Hamilton: a matrix annihilates its own charpoly") {
  Rng rng(0xe16002);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t p = trial % 2 == 0 ? 5 : 7;
    const int n = static_cast<int>(rng.range(1, 4));
    const PMatrix a = random_matrix(rng, p, n);
    const PMatrix image = padop::charpoly(a).eval(a);
    CHECK(image.is_zero());
  }
}

TEST_CASE("char_roots recovers a triangular diagonal") {
  const auto a = from_ints(5, {{2, 7, 1}, {0, 3, 4}, {0, 0, 10}});
  const auto roots = padop::char_roots(a);
  REQUIRE(roots.size() == 3);
  // canonical order: units (residue 2 then 3) before the valuation-1 entry
  CHECK(roots[0].value.in_base_field());
  CHECK(PadicScalar::dist(roots[0].value.a(), PadicScalar::from_integer(5, 2)).is_zero());
  CHECK(PadicScalar::dist(roots[1].value.a(), PadicScalar::from_integer(5, 3)).is_zero());
  CHECK(PadicScalar::dist(roots[2].value.a(), PadicScalar::from_integer(5, 10)).is_zero());
  for (const auto& r : roots) CHECK(r.multiplicity == 1);
}

TEST_CASE("char_roots orders by magnitude then digits") {
  const auto a = from_ints(5, {{1, 0}, {0, 5}});
  const auto roots = padop::char_roots(a);
  REQUIRE(roots.size() == 2);
  CHECK(PadicScalar::dist(roots[0].value.a(), PadicScalar::one(5)).is_zero());
  CHECK(PadicScalar::dist(roots[1].value.a(), PadicScalar::from_integer(5, 5)).is_zero());

  const auto b = from_ints(5, {{0, 1}, {1, 0}});
  const auto pm = padop::char_roots(b);
  REQUIRE(pm.size() == 2);
  CHECK(PadicScalar::dist(pm[0].value.a(), PadicScalar::one(5)).is_zero());
  CHECK(PadicScalar::dist(pm[1].value.a(), PadicScalar::from_integer(5, -1)).is_zero());
}

TEST_CASE("char_roots lifts square roots that exist downstairs") {
  // x^2 - 2 over Q7; 2 = 3^2 mod 7, so both roots are plain scalars
  const auto a = from_ints(7, {{0, 1}, {2, 0}});
  const auto roots = padop::char_roots(a);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].value.in_base_field());
  CHECK(roots[1].value.in_base_field());
  CHECK(roots[0].value.a().leading_digit() == 3);
  CHECK(roots[1].value.a().leading_digit() == 4);
  const PadicScalar sq = roots[0].value.a() * roots[0].value.a();
  CHECK(PadicScalar::dist(sq, PadicScalar::from_integer(7, 2)).is_zero());
}

TEST_CASE("char_roots climbs to the unramified extension") {
  // x^2 - 3 over Q5; 3 is a non-residue, so the roots are pure sqrt(u) parts
  const auto a = from_ints(5, {{0, 1}, {3, 0}});
  const auto roots = padop::char_roots(a);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    CHECK(r.value.quad_class() == QuadClass::kU);
    CHECK(r.value.a().is_zero());
    CHECK(r.value.b().certified_nonzero());
    const ExtScalar sq = r.value * r.value;
    CHECK(sq.in_base_field());
    CHECK(PadicScalar::dist(sq.a(), PadicScalar::from_integer(5, 3)).is_zero());
  }
  CHECK(ExtScalar::dist(roots[0].value, -roots[1].value).is_zero());
}

TEST_CASE("char_roots climbs to a ramified extension") {
  // x^2 - 5 over Q5: eigenvalues of magnitude 5^(-1/2)
  const auto a = from_ints(5, {{0, 1}, {5, 0}});
  const auto roots = padop::char_roots(a);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    CHECK(r.value.quad_class() == QuadClass::kP);
    CHECK(r.value.norm().twice_log() == -1);
    const ExtScalar sq = r.value * r.value;
    CHECK(PadicScalar::dist(sq.a(), PadicScalar::from_integer(5, 5)).is_zero());
  }
}

TEST_CASE("char_roots counts exact zero eigenvalues") {
  const auto a = from_ints(5, {{0, 0}, {0, 2}});
  const auto roots = padop::char_roots(a);
  REQUIRE(roots.size() == 2);
  CHECK(PadicScalar::dist(roots[0].value.a(), PadicScalar::from_integer(5, 2)).is_zero());
  CHECK(roots[1].value.is_zero());
  CHECK(roots[1].multiplicity == 1);

  const auto nil = from_ints(5, {{0, 1}, {0, 0}});
  const auto nr = padop::char_roots(nil);
  REQUIRE(nr.size() == 1);
  CHECK(nr[0].value.is_zero());
  CHECK(nr[0].multiplicity == 2);
}

TEST_CASE("char_roots failure modes") {
  // cancellation leaves the determinant uncertified
  CHECK(fails_with(errc::precision_exhausted,
                   [] { padop::char_roots(from_ints(5, {{1, 1}, {1, 1}})); }));
  // (x-1)^2 has a doubled residue root
  CHECK(fails_with(errc::repeated_residue_roots,
                   [] { padop::char_roots(from_ints(5, {{1, 0}, {0, 1}})); }));
  // distinct eigenvalues 1 and 6 still collide in the residue field
  CHECK(fails_with(errc::repeated_residue_roots,
                   [] { padop::char_roots(from_ints(5, {{1, 0}, {0, 6}})); }));
  // x^3 - 5 wants a cube root of the uniformizer
  CHECK(fails_with(errc::spectrum_not_split, [] {
    padop::char_roots(from_ints(5, {{0, 0, 5}, {1, 0, 0}, {0, 1, 0}}));
  }));
  // x^3 + x + 1 is irreducible mod 5, roots only in the cubic extension
  CHECK(fails_with(errc::spectrum_not_split, [] {
    padop::char_roots(from_ints(5, {{0, 0, -1}, {1, 0, -1}, {0, 1, 0}}));
  }));
}

TEST_CASE("canonical eigenvalue order is a total preorder on distinct values") {
  const std::uint32_t p = 5;
  std::vector<ExtScalar> vals = {
      ExtScalar::zero(p),
      ExtScalar::embed(PadicScalar::from_integer(p, 5)),
      ExtScalar::embed(PadicScalar::from_integer(p, -1)),
      ExtScalar::embed(PadicScalar::one(p)),
      ExtScalar::root_of_class(p, QuadClass::kU),
  };
  std::sort(vals.begin(), vals.end(), padop::canonical_less);
  CHECK(PadicScalar::dist(vals[0].a(), PadicScalar::one(p)).is_zero());
  CHECK(PadicScalar::dist(vals[1].a(), PadicScalar::from_integer(p, -1)).is_zero());
  CHECK(vals[2].quad_class() == QuadClass::kU);   // same norm, later class
  CHECK(PadicScalar::dist(vals[3].a(), PadicScalar::from_integer(p, 5)).is_zero());
  CHECK(vals[4].is_zero());                        // zero sorts last
  for (std::size_t i = 0; i < vals.size(); ++i)
    CHECK_FALSE(padop::canonical_less(vals[i], vals[i]));
}

TEST_CASE("eig_symmetric on the swap matrix is isometric") {
  const auto a = from_ints(7, {{0, 1}, {1, 0}});
  const EigDecomposition dec = padop::eig_symmetric(a);
  REQUIRE(dec.eigenvalues.size() == 2);
  CHECK(PadicScalar::dist(dec.eigenvalues[0].a(), PadicScalar::one(7)).is_zero());
  CHECK(PadicScalar::dist(dec.eigenvalues[1].a(), PadicScalar::from_integer(7, -1)).is_zero());
  CHECK(dec.isometric);

  // rows are (1,1) and (1,-1) up to scale
  CHECK(ExtScalar::dist(dec.C.at(0, 0), dec.C.at(0, 1)).is_zero());
  CHECK(ExtScalar::dist(dec.C.at(1, 0), -dec.C.at(1, 1)).is_zero());

  const auto id = Mat<ExtScalar>::identity(7, 2);
  CHECK(Mat<ExtScalar>::dist(dec.C * dec.C.transpose(), id).is_zero());
  CHECK(Mat<ExtScalar>::dist(dec.Cinv * dec.C, id).is_zero());

  const auto rec = dec.Cinv * padop::eigenvalue_diagonal(dec) * dec.C;
  CHECK(Mat<ExtScalar>::dist(rec, padop::embed_matrix(a)).is_zero());
}

TEST_CASE("eig_symmetric with eigenvalues upstairs falls back gracefully") {
  // eigenvalues +-sqrt(2) over Q5 live in the unramified extension
  const auto a = from_ints(5, {{1, 1}, {1, -1}});
  const EigDecomposition dec = padop::eig_symmetric(a);
  REQUIRE(dec.eigenvalues.size() == 2);
  for (const auto& l : dec.eigenvalues) CHECK(l.quad_class() == QuadClass::kU);
  const auto rec = dec.Cinv * padop::eigenvalue_diagonal(dec) * dec.C;
  CHECK(Mat<ExtScalar>::dist(rec, padop::embed_matrix(a)).is_zero());
  if (dec.isometric) {
    const auto id = Mat<ExtScalar>::identity(5, 2);
    CHECK(Mat<ExtScalar>::dist(dec.C * dec.C.transpose(), id).is_zero());
  }
}

TEST_CASE("eig_symmetric with ramified eigenvalues") {
  // charpoly x^2 - 5: eigenvalues +-sqrt(5), half-integral magnitude
  const auto a = from_ints(5, {{1, 2}, {2, -1}});
  const EigDecomposition dec = padop::eig_symmetric(a);
  REQUIRE(dec.eigenvalues.size() == 2);
  for (const auto& l : dec.eigenvalues) {
    CHECK(l.quad_class() == QuadClass::kP);
    CHECK(l.norm().twice_log() == -1);
  }
  const auto rec = dec.Cinv * padop::eigenvalue_diagonal(dec) * dec.C;
  CHECK(Mat<ExtScalar>::dist(rec, padop::embed_matrix(a)).is_zero());
}

TEST_CASE("eig_symmetric failure modes") {
  CHECK(fails_with(errc::not_symmetric,
                   [] { padop::eig_symmetric(from_ints(5, {{0, 1}, {2, 0}})); }));
  CHECK(fails_with(errc::repeated_eigenvalues,
                   [] { padop::eig_symmetric(from_ints(5, {{0, 0}, {0, 0}})); }));
  CHECK(fails_with(errc::precision_exhausted,
                   [] { padop::eig_symmetric(from_ints(5, {{1, 1}, {1, 1}})); }));
  // one block needs sqrt(u), the other sqrt(p): no joint quadratic extension
  CHECK(fails_with(errc::spectrum_not_split, [] {
    padop::eig_symmetric(from_ints(
        5, {{1, 1, 0, 0}, {1, -1, 0, 0}, {0, 0, 1, 2}, {0, 0, 2, -1}}));
  }));
}

TEST_CASE("random rotation conjugates diagonalize isometrically") {
  Rng rng(0xe16003);
  const std::vector<long long> safe_t = {1, 4, 6, 9};  // 1 + t^2 is a unit at 5 and 7
  int trials = 0;
  int isometric_count = 0;
  while (trials < 200) {
    const std::uint32_t p = trials % 2 == 0 ? 5 : 7;
    const int n = static_cast<int>(rng.range(2, 5));

    // distinct (valuation, residue) pairs make a certified split spectrum
    std::set<std::pair<std::int64_t, std::uint32_t>> used;
    PMatrix d(p, n, n);
    for (int i = 0; i < n; ++i) {
      for (;;) {
        const PadicScalar cand = random_unit(rng, p).shifted(rng.range(0, 2));
        const std::pair<std::int64_t, std::uint32_t> key{cand.valuation(),
                                                         cand.leading_digit()};
        if (used.insert(key).second) {
          d.at(i, i) = cand;
          break;
        }
      }
    }

    PMatrix a = d;
    for (int k = 0; k < n; ++k) {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (i == j) j = (j + 1) % n;
      const PMatrix g = plane_rotation(
          p, n, std::min(i, j), std::max(i, j),
          safe_t[static_cast<std::size_t>(rng.below(safe_t.size()))]);
      a = g.transpose() * a * g;
    }
    ++trials;

    const EigDecomposition dec = padop::eig_symmetric(a);
    if (dec.isometric) ++isometric_count;

    // spectrum equals the planted diagonal
    std::vector<ExtScalar> expected;
    for (int i = 0; i < n; ++i) expected.push_back(ExtScalar::embed(d.at(i, i)));
    std::sort(expected.begin(), expected.end(), padop::canonical_less);
    REQUIRE(dec.eigenvalues.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
      CHECK(ExtScalar::dist(dec.eigenvalues[i], expected[i]).is_zero());

    const auto rec = dec.Cinv * padop::eigenvalue_diagonal(dec) * dec.C;
    CHECK(Mat<ExtScalar>::dist(rec, padop::embed_matrix(a)).is_zero());
    if (dec.isometric) {
      const auto id = Mat<ExtScalar>::identity(p, n);
      CHECK(Mat<ExtScalar>::dist(dec.C * dec.C.transpose(), id).is_zero());
    }
  }
  // rotations have unit rows, so the isometric branch should dominate
  CHECK(isometric_count > 150);
  MESSAGE("isometric rate: ", isometric_count, "/200");
}
