#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "padop/ldu.hpp"
#include "padop/matrix.hpp"
#include "padop/rng.hpp"

using padop::errc;
using padop::Error;
using padop::ExactPower;
using padop::ExtScalar;
using padop::Mat;
using padop::PadicScalar;
using padop::PMatrix;
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

PMatrix random_matrix(Rng& rng, std::uint32_t p, int n, std::int64_t vlo = 0,
                      std::int64_t vhi = 2) {
  PMatrix a(p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a.at(i, j) = random_unit(rng, p).shifted(rng.range(vlo, vhi));
  return a;
}

PMatrix from_ints(std::uint32_t p, const std::vector<std::vector<long long>>& v) {
  PMatrix a(p, static_cast<int>(v.size()), static_cast<int>(v[0].size()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      a.at(i, j) = PadicScalar::from_integer(p, v[i][j]);
  return a;
}

}  // namespace

TEST_CASE("identity is neutral and trace is additive on the diagonal") {
  Rng rng(0x3a7001);
  auto a = random_matrix(rng, 7, 4);
  auto i4 = PMatrix::identity(7, 4);
  CHECK(PMatrix::dist(i4 * a, a).is_zero());
  CHECK(PMatrix::dist(a * i4, a).is_zero());

  auto t = from_ints(5, {{1, 2}, {3, 4}});
  CHECK(PadicScalar::dist(t.trace(), PadicScalar::from_integer(5, 5)).is_zero());
}

TEST_CASE("closed-form 2x2 inverse") {
  auto a = from_ints(5, {{1, 2}, {3, 4}});
  auto inv = padop::inverse(a);
  CHECK(PadicScalar::dist(inv.at(0, 0), PadicScalar::from_integer(5, -2)).is_zero());
  CHECK(PadicScalar::dist(inv.at(0, 1), PadicScalar::one(5)).is_zero());
  CHECK(PadicScalar::dist(inv.at(1, 0), PadicScalar::from_rational(5, 3, 2)).is_zero());
  CHECK(PadicScalar::dist(inv.at(1, 1), PadicScalar::from_rational(5, -1, 2)).is_zero());
  CHECK(PMatrix::dist(a * inv, PMatrix::identity(5, 2)).is_zero());
}

TEST_CASE("norm is submultiplicative and transpose reverses products") {
  Rng rng(0x3a7002);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uint32_t p = rng.coin() ? 5 : 7;
    int n = static_cast<int>(rng.range(2, 4));
    auto a = random_matrix(rng, p, n, -2, 2);
    auto b = random_matrix(rng, p, n, -2, 2);
    auto ab = a * b;
    CHECK(ab.norm() <= a.norm() * b.norm());
    CHECK((a + b).norm() <= ExactPower::max(a.norm(), b.norm()));
    CHECK(PMatrix::dist(ab.transpose(), b.transpose() * a.transpose()).is_zero());
    CHECK(PMatrix::dist(a.transpose().transpose(), a).is_zero());
  }
}

TEST_CASE("operator norm is the max entry norm, witnessed by basis vectors") {
  auto a = from_ints(5, {{5, 1}, {25, 125}});
  CHECK(a.norm() == ExactPower::one());

  PMatrix z(7, 3, 3);
  CHECK(z.norm().is_zero());

  Rng rng(0x3a7003);
  for (int trial = 0; trial < 20; ++trial) {
    std::uint32_t p = rng.coin() ? 5 : 7;
    int n = static_cast<int>(rng.range(2, 5));
    auto a2 = random_matrix(rng, p, n, -2, 2);
    ExactPower norm = a2.norm();

    // column check: max_j |A e_j| equals the entry max
    ExactPower colmax = ExactPower::zero();
    for (int j = 0; j < n; ++j) {
      PMatrix ej(p, n, 1);
      ej.at(j, 0) = PadicScalar::one(p, padop::kMaxPrecision);
      colmax = ExactPower::max(colmax, (a2 * ej).norm());
    }
    CHECK(colmax == norm);

    // random unit vectors never exceed the norm
    for (int t = 0; t < 50; ++t) {
      PMatrix x(p, n, 1);
      for (int i = 0; i < n; ++i) x.at(i, 0) = random_unit(rng, p);
      CHECK((a2 * x).norm() <= norm);
    }
  }
}

TEST_CASE("transpose flips entries") {
  auto a = from_ints(7, {{0, 1}, {0, 0}});
  auto t = a.transpose();
  CHECK(t.at(0, 1).is_zero());
  CHECK(PadicScalar::dist(t.at(1, 0), PadicScalar::one(7)).is_zero());
}

TEST_CASE("symmetric splitting reconstructs as A1 - A2") {
  Rng rng(0x3a7004);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uint32_t p = rng.coin() ? 5 : 7;
    int n = static_cast<int>(rng.range(2, 4));
    auto a = random_matrix(rng, p, n, -1, 2);
    auto [a1, a2] = padop::symmetric_split(a);
    CHECK(a1.is_symmetric());
    CHECK(a2.is_antisymmetric());
    CHECK(PMatrix::dist(a1 - a2, a).is_zero());
  }
}

TEST_CASE("splitting a symmetric matrix leaves nothing antisymmetric") {
  auto a = from_ints(5, {{1, 2}, {2, 3}});
  auto [a1, a2] = padop::symmetric_split(a);
  CHECK(PMatrix::dist(a1, a).is_zero());
  CHECK(a2.is_zero());

  auto r = from_ints(5, {{0, 1}, {-1, 0}});
  auto [r1, r2] = padop::symmetric_split(r);
  CHECK(r1.is_zero());
  CHECK(PMatrix::dist(r2, from_ints(5, {{0, -1}, {1, 0}})).is_zero());
  CHECK(PMatrix::dist(r1 - r2, r).is_zero());
}

TEST_CASE("splitting requires an odd prime") {
  auto a = from_ints(2, {{1, 1}, {0, 1}});
  try {
    padop::symmetric_split(a);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::unsupported_prime);
  }
}

TEST_CASE("block symmetrization of an antisymmetric matrix") {
  auto a2 = from_ints(5, {{0, 1}, {-1, 0}});
  auto s = padop::block_symmetrize(a2);
  CHECK(s.rows() == 4);
  CHECK(s.is_symmetric());
  CHECK(s.norm() == a2.norm());
  CHECK(PMatrix::dist(s, s.transpose()).is_zero());

  // the rotation generator squares to -I
  auto i2 = from_ints(7, {{0, 1}, {-1, 0}});
  CHECK(PMatrix::dist(i2 * i2, -PMatrix::identity(7, 2)).is_zero());

  // 1x1 antisymmetric forces the entry to vanish
  PMatrix z1(5, 1, 1);
  auto sz = padop::block_symmetrize(z1);
  CHECK(sz.is_zero());
  try {
    padop::block_symmetrize(from_ints(5, {{3}}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_antisymmetric);
  }
}

TEST_CASE("triangular decomposition of the worked 2x2") {
  auto a = from_ints(5, {{1, 2}, {3, 4}});
  auto d = padop::ldu_decompose(a);
  CHECK(d.rank == 2);
  CHECK(d.row_perm == std::vector<int>{0, 1});
  CHECK(d.col_perm == std::vector<int>{0, 1});
  CHECK(PadicScalar::dist(d.C.at(1, 0), PadicScalar::from_integer(5, 3)).is_zero());
  CHECK(PadicScalar::dist(d.T.at(0, 0), PadicScalar::one(5)).is_zero());
  CHECK(PadicScalar::dist(d.T.at(1, 1), PadicScalar::from_integer(5, -2)).is_zero());
  CHECK(PadicScalar::dist(d.E.at(0, 1), PadicScalar::from_integer(5, 2)).is_zero());
  CHECK(PMatrix::dist(d.C * d.T * d.E, a).is_zero());
}

TEST_CASE("diagonal input sorts pivots by norm through permutations") {
  auto a = from_ints(5, {{25, 0, 0}, {0, 1, 0}, {0, 0, 5}});
  auto d = padop::ldu_decompose(a);
  CHECK(d.rank == 3);
  CHECK(PMatrix::dist(d.C, PMatrix::identity(5, 3)).is_zero());
  CHECK(PMatrix::dist(d.E, PMatrix::identity(5, 3)).is_zero());
  CHECK(PadicScalar::dist(d.T.at(0, 0), PadicScalar::one(5)).is_zero());
  CHECK(PadicScalar::dist(d.T.at(1, 1), PadicScalar::from_integer(5, 5)).is_zero());
  CHECK(PadicScalar::dist(d.T.at(2, 2), PadicScalar::from_integer(5, 25)).is_zero());
  CHECK(PMatrix::dist(padop::permuted_input(d, a), d.C * d.T * d.E).is_zero());
}

TEST_CASE("decomposition reconstructs random matrices with bounded factors") {
  Rng rng(0x3a7005);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uint32_t p = rng.coin() ? 5 : 7;
    int n = static_cast<int>(rng.range(2, 8));
    auto a = random_matrix(rng, p, n, 0, 2);
    auto d = padop::ldu_decompose(a);
    CHECK(PMatrix::dist(padop::permuted_input(d, a), d.C * d.T * d.E).is_zero());
    CHECK((d.C - PMatrix::identity(p, n)).norm() <= ExactPower::one());
    CHECK((d.E - PMatrix::identity(p, n)).norm() <= ExactPower::one());
    for (int i = 0; i + 1 < n; ++i) {
      if (d.T.at(i + 1, i + 1).is_zero()) continue;
      CHECK(d.T.at(i + 1, i + 1).norm() <= d.T.at(i, i).norm());
    }
  }
}

TEST_CASE("rank deficiency from exact zeros, exhaustion from cancelled ones") {
  auto a = from_ints(5, {{1, 0}, {0, 0}});
  auto d = padop::ldu_decompose(a);
  CHECK(d.rank == 1);
  CHECK(d.T.at(1, 1).is_exact_zero());
  CHECK(PMatrix::dist(padop::permuted_input(d, a), d.C * d.T * d.E).is_zero());

  PMatrix z(7, 2, 2);
  CHECK(padop::ldu_decompose(z).rank == 0);

  auto c = from_ints(5, {{1, 1}, {1, 1}});
  try {
    padop::ldu_decompose(c);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::precision_exhausted);
  }
}

TEST_CASE("solving returns exact-at-precision inverses") {
  Rng rng(0x3a7006);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t p = rng.coin() ? 5 : 7;
    int n = static_cast<int>(rng.range(2, 5));
    auto a = random_matrix(rng, p, n, 0, 1);
    auto inv = padop::inverse(a);
    CHECK(PMatrix::dist(a * inv, PMatrix::identity(p, n)).is_zero());
    CHECK(PMatrix::dist(inv * a, PMatrix::identity(p, n)).is_zero());

    PMatrix b(p, n, 1);
    for (int i = 0; i < n; ++i) b.at(i, 0) = random_unit(rng, p);
    auto x = padop::solve_linear(a, b);
    CHECK(PMatrix::dist(a * x, b).is_zero());
  }
}

TEST_CASE("singular versus exhausted solving") {
  try {
    padop::inverse(from_ints(5, {{1, 0}, {0, 0}}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::singular);
  }
  try {
    padop::inverse(from_ints(5, {{1, 1}, {1, 1}}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::precision_exhausted);
  }
}

TEST_CASE("extension matrices run through the same solver") {
  Rng rng(0x3a7007);
  Mat<ExtScalar> a(7, 2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      a.at(i, j) = ExtScalar::from_parts(QuadClass::kU, random_unit(rng, 7),
                                         random_unit(rng, 7));
  auto inv = padop::inverse(a);
  CHECK(Mat<ExtScalar>::dist(a * inv, Mat<ExtScalar>::identity(7, 2)).is_zero());
}

TEST_CASE("shape mismatches are rejected") {
  PMatrix a(5, 2, 3);
  PMatrix b(5, 2, 2);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(b * a * a, Error);
  CHECK_THROWS_AS(a.trace(), Error);
}
