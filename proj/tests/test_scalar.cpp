#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padop/rng.hpp"
#include "padop/scalar.hpp"

using padop::errc;
using padop::Error;
using padop::ExactPower;
using padop::PadicScalar;
using padop::Rng;

namespace {

PadicScalar random_unit(Rng& rng, std::uint32_t p, int digits = 32) {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(digits));
  d[0] = static_cast<std::uint32_t>(rng.range(1, p - 1));
  for (std::size_t i = 1; i < d.size(); ++i)
    d[i] = static_cast<std::uint32_t>(rng.below(p));
  return PadicScalar::from_digit_string(p, 0, d);
}

PadicScalar random_scalar(Rng& rng, std::uint32_t p, std::int64_t vlo = -3,
                          std::int64_t vhi = 3) {
  return random_unit(rng, p).shifted(rng.range(vlo, vhi));
}

}  // namespace

TEST_CASE("integer construction round trips through digits") {
  auto x = PadicScalar::from_integer(7, 38);  // 38 = 3 + 5*7
  CHECK(x.valuation() == 0);
  auto d = x.digits();
  CHECK(d[0] == 3);
  CHECK(d[1] == 5);
  for (std::size_t i = 2; i < d.size(); ++i) CHECK(d[i] == 0);

  auto y = PadicScalar::from_integer(5, 75);  // 75 = 3 * 5^2
  CHECK(y.valuation() == 2);
  CHECK(y.leading_digit() == 3);
}

TEST_CASE("negative integers wrap to the complement digit string") {
  auto x = PadicScalar::from_integer(5, -1);
  auto d = x.digits();
  for (auto digit : d) CHECK(digit == 4);
  // -1 + 1 cancels the whole window
  auto s = x + PadicScalar::one(5);
  CHECK(s.is_zero_at_precision());
  CHECK(s.zero_floor() == 32);
}

TEST_CASE("carry propagation: 1 + (p-1) has valuation 1") {
  auto a = PadicScalar::one(5);
  auto b = PadicScalar::from_integer(5, 4);
  auto s = a + b;
  CHECK(s.valuation() == 1);
  CHECK(s.leading_digit() == 1);
}

TEST_CASE("norm is an exact power with |0| = 0") {
  auto p3 = PadicScalar::from_integer(5, 125);
  CHECK(p3.norm() == ExactPower::from_valuation(3));
  CHECK(p3.norm().valuation() == 3);
  auto inv_p = PadicScalar::from_rational(5, 1, 5);
  CHECK(inv_p.norm().valuation() == -1);
  CHECK(PadicScalar::zero(5).norm().is_zero());
  // p * p over Q_p: |p*p| = p^-2
  auto p1 = PadicScalar::from_integer(5, 5);
  CHECK((p1 * p1).norm() == ExactPower::from_valuation(2));
}

TEST_CASE("mul(p, 1/p) = 1 exactly") {
  auto p1 = PadicScalar::from_integer(7, 7);
  auto q = PadicScalar::from_rational(7, 1, 7);
  auto prod = p1 * q;
  CHECK(prod.valuation() == 0);
  CHECK(PadicScalar::dist(prod, PadicScalar::one(7)).is_zero());
}

TEST_CASE("division undoes multiplication on random values") {
  Rng rng(2026);
  for (int p : {5, 7}) {
    for (int it = 0; it < 200; ++it) {
      auto a = random_scalar(rng, static_cast<std::uint32_t>(p));
      auto b = random_scalar(rng, static_cast<std::uint32_t>(p));
      auto q = (a * b) / b;
      CHECK(PadicScalar::dist(q, a).is_zero());
    }
  }
}

TEST_CASE("inverse via Newton agrees with division") {
  Rng rng(77);
  for (int it = 0; it < 100; ++it) {
    auto a = random_scalar(rng, 7);
    auto inv = a.inverse();
    CHECK(PadicScalar::dist(a * inv, PadicScalar::one(7)).is_zero());
  }
}

TEST_CASE("ultrametric inequality holds on 10^4 random pairs") {
  Rng rng(424242);
  int sharp = 0;
  for (int it = 0; it < 10000; ++it) {
    std::uint32_t p = rng.coin() ? 5 : 7;
    auto a = random_scalar(rng, p, -4, 4);
    auto b = random_scalar(rng, p, -4, 4);
    auto s = a + b;
    auto bound = ExactPower::max(a.norm(), b.norm());
    CHECK(s.norm() <= bound);
    if (a.norm() != b.norm()) {
      // sharpness when the valuations differ
      CHECK(s.norm() == bound);
      ++sharp;
    }
  }
  CHECK(sharp > 0);
}

TEST_CASE("norm multiplicativity on 10^4 random pairs") {
  Rng rng(99);
  for (int it = 0; it < 10000; ++it) {
    std::uint32_t p = rng.coin() ? 5 : 7;
    auto a = random_scalar(rng, p, -4, 4);
    auto b = random_scalar(rng, p, -4, 4);
    CHECK((a * b).norm() == a.norm() * b.norm());
  }
}

TEST_CASE("cancellation: strict subtraction of equal values raises") {
  auto a = PadicScalar::from_integer(5, 38);
  CHECK_THROWS_AS((void)PadicScalar::checked_sub(a, a), Error);
  try {
    (void)PadicScalar::checked_sub(a, a);
  } catch (const Error& e) {
    CHECK(e.code() == errc::precision_exhausted);
  }
}

TEST_CASE("cancellation: lenient subtraction yields a floor, not a lie") {
  auto a = PadicScalar::from_integer(5, 38);
  auto d = a - a;
  CHECK(d.is_zero_at_precision());
  CHECK(d.zero_floor() == 32);
  CHECK(d.norm().is_zero());
  CHECK(!d.certified_nonzero());
}

TEST_CASE("partial cancellation recomputes the exact valuation") {
  // (1 + p^5) - 1 = p^5 with 32-5 digits left
  auto one = PadicScalar::one(5);
  std::vector<std::uint32_t> d(32, 0);
  d[0] = 1;
  d[5] = 1;
  auto x = PadicScalar::from_digit_string(5, 0, d);
  auto diff = x - one;
  CHECK(diff.valuation() == 5);
  CHECK(diff.significant_digits() == 27);
  CHECK(diff.leading_digit() == 1);
}

TEST_CASE("propagated precision shrinks by the cancellation depth") {
  Rng rng(5150);
  for (int it = 0; it < 500; ++it) {
    auto a = random_unit(rng, 7);
    auto b = random_unit(rng, 7);
    auto s = a - b;
    if (s.certified_nonzero()) {
      CHECK(s.significant_digits() == 32 - s.valuation());
    }
  }
}

TEST_CASE("mixed-precision operands floor at the weaker window") {
  auto wide = PadicScalar::one(5);                    // 32 digits
  auto narrow = PadicScalar::from_integer(5, 2, 8);   // 8 digits
  auto s = wide + narrow;
  CHECK(s.significant_digits() == 8);
  auto prod = wide * narrow;
  CHECK(prod.significant_digits() == 8);
}

TEST_CASE("division by zero states") {
  auto x = PadicScalar::from_integer(7, 3);
  CHECK_THROWS_AS((void)(x / PadicScalar::zero(7)), Error);
  auto zap = PadicScalar::zero_at_precision(7, 32);
  try {
    (void)(x / zap);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::precision_exhausted);
  }
}

TEST_CASE("prime mismatch is rejected") {
  auto a = PadicScalar::one(5);
  auto b = PadicScalar::one(7);
  CHECK_THROWS_AS((void)(a + b), Error);
}

TEST_CASE("non-prime base is rejected") {
  CHECK_THROWS_AS((void)PadicScalar::from_integer(6, 1), Error);
  CHECK_THROWS_AS((void)PadicScalar::from_integer(1, 1), Error);
}

TEST_CASE("p = 2 arithmetic works (only root-taking is restricted)") {
  auto a = PadicScalar::from_integer(2, 6);
  CHECK(a.valuation() == 1);
  auto b = PadicScalar::from_rational(2, 1, 3);
  CHECK(PadicScalar::dist(a * b, PadicScalar::from_integer(2, 2)).is_zero());
}

TEST_CASE("truncation caps relative precision") {
  auto x = PadicScalar::from_rational(7, 1, 3);
  auto t = x.truncated(10);
  CHECK(t.significant_digits() == 10);
  // indistinguishable inside the 10-digit shared window
  CHECK(PadicScalar::dist(x, t).is_zero());
}

TEST_CASE("shifted scales by exact powers of p") {
  auto x = PadicScalar::from_integer(5, 3);
  auto y = x.shifted(-2);
  CHECK(y.valuation() == -2);
  CHECK(y.norm().valuation() == -2);
  CHECK(PadicScalar::dist(y.shifted(2), x).is_zero());
}

TEST_CASE("rational construction: 1/3 times 3 is 1") {
  for (int p : {5, 7}) {
    auto third = PadicScalar::from_rational(static_cast<std::uint32_t>(p), 1, 3);
    auto three = PadicScalar::from_integer(static_cast<std::uint32_t>(p), 3);
    CHECK(PadicScalar::dist(third * three,
                            PadicScalar::one(static_cast<std::uint32_t>(p)))
              .is_zero());
  }
}

TEST_CASE("associativity and distributivity hold at precision") {
  Rng rng(31337);
  for (int it = 0; it < 300; ++it) {
    auto a = random_scalar(rng, 7, -2, 2);
    auto b = random_scalar(rng, 7, -2, 2);
    auto c = random_scalar(rng, 7, -2, 2);
    CHECK(PadicScalar::dist((a + b) + c, a + (b + c)).is_zero());
    CHECK(PadicScalar::dist((a * b) * c, a * (b * c)).is_zero());
    auto lhs = a * (b + c);
    auto rhs = a * b + a * c;
    CHECK(PadicScalar::dist(lhs, rhs).is_zero());
  }
}
