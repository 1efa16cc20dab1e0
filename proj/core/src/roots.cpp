#include "padop/roots.hpp"

#include <cstdint>

#include "limbs.hpp"

namespace padop {

namespace {

// t^n by binary exponentiation, n >= 1
PadicScalar scalar_pow(const PadicScalar& t, int n) {
  PadicScalar acc = PadicScalar::one(t.prime(), t.significant_digits());
  PadicScalar base = t;
  int e = n;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

}  // namespace

bool is_quadratic_residue(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) return true;
  if (p == 2) return true;
  return detail::modpow_u64(a, (p - 1) / 2, p) == 1;
}

std::uint32_t residue_sqrt(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (!is_quadratic_residue(a, p))
    fail(errc::no_residue_root, "not a quadratic residue");

  std::uint32_t r;
  if (p % 4 == 3) {
    r = static_cast<std::uint32_t>(detail::modpow_u64(a, (p + 1) / 4, p));
  } else {
    // Tonelli-Shanks: p - 1 = q * 2^s with q odd
    std::uint32_t q = p - 1, s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    std::uint32_t z = 2;
    while (detail::modpow_u64(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = detail::modpow_u64(z, q, p);
    std::uint64_t t = detail::modpow_u64(a, q, p);
    std::uint64_t rr = detail::modpow_u64(a, (q + 1) / 2, p);
    while (t != 1) {
      std::uint64_t t2 = t;
      std::uint64_t i = 0;
      while (t2 != 1) {
        t2 = t2 * t2 % p;
        ++i;
      }
      std::uint64_t b = c;
      for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = b * b % p;
      m = i;
      c = b * b % p;
      t = t * c % p;
      rr = rr * b % p;
    }
    r = static_cast<std::uint32_t>(rr);
  }
  // both roots are r and p - r; pick the one in [1, (p-1)/2]
  return r <= (p - 1) / 2 ? r : p - r;
}

PadicScalar hensel_sqrt_unit(const PadicScalar& u) {
  std::uint32_t p = u.prime();
  if (p == 2) fail(errc::unsupported_prime, "square roots need an odd prime");
  if (!u.certified_nonzero())
    fail(errc::precision_exhausted, "square root of an uncertified zero");
  if (u.valuation() != 0)
    fail(errc::domain_error, "hensel_sqrt_unit expects a unit");
  std::uint32_t t0 = residue_sqrt(u.leading_digit(), p);

  int digits = u.significant_digits();
  PadicScalar t = PadicScalar::from_integer(p, t0, digits);
  PadicScalar half = PadicScalar::from_rational(p, 1, 2, digits);
  for (int it = 0; it < 64; ++it) {
    PadicScalar next = (t + u / t) * half;
    if (PadicScalar::same_representation(next, t)) break;
    t = next;
  }
  if (t.leading_digit() > (p - 1) / 2) t = -t;
  return t;
}

ExtScalar padic_sqrt(const PadicScalar& x) {
  std::uint32_t p = x.prime();
  if (p == 2) fail(errc::unsupported_prime, "square roots need an odd prime");
  if (x.is_exact_zero()) return ExtScalar::zero(p);
  if (!x.certified_nonzero())
    fail(errc::precision_exhausted, "square root of an uncertified zero");

  std::int64_t v = x.valuation();
  PadicScalar u = x.unit_part();
  int digits = u.significant_digits();
  bool qr = is_quadratic_residue(u.leading_digit(), p);
  bool even = (v % 2) == 0;
  // floor division for odd negative valuations
  std::int64_t h = (v - (even ? 0 : 1)) / 2;

  if (even && qr)
    return ExtScalar::embed(hensel_sqrt_unit(u).shifted(h));

  PadicScalar body =
      qr ? u
         : u / PadicScalar::from_integer(p, least_nonresidue(p), digits);
  PadicScalar b = hensel_sqrt_unit(body).shifted(h);
  QuadClass d = even ? QuadClass::kU : (qr ? QuadClass::kP : QuadClass::kPU);
  return ExtScalar::from_parts(d, PadicScalar::zero(p), b);
}

PadicScalar padic_nth_root(const PadicScalar& x, int n) {
  std::uint32_t p = x.prime();
  if (n <= 0) fail(errc::domain_error, "root index must be positive");
  if (n == 1) return x;
  if (p == 2) fail(errc::unsupported_prime, "n-th roots need an odd prime");
  if (n % static_cast<int>(p) == 0)
    fail(errc::ramified_case, "root index divisible by the prime");
  if (x.is_exact_zero()) return x;
  if (!x.certified_nonzero())
    fail(errc::precision_exhausted, "n-th root of an uncertified zero");

  std::int64_t v = x.valuation();
  if (v % n != 0)
    fail(errc::no_residue_root, "valuation not divisible by the root index");

  PadicScalar u = x.unit_part();
  int digits = u.significant_digits();
  std::uint32_t d0 = u.leading_digit();
  std::uint32_t t0 = 0;
  for (std::uint32_t t = 1; t < p; ++t) {
    if (detail::modpow_u64(t, static_cast<std::uint64_t>(n), p) == d0) {
      t0 = t;
      break;  // least residue root is the canonical one
    }
  }
  if (t0 == 0) fail(errc::no_residue_root, "leading digit has no n-th root");

  PadicScalar t = PadicScalar::from_integer(p, t0, digits);
  PadicScalar nn = PadicScalar::from_integer(p, n, digits);
  for (int it = 0; it < 64; ++it) {
    PadicScalar next = t - (scalar_pow(t, n) - u) / (nn * scalar_pow(t, n - 1));
    if (PadicScalar::same_representation(next, t)) break;
    t = next;
  }
  return t.shifted(v / n);
}

std::optional<ExtScalar> ext_sqrt(const ExtScalar& x) {
  std::uint32_t p = x.prime();
  if (x.is_zero()) return ExtScalar::zero(p);

  if (x.in_base_field()) {
    ExtScalar r = padic_sqrt(x.a());
    if (r.quad_class() == QuadClass::kOne) return r;
    if (x.quad_class() == QuadClass::kOne) return std::nullopt;
    // a = t^2 d puts the root at t*sqrt(d) inside the same extension
    PadicScalar dv = quad_class_value(p, x.quad_class(), kMaxPrecision);
    ExtScalar t = padic_sqrt(x.a() / dv);
    if (t.quad_class() != QuadClass::kOne) return std::nullopt;
    return ExtScalar::from_parts(x.quad_class(), PadicScalar::zero(p), t.a());
  }

  // (s + t sqrt(d))^2 = x forces s^2 to be a root of Y^2 - aY + b^2 d / 4,
  // so s^2 = (a +/- sqrt(a^2 - b^2 d)) / 2 must be a square in Q_p.
  PadicScalar dv = quad_class_value(p, x.quad_class(), kMaxPrecision);
  PadicScalar nf = x.a() * x.a() - x.b() * x.b() * dv;
  if (!nf.certified_nonzero())
    fail(errc::precision_exhausted, "norm form not certified nonzero");
  ExtScalar nr = padic_sqrt(nf);
  if (nr.quad_class() != QuadClass::kOne) return std::nullopt;

  PadicScalar r = nr.a();
  PadicScalar two = PadicScalar::from_integer(p, 2, kMaxPrecision);
  for (int sign = 0; sign < 2; ++sign) {
    PadicScalar s2 = (sign == 0 ? x.a() + r : x.a() - r) / two;
    if (!s2.certified_nonzero()) continue;
    ExtScalar sr = padic_sqrt(s2);
    if (sr.quad_class() != QuadClass::kOne) continue;
    PadicScalar s = sr.a();
    PadicScalar t = x.b() / (two * s);
    return ExtScalar::from_parts(x.quad_class(), s, t);
  }
  return std::nullopt;
}

}  // namespace padop
