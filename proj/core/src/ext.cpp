#include "padop/ext.hpp"

#include "limbs.hpp"

namespace padop {

std::uint32_t least_nonresidue(std::uint32_t p) {
  if (p == 2)
    fail(errc::unsupported_prime, "quadratic classes need an odd prime");
  for (std::uint32_t t = 2; t < p; ++t) {
    if (detail::modpow_u64(t, (p - 1) / 2, p) == p - 1) return t;
  }
  fail(errc::unsupported_prime, "no non-residue found (p not prime?)");
}

PadicScalar quad_class_value(std::uint32_t p, QuadClass d, int digits) {
  switch (d) {
    case QuadClass::kOne:
      return PadicScalar::one(p, digits);
    case QuadClass::kU:
      return PadicScalar::from_integer(p, least_nonresidue(p), digits);
    case QuadClass::kP:
      return PadicScalar::from_integer(p, p, digits);
    case QuadClass::kPU:
      return PadicScalar::from_integer(
          p, static_cast<long long>(p) * least_nonresidue(p), digits);
  }
  fail(errc::domain_error, "bad quadratic class");
}

ExtScalar ExtScalar::from_parts_unchecked(QuadClass d, PadicScalar a,
                                          PadicScalar b) {
  ExtScalar x;
  x.d_ = d;
  x.a_ = std::move(a);
  x.b_ = std::move(b);
  return x;
}

ExtScalar ExtScalar::from_parts(QuadClass d, const PadicScalar& a,
                                const PadicScalar& b) {
  if (a.prime() != b.prime())
    fail(errc::prime_mismatch, "extension components over different primes");
  if (a.prime() == 2 && d != QuadClass::kOne)
    fail(errc::unsupported_prime, "quadratic extensions restricted to odd p");
  if (d == QuadClass::kOne && !b.is_zero())
    fail(errc::domain_error, "class-1 element with nonzero sqrt coefficient");
  return from_parts_unchecked(d, a, b);
}

ExtScalar ExtScalar::embed(const PadicScalar& a) {
  return from_parts_unchecked(QuadClass::kOne, a, PadicScalar::zero(a.prime()));
}

ExtScalar ExtScalar::zero(std::uint32_t p) {
  return embed(PadicScalar::zero(p));
}

ExtScalar ExtScalar::one(std::uint32_t p, int digits) {
  return embed(PadicScalar::one(p, digits));
}

ExtScalar ExtScalar::root_of_class(std::uint32_t p, QuadClass d, int digits) {
  if (d == QuadClass::kOne) return one(p, digits);
  return from_parts(d, PadicScalar::zero(p), PadicScalar::one(p, digits));
}

ExactPower ExtScalar::norm() const {
  ExactPower na = a_.norm();
  ExactPower nb = b_.norm();
  if (!nb.is_zero()) {
    // |sqrt(d)| is 1 for unit classes and p^{-1/2} for ramified ones.
    if (d_ == QuadClass::kP || d_ == QuadClass::kPU)
      nb = ExactPower::from_twice_log(nb.twice_log() - 1);
  }
  return ExactPower::max(na, nb);
}

ExactPower ExtScalar::norm_upper_bound() const {
  ExactPower na = a_.norm_upper_bound();
  ExactPower nb = b_.norm_upper_bound();
  if (!nb.is_zero()) {
    if (d_ == QuadClass::kP || d_ == QuadClass::kPU)
      nb = ExactPower::from_twice_log(nb.twice_log() - 1);
  }
  return ExactPower::max(na, nb);
}

QuadClass ExtScalar::merge_class(const ExtScalar& x, const ExtScalar& y) {
  if (x.d_ == y.d_) return x.d_;
  if (x.d_ == QuadClass::kOne && x.b_.is_zero()) return y.d_;
  if (y.d_ == QuadClass::kOne && y.b_.is_zero()) return x.d_;
  fail(errc::domain_error, "mixing distinct quadratic extensions");
}

ExtScalar operator+(const ExtScalar& x, const ExtScalar& y) {
  QuadClass d = ExtScalar::merge_class(x, y);
  return ExtScalar::from_parts_unchecked(d, x.a_ + y.a_, x.b_ + y.b_);
}

ExtScalar operator-(const ExtScalar& x, const ExtScalar& y) {
  QuadClass d = ExtScalar::merge_class(x, y);
  return ExtScalar::from_parts_unchecked(d, x.a_ - y.a_, x.b_ - y.b_);
}

ExtScalar ExtScalar::operator-() const {
  return from_parts_unchecked(d_, -a_, -b_);
}

ExtScalar operator*(const ExtScalar& x, const ExtScalar& y) {
  QuadClass d = ExtScalar::merge_class(x, y);
  if (d == QuadClass::kOne)
    return ExtScalar::from_parts_unchecked(d, x.a_ * y.a_,
                                           PadicScalar::zero(x.prime()));
  // digits follow the operands; the class constant only needs to cover them
  PadicScalar dv = quad_class_value(x.prime(), d, kMaxPrecision);
  return ExtScalar::from_parts_unchecked(
      d, x.a_ * y.a_ + x.b_ * y.b_ * dv, x.a_ * y.b_ + x.b_ * y.a_);
}

ExtScalar ExtScalar::inverse() const {
  if (!certified_nonzero())
    fail(errc::division_by_zero, "inverse of a zero extension element");
  if (d_ == QuadClass::kOne)
    return from_parts_unchecked(d_, a_.inverse(), PadicScalar::zero(prime()));
  PadicScalar dv = quad_class_value(prime(), d_, kMaxPrecision);
  PadicScalar nf = a_ * a_ - b_ * b_ * dv;  // the norm form, anisotropic
  if (!nf.certified_nonzero())
    fail(errc::precision_exhausted, "norm form not certified nonzero");
  return from_parts_unchecked(d_, a_ / nf, -b_ / nf);
}

ExtScalar operator/(const ExtScalar& x, const ExtScalar& y) {
  return x * y.inverse();
}

ExactPower ExtScalar::dist(const ExtScalar& x, const ExtScalar& y) {
  return (x - y).norm();
}

std::string ExtScalar::to_string() const {
  if (d_ == QuadClass::kOne) return a_.to_string();
  return a_.to_string() + " + (" + b_.to_string() + ")*sqrt(" +
         quad_class_name(d_) + ")";
}

}  // namespace padop
