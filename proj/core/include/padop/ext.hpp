#pragma once

#include <cstdint>
#include <string>

#include "padop/power.hpp"
#include "padop/scalar.hpp"

namespace padop {

// Square class of the adjoined discriminant: Q_p(sqrt(d)) for odd p has
// exactly the four choices d in {1, u, p, pu} up to squares, with u the
// least quadratic non-residue unit.
enum class QuadClass : std::uint8_t { kOne, kU, kP, kPU };

inline const char* quad_class_name(QuadClass d) {
  switch (d) {
    case QuadClass::kOne: return "1";
    case QuadClass::kU: return "u";
    case QuadClass::kP: return "p";
    case QuadClass::kPU: return "pu";
  }
  return "?";
}

// Least quadratic non-residue unit mod p (odd p).
std::uint32_t least_nonresidue(std::uint32_t p);

// The discriminant d as an element of Q_p.
PadicScalar quad_class_value(std::uint32_t p, QuadClass d, int digits);

// Element a + b*sqrt(d) of the quadratic extension Q_p(sqrt(d)).
//
// The class kOne plays the role of Q_p itself (b identically zero), so a
// single type covers both the base field and each of the three genuine
// quadratic extensions.  Elements of distinct genuine extensions do not mix.
class ExtScalar {
 public:
  ExtScalar() = default;

  static ExtScalar from_parts(QuadClass d, const PadicScalar& a,
                              const PadicScalar& b);
  static ExtScalar embed(const PadicScalar& a);  // class kOne
  static ExtScalar zero(std::uint32_t p);
  static ExtScalar one(std::uint32_t p, int digits = kDefaultPrecision);
  // sqrt(d) itself in class d.
  static ExtScalar root_of_class(std::uint32_t p, QuadClass d,
                                 int digits = kDefaultPrecision);

  QuadClass quad_class() const { return d_; }
  const PadicScalar& a() const { return a_; }
  const PadicScalar& b() const { return b_; }
  std::uint32_t prime() const { return a_.prime(); }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_exact_zero() const {
    return a_.is_exact_zero() && b_.is_exact_zero();
  }
  bool certified_nonzero() const {
    return a_.certified_nonzero() || b_.certified_nonzero();
  }
  // True when the element provably lies in Q_p (b is zero at precision).
  bool in_base_field() const { return b_.is_zero(); }

  // max(|a|, |b|*|sqrt(d)|); half-integral for ramified classes.
  ExactPower norm() const;
  // Certified upper bound on |x|, meaningful in every state.
  ExactPower norm_upper_bound() const;

  friend ExtScalar operator+(const ExtScalar& x, const ExtScalar& y);
  friend ExtScalar operator-(const ExtScalar& x, const ExtScalar& y);
  friend ExtScalar operator*(const ExtScalar& x, const ExtScalar& y);
  friend ExtScalar operator/(const ExtScalar& x, const ExtScalar& y);
  ExtScalar operator-() const;

  ExtScalar& operator+=(const ExtScalar& y) { return *this = *this + y; }
  ExtScalar& operator-=(const ExtScalar& y) { return *this = *this - y; }
  ExtScalar& operator*=(const ExtScalar& y) { return *this = *this * y; }
  ExtScalar& operator/=(const ExtScalar& y) { return *this = *this / y; }

  ExtScalar conj() const { return from_parts_unchecked(d_, a_, -b_); }
  ExtScalar inverse() const;

  static ExactPower dist(const ExtScalar& x, const ExtScalar& y);

  std::string to_string() const;

 private:
  static ExtScalar from_parts_unchecked(QuadClass d, PadicScalar a,
                                        PadicScalar b);
  static QuadClass merge_class(const ExtScalar& x, const ExtScalar& y);

  QuadClass d_ = QuadClass::kOne;
  PadicScalar a_;
  PadicScalar b_;
};

}  // namespace padop
