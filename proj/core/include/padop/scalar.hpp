#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padop/errors.hpp"
#include "padop/power.hpp"

namespace padop {

inline constexpr int kMinPrecision = 4;
inline constexpr int kMaxPrecision = 256;
inline constexpr int kDefaultPrecision = 32;

// Element of Q_p in capped-relative-precision form
//
//   x = p^v * (d_0 + d_1 p + ... + d_{count-1} p^{count-1}),   d_0 != 0,
//
// so the norm |x| = p^{-v} and the leading digit are always exact, and the
// mantissa is correct modulo p^{v+count}.  The digit string is stored packed
// into limbs of base p^L (largest L with p^L < 2^31), which keeps full-
// precision multiplication at three limb products for p in {5,7}, N = 32.
//
// Besides the exact zero there is a third state, "zero at precision": the
// result of a subtraction whose visible digit window cancelled completely.
// Such a value is known only to satisfy |x| <= p^{-floor}.  The arithmetic
// operators propagate it silently (that is what residual pipelines need),
// while checked_add / checked_sub raise PrecisionExhausted instead, so code
// that must certify a valuation (pivot selection, root starts) never
// consumes one by accident.
class PadicScalar {
 public:
  PadicScalar() = default;  // exact zero with unset prime; prime() == 0

  static PadicScalar zero(std::uint32_t p);
  static PadicScalar zero_at_precision(std::uint32_t p, std::int64_t floor);
  static PadicScalar one(std::uint32_t p, int digits = kDefaultPrecision);
  static PadicScalar from_integer(std::uint32_t p, long long value,
                                  int digits = kDefaultPrecision);
  static PadicScalar from_rational(std::uint32_t p, long long num,
                                   long long den,
                                   int digits = kDefaultPrecision);
  // Little-endian digit list with digits[0] != 0; rejects non-canonical input.
  static PadicScalar from_digit_string(std::uint32_t p, std::int64_t valuation,
                                       const std::vector<std::uint32_t>& digits);

  std::uint32_t prime() const { return prime_; }
  bool is_exact_zero() const { return state_ == State::kExactZero; }
  bool is_zero_at_precision() const {
    return state_ == State::kZeroAtPrecision;
  }
  bool is_zero() const { return state_ != State::kNonzero; }
  bool certified_nonzero() const { return state_ == State::kNonzero; }

  std::int64_t valuation() const;           // nonzero values only
  std::int64_t zero_floor() const;          // zero-at-precision values only
  int significant_digits() const;           // nonzero values only
  std::uint32_t leading_digit() const;      // d_0 of a nonzero value
  std::uint32_t residue() const;            // d_0 if v == 0, 0 if v > 0; error if v < 0
  std::vector<std::uint32_t> digits() const;

  ExactPower norm() const;
  // Certified upper bound on |x|, meaningful in every state: the floor bound
  // for a zero-at-precision value, the exact norm otherwise.
  ExactPower norm_upper_bound() const {
    if (state_ == State::kExactZero) return ExactPower::zero();
    return ExactPower::from_valuation(val_);
  }

  // Strict arithmetic: raises PrecisionExhausted when cancellation consumes
  // the whole visible window, instead of producing an uncertified zero.
  static PadicScalar checked_add(const PadicScalar& a, const PadicScalar& b);
  static PadicScalar checked_sub(const PadicScalar& a, const PadicScalar& b);

  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
  PadicScalar operator-() const;

  PadicScalar& operator+=(const PadicScalar& b) { return *this = *this + b; }
  PadicScalar& operator-=(const PadicScalar& b) { return *this = *this - b; }
  PadicScalar& operator*=(const PadicScalar& b) { return *this = *this * b; }
  PadicScalar& operator/=(const PadicScalar& b) { return *this = *this / b; }

  PadicScalar inverse() const;
  // Relative-precision cap: keep at most `digits` significant digits.
  PadicScalar truncated(int digits) const;
  // x * p^k, exact.
  PadicScalar shifted(std::int64_t k) const;
  // The unit part u of x = p^v u.
  PadicScalar unit_part() const { return shifted(-valuation()); }

  // Norm of the (lenient) difference; ExactPower::zero() means the two values
  // agree on their whole shared digit window.
  static ExactPower dist(const PadicScalar& a, const PadicScalar& b);
  // Exact structural equality of representations (state, valuation, digits).
  static bool same_representation(const PadicScalar& a, const PadicScalar& b);

  std::string to_string() const;

 private:
  enum class State : std::uint8_t { kExactZero, kZeroAtPrecision, kNonzero };

  static PadicScalar make_nonzero(std::uint32_t p, std::int64_t v,
                                  int count, std::vector<std::uint32_t> limbs);
  static PadicScalar add_impl(const PadicScalar& a, const PadicScalar& b,
                              bool negate_b, bool strict);
  static void require_same_prime(const PadicScalar& a, const PadicScalar& b);
  void require_prime_set() const;

  std::uint32_t prime_ = 0;
  State state_ = State::kExactZero;
  std::int64_t val_ = 0;  // valuation (nonzero) or floor (zero at precision)
  std::int32_t count_ = 0;
  std::vector<std::uint32_t> limbs_;
};

}  // namespace padop
