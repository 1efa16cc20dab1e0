#pragma once

#include <cstdint>
#include <string>

#include "padop/errors.hpp"

namespace padop {

// Exact magnitude of a p-adic quantity: either 0 or an exact power p^(q/2).
// Half-integer exponents appear for elements of ramified quadratic
// extensions; everything over Q_p itself has an integral exponent.
//
// Internally we store q = 2*log_p|x| so comparisons are plain integer
// comparisons and no rounding can ever sneak in.
class ExactPower {
 public:
  ExactPower() : zero_(true), twice_log_(0) {}

  static ExactPower zero() { return ExactPower(); }

  // |x| = p^{-v} for a value of valuation v.
  static ExactPower from_valuation(std::int64_t v) {
    return from_twice_log(-2 * v);
  }

  static ExactPower from_twice_log(std::int64_t twice_log) {
    ExactPower e;
    e.zero_ = false;
    e.twice_log_ = twice_log;
    return e;
  }

  static ExactPower one() { return from_twice_log(0); }

  bool is_zero() const { return zero_; }

  // 2*log_p of the magnitude; meaningless for zero.
  std::int64_t twice_log() const {
    if (zero_) fail(errc::domain_error, "twice_log of zero magnitude");
    return twice_log_;
  }

  bool is_integral() const { return zero_ || twice_log_ % 2 == 0; }

  // log_p of the magnitude, defined when integral.
  std::int64_t log() const {
    std::int64_t t = twice_log();
    if (t % 2 != 0) fail(errc::domain_error, "half-integral magnitude");
    return t / 2;
  }

  // Valuation of a nonzero value with this magnitude: -log().
  std::int64_t valuation() const { return -log(); }

  friend bool operator==(const ExactPower& a, const ExactPower& b) {
    if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
    return a.twice_log_ == b.twice_log_;
  }
  friend bool operator!=(const ExactPower& a, const ExactPower& b) {
    return !(a == b);
  }
  friend bool operator<(const ExactPower& a, const ExactPower& b) {
    if (a.zero_) return !b.zero_;
    if (b.zero_) return false;
    return a.twice_log_ < b.twice_log_;
  }
  friend bool operator<=(const ExactPower& a, const ExactPower& b) {
    return a == b || a < b;
  }
  friend bool operator>(const ExactPower& a, const ExactPower& b) {
    return b < a;
  }
  friend bool operator>=(const ExactPower& a, const ExactPower& b) {
    return b <= a;
  }

  friend ExactPower operator*(const ExactPower& a, const ExactPower& b) {
    if (a.zero_ || b.zero_) return zero();
    return from_twice_log(a.twice_log_ + b.twice_log_);
  }

  static ExactPower max(const ExactPower& a, const ExactPower& b) {
    return a < b ? b : a;
  }
  static ExactPower min(const ExactPower& a, const ExactPower& b) {
    return a < b ? a : b;
  }

  ExactPower pow(std::int64_t k) const {
    if (zero_) return zero();
    return from_twice_log(twice_log_ * k);
  }

  std::string to_string() const {
    if (zero_) return "0";
    if (twice_log_ == 0) return "1";
    if (twice_log_ % 2 == 0) return "p^" + std::to_string(twice_log_ / 2);
    return "p^(" + std::to_string(twice_log_) + "/2)";
  }

 private:
  bool zero_;
  std::int64_t twice_log_;
};

}  // namespace padop
