#include "padop/scalar.hpp"

#include <algorithm>
#include <sstream>

#include "limbs.hpp"

namespace padop {

using detail::LimbCfg;
using detail::Limbs;

namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_prime(std::uint32_t p) {
  thread_local std::uint32_t last_ok = 0;
  if (p == last_ok) return;
  if (!is_prime_u32(p))
    fail(errc::unsupported_prime, "p = " + std::to_string(p) + " is not prime");
  last_ok = p;
}

int check_digits_request(int digits) {
  if (digits < kMinPrecision || digits > kMaxPrecision)
    fail(errc::domain_error,
         "precision " + std::to_string(digits) + " outside [" +
             std::to_string(kMinPrecision) + ", " +
             std::to_string(kMaxPrecision) + "]");
  return digits;
}

}  // namespace

PadicScalar PadicScalar::zero(std::uint32_t p) {
  require_prime(p);
  PadicScalar x;
  x.prime_ = p;
  x.state_ = State::kExactZero;
  return x;
}

PadicScalar PadicScalar::zero_at_precision(std::uint32_t p,
                                           std::int64_t floor) {
  require_prime(p);
  PadicScalar x;
  x.prime_ = p;
  x.state_ = State::kZeroAtPrecision;
  x.val_ = floor;
  return x;
}

PadicScalar PadicScalar::make_nonzero(std::uint32_t p, std::int64_t v,
                                      int count,
                                      std::vector<std::uint32_t> limbs) {
  PadicScalar x;
  x.prime_ = p;
  x.state_ = State::kNonzero;
  x.val_ = v;
  x.count_ = count;
  x.limbs_ = std::move(limbs);
  return x;
}

PadicScalar PadicScalar::one(std::uint32_t p, int digits) {
  return from_integer(p, 1, digits);
}

PadicScalar PadicScalar::from_integer(std::uint32_t p, long long value,
                                      int digits) {
  require_prime(p);
  check_digits_request(digits);
  if (value == 0) return zero(p);
  bool neg = value < 0;
  std::uint64_t mag = neg ? ~static_cast<std::uint64_t>(value) + 1
                          : static_cast<std::uint64_t>(value);
  std::int64_t v = 0;
  while (mag % p == 0) {
    mag /= p;
    ++v;
  }
  LimbCfg cfg = detail::limb_cfg(p);
  Limbs m = detail::pack_u64(cfg, mag);
  detail::mod_window(cfg, m, digits);
  if (neg) {
    Limbs z(m.size(), 0u);
    m = detail::sub_window(cfg, z, m, digits);
  }
  return make_nonzero(p, v, digits, std::move(m));
}

PadicScalar PadicScalar::from_rational(std::uint32_t p, long long num,
                                       long long den, int digits) {
  if (den == 0) fail(errc::division_by_zero, "zero denominator");
  if (num == 0) return zero(p);
  return from_integer(p, num, digits) / from_integer(p, den, digits);
}

PadicScalar PadicScalar::from_digit_string(
    std::uint32_t p, std::int64_t valuation,
    const std::vector<std::uint32_t>& digits) {
  require_prime(p);
  if (digits.empty())
    fail(errc::malformed_input, "empty digit list");
  if (static_cast<int>(digits.size()) > kMaxPrecision)
    fail(errc::malformed_input, "digit list longer than max precision");
  if (digits[0] == 0)
    fail(errc::malformed_input, "leading digit must be nonzero");
  for (auto d : digits)
    if (d >= p) fail(errc::malformed_input, "digit out of range for base p");
  LimbCfg cfg = detail::limb_cfg(p);
  return make_nonzero(p, valuation, static_cast<int>(digits.size()),
                      detail::pack_digits(cfg, digits));
}

std::int64_t PadicScalar::valuation() const {
  if (state_ != State::kNonzero)
    fail(errc::domain_error, "valuation of a zero value");
  return val_;
}

std::int64_t PadicScalar::zero_floor() const {
  if (state_ != State::kZeroAtPrecision)
    fail(errc::domain_error, "zero_floor of a non-floor value");
  return val_;
}

int PadicScalar::significant_digits() const {
  if (state_ != State::kNonzero)
    fail(errc::domain_error, "significant_digits of a zero value");
  return count_;
}

std::uint32_t PadicScalar::leading_digit() const {
  if (state_ != State::kNonzero)
    fail(errc::domain_error, "leading_digit of a zero value");
  return limbs_[0] % prime_;
}

std::uint32_t PadicScalar::residue() const {
  if (is_zero()) return 0;
  if (val_ < 0) fail(errc::domain_error, "residue of a non-integral value");
  return val_ > 0 ? 0u : leading_digit();
}

std::vector<std::uint32_t> PadicScalar::digits() const {
  if (state_ != State::kNonzero) return {};
  return detail::unpack_digits(detail::limb_cfg(prime_), limbs_, count_);
}

ExactPower PadicScalar::norm() const {
  if (state_ != State::kNonzero) return ExactPower::zero();
  return ExactPower::from_valuation(val_);
}

void PadicScalar::require_prime_set() const {
  if (prime_ == 0)
    fail(errc::domain_error, "operation on a default-constructed scalar");
}

void PadicScalar::require_same_prime(const PadicScalar& a,
                                     const PadicScalar& b) {
  a.require_prime_set();
  b.require_prime_set();
  if (a.prime_ != b.prime_)
    fail(errc::prime_mismatch, "operands over Q_" + std::to_string(a.prime_) +
                                   " and Q_" + std::to_string(b.prime_));
}

PadicScalar PadicScalar::operator-() const {
  require_prime_set();
  if (state_ != State::kNonzero) return *this;
  LimbCfg cfg = detail::limb_cfg(prime_);
  Limbs z(limbs_.size(), 0u);
  return make_nonzero(prime_, val_, count_,
                      detail::sub_window(cfg, z, limbs_, count_));
}

PadicScalar PadicScalar::add_impl(const PadicScalar& a, const PadicScalar& b,
                                  bool negate_b, bool strict) {
  require_same_prime(a, b);
  const std::uint32_t p = a.prime_;
  if (a.state_ == State::kExactZero) return negate_b ? -b : b;
  if (b.state_ == State::kExactZero) return a;
  if (a.state_ == State::kZeroAtPrecision &&
      b.state_ == State::kZeroAtPrecision)
    return zero_at_precision(p, std::min(a.val_, b.val_));
  if (a.state_ == State::kZeroAtPrecision ||
      b.state_ == State::kZeroAtPrecision) {
    const PadicScalar& z = a.state_ == State::kZeroAtPrecision ? a : b;
    const PadicScalar& x = a.state_ == State::kZeroAtPrecision ? b : a;
    bool neg_x = negate_b && (&x == &b);
    std::int64_t floor = z.val_;
    if (x.val_ >= floor) return zero_at_precision(p, floor);
    PadicScalar r = neg_x ? -x : x;
    std::int64_t avail = floor - x.val_;
    if (avail < r.count_)
      r = r.truncated(static_cast<int>(avail));
    return r;
  }
  // both certified nonzero
  std::int64_t vmin = std::min(a.val_, b.val_);
  std::int64_t floor = std::min(a.val_ + a.count_, b.val_ + b.count_);
  int W = static_cast<int>(floor - vmin);
  LimbCfg cfg = detail::limb_cfg(p);
  Limbs wa = detail::to_window(cfg, a.limbs_, static_cast<int>(a.val_ - vmin), W);
  Limbs wb = detail::to_window(cfg, b.limbs_, static_cast<int>(b.val_ - vmin), W);
  Limbs sum = negate_b ? detail::sub_window(cfg, wa, wb, W)
                       : detail::add_window(cfg, wa, wb, W);
  int s = detail::lowest_nonzero_digit(cfg, sum);
  if (s < 0) {
    if (strict)
      fail(errc::precision_exhausted,
           "cancellation consumed the whole digit window");
    return zero_at_precision(p, floor);
  }
  if (s > 0) detail::shift_down_exact(cfg, sum, s);
  int count = W - s;
  detail::mod_window(cfg, sum, count);
  return make_nonzero(p, vmin + s, count, std::move(sum));
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
  return PadicScalar::add_impl(a, b, false, false);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) {
  return PadicScalar::add_impl(a, b, true, false);
}

PadicScalar PadicScalar::checked_add(const PadicScalar& a,
                                     const PadicScalar& b) {
  return add_impl(a, b, false, true);
}

PadicScalar PadicScalar::checked_sub(const PadicScalar& a,
                                     const PadicScalar& b) {
  return add_impl(a, b, true, true);
}

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
  PadicScalar::require_same_prime(a, b);
  const std::uint32_t p = a.prime_;
  using State = PadicScalar::State;
  if (a.state_ == State::kExactZero || b.state_ == State::kExactZero)
    return PadicScalar::zero(p);
  if (a.state_ == State::kZeroAtPrecision ||
      b.state_ == State::kZeroAtPrecision) {
    // |xy| <= p^{-(floor_a + v_b)} and symmetrically: floors add like
    // valuations, whichever role each operand plays.
    return PadicScalar::zero_at_precision(p, a.val_ + b.val_);
  }
  LimbCfg cfg = detail::limb_cfg(p);
  int count = std::min(a.count_, b.count_);
  return PadicScalar::make_nonzero(
      p, a.val_ + b.val_, count,
      detail::mul_mod(cfg, a.limbs_, b.limbs_, count));
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
  PadicScalar::require_same_prime(a, b);
  const std::uint32_t p = a.prime_;
  using State = PadicScalar::State;
  if (b.state_ == State::kExactZero)
    fail(errc::division_by_zero, "division by exact zero");
  if (b.state_ == State::kZeroAtPrecision)
    fail(errc::precision_exhausted, "divisor is zero at working precision");
  if (a.state_ == State::kExactZero) return PadicScalar::zero(p);
  if (a.state_ == State::kZeroAtPrecision)
    return PadicScalar::zero_at_precision(p, a.val_ - b.val_);
  LimbCfg cfg = detail::limb_cfg(p);
  int count = std::min(a.count_, b.count_);
  Limbs ib = detail::inv_mod(cfg, b.limbs_, count);
  return PadicScalar::make_nonzero(
      p, a.val_ - b.val_, count, detail::mul_mod(cfg, a.limbs_, ib, count));
}

PadicScalar PadicScalar::inverse() const {
  require_prime_set();
  if (state_ == State::kExactZero)
    fail(errc::division_by_zero, "inverse of exact zero");
  if (state_ == State::kZeroAtPrecision)
    fail(errc::precision_exhausted, "inverse of a zero-at-precision value");
  LimbCfg cfg = detail::limb_cfg(prime_);
  return make_nonzero(prime_, -val_, count_,
                      detail::inv_mod(cfg, limbs_, count_));
}

PadicScalar PadicScalar::truncated(int digits) const {
  require_prime_set();
  if (digits < 1) fail(errc::domain_error, "truncation to empty window");
  if (state_ != State::kNonzero) return *this;
  if (digits >= count_) return *this;
  PadicScalar r = *this;
  r.count_ = digits;
  detail::mod_window(detail::limb_cfg(prime_), r.limbs_, digits);
  return r;
}

PadicScalar PadicScalar::shifted(std::int64_t k) const {
  require_prime_set();
  if (state_ == State::kExactZero) return *this;
  PadicScalar r = *this;
  r.val_ += k;
  return r;
}

ExactPower PadicScalar::dist(const PadicScalar& a, const PadicScalar& b) {
  return (a - b).norm();
}

bool PadicScalar::same_representation(const PadicScalar& a,
                                      const PadicScalar& b) {
  return a.prime_ == b.prime_ && a.state_ == b.state_ && a.val_ == b.val_ &&
         a.count_ == b.count_ && a.limbs_ == b.limbs_;
}

std::string PadicScalar::to_string() const {
  if (prime_ == 0) return "<unset>";
  std::ostringstream os;
  switch (state_) {
    case State::kExactZero:
      os << "0";
      break;
    case State::kZeroAtPrecision:
      os << "O(" << prime_ << "^" << val_ << ")";
      break;
    case State::kNonzero: {
      os << prime_ << "^" << val_ << "*[";
      auto d = digits();
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) os << ",";
        os << d[i];
      }
      os << "]";
      break;
    }
  }
  return os.str();
}

}  // namespace padop
