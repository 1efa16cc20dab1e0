#pragma once

// Packed base-p digit strings.  A mantissa with `count` significant digits is
// stored little-endian in limbs of base p^L, where L is the largest power
// with p^L < 2^31.  All routines work modulo p^W for an explicit window W;
// wraparound is the correct p-adic behaviour, so there is no sign handling
// anywhere.

#include <cassert>
#include <cstdint>
#include <vector>

namespace padop::detail {

struct LimbCfg {
  std::uint32_t p;
  int L;               // digits per limb
  std::uint64_t base;  // p^L
};

inline LimbCfg limb_cfg(std::uint32_t p) {
  LimbCfg cfg{p, 1, p};
  while (cfg.base * p < (std::uint64_t{1} << 31)) {
    cfg.base *= p;
    ++cfg.L;
  }
  return cfg;
}

using Limbs = std::vector<std::uint32_t>;

inline int limb_len(const LimbCfg& cfg, int count) {
  return (count + cfg.L - 1) / cfg.L;
}

inline std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Truncate to W digits (resize + mask the top limb).
inline void mod_window(const LimbCfg& cfg, Limbs& x, int W) {
  assert(W >= 1);
  int nl = limb_len(cfg, W);
  x.resize(static_cast<std::size_t>(nl), 0u);
  int top_digits = W - (nl - 1) * cfg.L;
  if (top_digits < cfg.L) {
    x[nl - 1] = static_cast<std::uint32_t>(
        x[nl - 1] % pow_u64(cfg.p, top_digits));
  }
}

// x *= p^s, growing the vector as needed.
inline void shift_up(const LimbCfg& cfg, Limbs& x, int s) {
  assert(s >= 0);
  int q = s / cfg.L, r = s % cfg.L;
  if (r > 0) {
    std::uint64_t m = pow_u64(cfg.p, r), carry = 0;
    for (auto& limb : x) {
      std::uint64_t t = static_cast<std::uint64_t>(limb) * m + carry;
      limb = static_cast<std::uint32_t>(t % cfg.base);
      carry = t / cfg.base;
    }
    if (carry) x.push_back(static_cast<std::uint32_t>(carry));
  }
  if (q > 0) x.insert(x.begin(), static_cast<std::size_t>(q), 0u);
}

// x /= p^s; the s low digits must be zero.
inline void shift_down_exact(const LimbCfg& cfg, Limbs& x, int s) {
  assert(s >= 0);
  int q = s / cfg.L, r = s % cfg.L;
  if (q > 0) {
    for (int i = 0; i < q; ++i) assert(x[static_cast<std::size_t>(i)] == 0);
    x.erase(x.begin(), x.begin() + q);
  }
  if (r > 0 && !x.empty()) {
    std::uint64_t d = pow_u64(cfg.p, r), rem = 0;
    for (std::size_t i = x.size(); i-- > 0;) {
      std::uint64_t cur = rem * cfg.base + x[i];
      x[i] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    assert(rem == 0);
  }
}

// Digit string of (x * p^offset) mod p^W, as limb_len(W) limbs.
inline Limbs to_window(const LimbCfg& cfg, const Limbs& x, int offset, int W) {
  Limbs r;
  if (offset >= W) {
    r.assign(static_cast<std::size_t>(limb_len(cfg, W)), 0u);
    return r;
  }
  r = x;
  mod_window(cfg, r, W - offset);
  if (offset > 0) shift_up(cfg, r, offset);
  mod_window(cfg, r, W);
  return r;
}

// (a + b) mod p^W; both inputs already limb_len(W) long.
inline Limbs add_window(const LimbCfg& cfg, const Limbs& a, const Limbs& b,
                        int W) {
  Limbs r(a.size());
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t t = static_cast<std::uint64_t>(a[i]) + b[i] + carry;
    r[i] = static_cast<std::uint32_t>(t % cfg.base);
    carry = t / cfg.base;
  }
  mod_window(cfg, r, W);
  return r;
}

// (a - b) mod p^W; both inputs already limb_len(W) long.
inline Limbs sub_window(const LimbCfg& cfg, const Limbs& a, const Limbs& b,
                        int W) {
  Limbs r(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t t = static_cast<std::int64_t>(a[i]) -
                     static_cast<std::int64_t>(b[i]) - borrow;
    if (t < 0) {
      t += static_cast<std::int64_t>(cfg.base);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = static_cast<std::uint32_t>(t);
  }
  mod_window(cfg, r, W);
  return r;
}

// (a * b) mod p^count.
inline Limbs mul_mod(const LimbCfg& cfg, const Limbs& a, const Limbs& b,
                     int count) {
  int nl = limb_len(cfg, count);
  Limbs r(static_cast<std::size_t>(nl));
  unsigned __int128 carry = 0;
  for (int k = 0; k < nl; ++k) {
    unsigned __int128 s = carry;
    int ilo = k + 1 - static_cast<int>(b.size());
    if (ilo < 0) ilo = 0;
    int ihi = k < static_cast<int>(a.size()) - 1
                  ? k
                  : static_cast<int>(a.size()) - 1;
    for (int i = ilo; i <= ihi; ++i) {
      s += static_cast<std::uint64_t>(a[static_cast<std::size_t>(i)]) *
           b[static_cast<std::size_t>(k - i)];
    }
    r[static_cast<std::size_t>(k)] =
        static_cast<std::uint32_t>(static_cast<std::uint64_t>(s % cfg.base));
    carry = s / cfg.base;
  }
  mod_window(cfg, r, count);
  return r;
}

// Index of the lowest nonzero digit, or -1 if the string is all zero.
inline int lowest_nonzero_digit(const LimbCfg& cfg, const Limbs& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) {
      std::uint32_t v = x[i];
      int j = 0;
      while (v % cfg.p == 0) {
        v /= cfg.p;
        ++j;
      }
      return static_cast<int>(i) * cfg.L + j;
    }
  }
  return -1;
}

inline bool all_zero(const Limbs& x) {
  for (auto limb : x)
    if (limb != 0) return false;
  return true;
}

inline std::uint64_t modpow_u64(std::uint64_t b, std::uint64_t e,
                                std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = (unsigned __int128)(r)*b % m;
    b = (unsigned __int128)(b)*b % m;
    e >>= 1;
  }
  return r;
}

// Inverse of a unit mantissa modulo p^count by Newton lifting.
inline Limbs inv_mod(const LimbCfg& cfg, const Limbs& a, int count) {
  std::uint32_t d0 = a.empty() ? 0 : a[0] % cfg.p;
  assert(d0 != 0);
  Limbs z{static_cast<std::uint32_t>(modpow_u64(d0, cfg.p - 2, cfg.p))};
  int cur = 1;
  while (cur < count) {
    cur = cur * 2 < count ? cur * 2 : count;
    Limbs aw = a;
    mod_window(cfg, aw, cur);
    Limbs t = mul_mod(cfg, aw, z, cur);           // a*z = 1 + O(p^prev)
    Limbs two(t.size(), 0u);
    two[0] = 2 % cfg.base;
    Limbs w = sub_window(cfg, two, t, cur);       // 2 - a*z
    if (cfg.p == 2 && cur >= cfg.L) {
      // base 2^L: the literal 2 packs fine either way; nothing special
    }
    z = mul_mod(cfg, z, w, cur);
  }
  mod_window(cfg, z, count);
  return z;
}

inline Limbs pack_digits(const LimbCfg& cfg,
                         const std::vector<std::uint32_t>& digits) {
  Limbs r(static_cast<std::size_t>(
      limb_len(cfg, static_cast<int>(digits.size()))));
  for (std::size_t i = 0; i < digits.size(); ++i) {
    std::size_t limb = i / static_cast<std::size_t>(cfg.L);
    int pos = static_cast<int>(i % static_cast<std::size_t>(cfg.L));
    r[limb] += static_cast<std::uint32_t>(digits[i] * pow_u64(cfg.p, pos));
  }
  return r;
}

inline std::vector<std::uint32_t> unpack_digits(const LimbCfg& cfg,
                                                const Limbs& x, int count) {
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::uint32_t limb = x[static_cast<std::size_t>(i / cfg.L)];
    digits[static_cast<std::size_t>(i)] =
        static_cast<std::uint32_t>(limb / pow_u64(cfg.p, i % cfg.L) % cfg.p);
  }
  return digits;
}

// Packs an unsigned 64-bit integer into limbs (unbounded window).
inline Limbs pack_u64(const LimbCfg& cfg, std::uint64_t v) {
  Limbs r;
  if (v == 0) r.push_back(0);
  while (v) {
    r.push_back(static_cast<std::uint32_t>(v % cfg.base));
    v /= cfg.base;
  }
  return r;
}

}  // namespace padop::detail
