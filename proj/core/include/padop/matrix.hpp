#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "padop/errors.hpp"
#include "padop/ext.hpp"
#include "padop/power.hpp"
#include "padop/scalar.hpp"

namespace padop {

namespace detail {

template <typename S>
S make_scalar(std::uint32_t p, long long v) {
  if constexpr (std::is_same_v<S, PadicScalar>) {
    return PadicScalar::from_integer(p, v, kMaxPrecision);
  } else {
    return ExtScalar::embed(PadicScalar::from_integer(p, v, kMaxPrecision));
  }
}

}  // namespace detail

// Dense matrix over PadicScalar or ExtScalar, row-major.  Vectors are n-by-1
// matrices.  The operator norm on c_0 with the sup norm is the max entry norm.
template <typename S>
class Mat {
 public:
  Mat() = default;

  Mat(std::uint32_t p, int rows, int cols)
      : p_(p), rows_(rows), cols_(cols),
        entries_(static_cast<std::size_t>(rows) * cols, S::zero(p)) {
    if (rows < 0 || cols < 0) fail(errc::domain_error, "negative dimension");
  }

  static Mat identity(std::uint32_t p, int n, int digits = kMaxPrecision) {
    Mat m(p, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = S::one(p, digits);
    return m;
  }

  std::uint32_t prime() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  S& at(int i, int j) {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const S& at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  Mat transpose() const {
    Mat t(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  S trace() const {
    if (!is_square()) fail(errc::dimension_mismatch, "trace of a non-square");
    S acc = S::zero(p_);
    for (int i = 0; i < rows_; ++i) acc += at(i, i);
    return acc;
  }

  ExactPower norm() const {
    ExactPower m = ExactPower::zero();
    for (const S& e : entries_) m = ExactPower::max(m, e.norm());
    return m;
  }

  static ExactPower dist(const Mat& x, const Mat& y) { return (x - y).norm(); }

  bool is_zero() const {
    for (const S& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (!S::dist(at(i, j), at(j, i)).is_zero()) return false;
    return true;
  }

  bool is_antisymmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i; j < cols_; ++j)
        if (!S::dist(at(i, j), -at(j, i)).is_zero()) return false;
    return true;
  }

  Mat scaled(const S& c) const {
    Mat r(p_, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      r.entries_[k] = entries_[k] * c;
    return r;
  }

  Mat operator-() const {
    Mat r(p_, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      r.entries_[k] = -entries_[k];
    return r;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    require_same_shape(x, y);
    Mat r(x.p_, x.rows_, x.cols_);
    for (std::size_t k = 0; k < x.entries_.size(); ++k)
      r.entries_[k] = x.entries_[k] + y.entries_[k];
    return r;
  }

  friend Mat operator-(const Mat& x, const Mat& y) {
    require_same_shape(x, y);
    Mat r(x.p_, x.rows_, x.cols_);
    for (std::size_t k = 0; k < x.entries_.size(); ++k)
      r.entries_[k] = x.entries_[k] - y.entries_[k];
    return r;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols_ != y.rows_)
      fail(errc::dimension_mismatch, "inner dimensions differ");
    Mat r(x.p_, x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int j = 0; j < y.cols_; ++j) {
        S acc = S::zero(x.p_);
        for (int k = 0; k < x.cols_; ++k) acc += x.at(i, k) * y.at(k, j);
        r.at(i, j) = acc;
      }
    return r;
  }

  Mat& operator+=(const Mat& y) { return *this = *this + y; }
  Mat& operator-=(const Mat& y) { return *this = *this - y; }
  Mat& operator*=(const Mat& y) { return *this = *this * y; }

 private:
  static void require_same_shape(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      fail(errc::dimension_mismatch, "matrix shapes differ");
  }

  std::uint32_t p_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> entries_;
};

using PMatrix = Mat<PadicScalar>;
using EMatrix = Mat<ExtScalar>;

// A = A1 - A2 with A1 symmetric and A2 antisymmetric (odd p: divides by 2).
template <typename S>
std::pair<Mat<S>, Mat<S>> symmetric_split(const Mat<S>& a) {
  if (a.prime() == 2)
    fail(errc::unsupported_prime, "symmetric splitting divides by 2");
  if (!a.is_square())
    fail(errc::dimension_mismatch, "symmetric splitting needs a square");
  S half = S::one(a.prime(), kMaxPrecision) /
           detail::make_scalar<S>(a.prime(), 2);
  Mat<S> t = a.transpose();
  return {(t + a).scaled(half), (t - a).scaled(half)};
}

// Embeds an antisymmetric block as the symmetric [[0, A2], [-A2, 0]].
template <typename S>
Mat<S> block_symmetrize(const Mat<S>& a2) {
  if (!a2.is_square() || !a2.is_antisymmetric())
    fail(errc::not_antisymmetric, "block symmetrization needs A^t = -A");
  int n = a2.rows();
  Mat<S> r(a2.prime(), 2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      r.at(i, n + j) = a2.at(i, j);
      r.at(n + i, j) = -a2.at(i, j);
    }
  return r;
}

}  // namespace padop
