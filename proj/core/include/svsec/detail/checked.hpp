#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace svsec::detail {

/// Thrown by Checked64 when a result does not fit in 64 bits. Callers catch it
/// and redo the computation with arbitrary-precision integers.
struct Overflow : std::overflow_error {
  Overflow() : std::overflow_error("64-bit integer overflow") {}
};

/// 64-bit integer whose arithmetic throws Overflow instead of wrapping.
class Checked64 {
 public:
  constexpr Checked64() = default;
  constexpr Checked64(std::int64_t v) : v_(v) {}  // NOLINT(implicit)

  constexpr std::int64_t value() const { return v_; }

  friend Checked64 operator+(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator-(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator*(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator/(Checked64 a, Checked64 b) {
    if (b.v_ == 0) throw std::domain_error("division by zero");
    if (a.v_ == std::numeric_limits<std::int64_t>::min() && b.v_ == -1) throw Overflow{};
    return a.v_ / b.v_;
  }
  friend Checked64 operator%(Checked64 a, Checked64 b) {
    if (b.v_ == 0) throw std::domain_error("division by zero");
    if (b.v_ == -1) return 0;
    return a.v_ % b.v_;
  }
  Checked64 operator-() const {
    if (v_ == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -v_;
  }
  Checked64& operator+=(Checked64 o) { return *this = *this + o; }
  Checked64& operator-=(Checked64 o) { return *this = *this - o; }
  Checked64& operator*=(Checked64 o) { return *this = *this * o; }
  Checked64& operator/=(Checked64 o) { return *this = *this / o; }

  friend constexpr bool operator==(Checked64, Checked64) = default;
  friend constexpr auto operator<=>(Checked64, Checked64) = default;

 private:
  std::int64_t v_ = 0;
};

}  // namespace svsec::detail
