#pragma once

#include <cstdint>
#include <string>

namespace pw {

// Field element of Z3 = {0, 1, 2}, with residue 2 displayed as -1 (the
// tilde polarity when attached to a basis sensor). All coefficient
// arithmetic in the library runs through this type, so 1 + 1 = -1 and
// every element is its own additive inverse under doubling.
class Z3 {
 public:
  constexpr Z3() = default;

  // Reduces any integer mod 3 (negative values included).
  static constexpr Z3 of(long long v) {
    long long r = v % 3;
    if (r < 0) r += 3;
    return Z3(static_cast<std::uint8_t>(r));
  }

  static constexpr Z3 zero() { return Z3(0); }
  static constexpr Z3 one() { return Z3(1); }
  static constexpr Z3 minus_one() { return Z3(2); }

  constexpr std::uint8_t residue() const { return v_; }

  // Signed display value: 0, 1 or -1.
  constexpr int as_int() const { return v_ == 2 ? -1 : v_; }

  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Z3 operator+(Z3 a, Z3 b) {
    return Z3(static_cast<std::uint8_t>((a.v_ + b.v_) % 3));
  }
  friend constexpr Z3 operator*(Z3 a, Z3 b) {
    return Z3(static_cast<std::uint8_t>((a.v_ * b.v_) % 3));
  }
  friend constexpr Z3 operator-(Z3 a) {
    return Z3(static_cast<std::uint8_t>((3 - a.v_) % 3));
  }
  friend constexpr Z3 operator-(Z3 a, Z3 b) { return a + (-b); }

  Z3& operator+=(Z3 o) { return *this = *this + o; }
  Z3& operator*=(Z3 o) { return *this = *this * o; }

  friend constexpr bool operator==(Z3 a, Z3 b) = default;

 private:
  explicit constexpr Z3(std::uint8_t v) : v_(v) {}
  std::uint8_t v_ = 0;
};

inline std::string to_string(Z3 c) { return std::to_string(c.as_int()); }

}  // namespace pw
