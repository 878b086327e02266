#pragma once

#include <vector>

#include "phaseweb/error.hpp"
#include "phaseweb/z3.hpp"

namespace pw {

// Metric signature: the square of each basis sensor, +1 or -1, one entry
// per sensor of the universe. Uniform signatures are the common case but
// mixed ones are representable.
class Signature {
 public:
  Signature() = default;

  static Signature uniform(int universe, int sign) {
    return Signature(std::vector<Z3>(static_cast<std::size_t>(universe),
                                     check_sign(sign)));
  }

  static Signature from_squares(const std::vector<int>& signs) {
    std::vector<Z3> squares;
    squares.reserve(signs.size());
    for (int s : signs) squares.push_back(check_sign(s));
    return Signature(std::move(squares));
  }

  int dimension() const { return static_cast<int>(squares_.size()); }

  // 1-based basis index.
  Z3 square_of(int index) const {
    if (index < 1 || index > dimension())
      throw Error("signature has no basis index " + std::to_string(index));
    return squares_[static_cast<std::size_t>(index - 1)];
  }

  bool operator==(const Signature&) const = default;

 private:
  explicit Signature(std::vector<Z3> squares) : squares_(std::move(squares)) {}

  static Z3 check_sign(int sign) {
    if (sign != 1 && sign != -1)
      throw Error("basis square must be +1 or -1, got " +
                  std::to_string(sign));
    return Z3::of(sign);
  }

  std::vector<Z3> squares_;
};

}  // namespace pw
