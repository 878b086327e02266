#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "phaseweb/signature.hpp"
#include "phaseweb/z3.hpp"

namespace pw {

// A canonical blade is a product of distinct basis sensors in strictly
// increasing index order, encoded as a bitmask: bit (i-1) set means sensor
// s_i is a factor. The empty mask is the scalar blade. Universes are
// capped at 63 sensors so a mask always fits in 64 bits.
using BladeMask = std::uint64_t;

inline constexpr int kMaxUniverse = 63;

inline int grade(BladeMask b) { return std::popcount(b); }

inline BladeMask basis_blade(int index) {
  return BladeMask{1} << (index - 1);
}

// Ascending 1-based sensor indices of a blade.
std::vector<int> blade_indices(BladeMask b);

// Lexicographic order on the index sequences, e.g. s1s4 < s2s3. This is
// the order used for matrix rows/columns and for display; it differs from
// numeric mask order.
bool blade_lex_less(BladeMask a, BladeMask b);

// All C(n, g) blades of grade g over an n-sensor universe, in
// lexicographic order.
std::vector<BladeMask> blades_of_grade(int universe, int g);

// Display name: "s1s2s3" for blades, "1" for the scalar blade.
std::string blade_name(BladeMask b);

// Sign picked up when the concatenation of two canonical blades is sorted
// back into canonical form (the parity of the permutation) combined with
// the signature contractions of the repeated indices. The resulting blade
// is a ^ b.
Z3 blade_product_sign(BladeMask a, BladeMask b, const Signature& sig);

// Sign of reversing the factor order of a grade-m blade:
// (-1)^(m(m-1)/2).
Z3 reversal_sign(int grade);

}  // namespace pw
