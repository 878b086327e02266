#include "phaseweb/blade.hpp"

#include "phaseweb/error.hpp"

namespace pw {

std::vector<int> blade_indices(BladeMask b) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(grade(b)));
  for (int i = 1; b != 0; ++i, b >>= 1)
    if (b & 1) out.push_back(i);
  return out;
}

bool blade_lex_less(BladeMask a, BladeMask b) {
  if (a == b) return false;
  // Compare index sequences front to back; the first differing factor
  // decides, and a proper prefix sorts first.
  while (a != 0 && b != 0) {
    int ia = std::countr_zero(a);
    int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0;
}

std::vector<BladeMask> blades_of_grade(int universe, int g) {
  if (universe < 0 || universe > kMaxUniverse)
    throw Error("universe size out of range: " + std::to_string(universe));
  if (g < 0 || g > universe)
    throw Error("grade " + std::to_string(g) + " out of range for universe " +
                std::to_string(universe));
  std::vector<BladeMask> out;
  if (g == 0) {
    out.push_back(0);
    return out;
  }
  // Walk index combinations in lexicographic order.
  std::vector<int> idx(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    BladeMask m = 0;
    for (int i : idx) m |= basis_blade(i);
    out.push_back(m);
    int pos = g - 1;
    while (pos >= 0 &&
           idx[static_cast<std::size_t>(pos)] == universe - (g - 1 - pos))
      --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < g; ++i)
      idx[static_cast<std::size_t>(i)] =
          idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

std::string blade_name(BladeMask b) {
  if (b == 0) return "1";
  std::string out;
  for (int i : blade_indices(b)) {
    out += 's';
    out += std::to_string(i);
  }
  return out;
}

Z3 blade_product_sign(BladeMask a, BladeMask b, const Signature& sig) {
  // Count the transpositions that interleave b's factors into a.
  int swaps = 0;
  BladeMask t = a >> 1;
  while (t != 0) {
    swaps += std::popcount(t & b);
    t >>= 1;
  }
  Z3 sign = (swaps & 1) ? Z3::minus_one() : Z3::one();
  // Adjacent equal factors contract through the signature.
  BladeMask common = a & b;
  while (common != 0) {
    int index = std::countr_zero(common) + 1;
    sign *= sig.square_of(index);
    common &= common - 1;
  }
  return sign;
}

Z3 reversal_sign(int grade) {
  return (grade / 2) % 2 == 1 ? Z3::minus_one() : Z3::one();
}

}  // namespace pw
