#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace pw {

using BigInt = boost::multiprecision::cpp_int;

// A discriminately closed subset: non-empty, zero-free, and closed under
// the discrimination of any two distinct members (exclusive-or over the
// level's basis).
struct DcsSet {
  std::uint32_t generators = 0;            // bitmask over the basis symbols
  std::vector<std::uint32_t> elements;     // sorted non-zero vectors
};

// Closure of a seed set under pairwise exclusive-or (zero excluded).
std::vector<std::uint32_t> discrimination_closure(
    std::vector<std::uint32_t> seed);

bool discriminately_closed(const std::vector<std::uint32_t>& elements);

// The distinct closures generated by the 2^n - 1 non-empty subsets of an
// n-symbol basis; there are exactly 2^n - 1 of them. Feasible for
// 1 <= n <= 7.
std::vector<DcsSet> enumerate_dcs(int n);

// One level of the hierarchy table: symbol count b (each level re-bases
// on the previous level's dcs's, so b recurs as 2^b - 1), the running
// cumulative c, the mapping dimension d and its d^2 elements, and the
// cut-off bookkeeping.
struct ChTableRow {
  int level = 0;
  BigInt symbols_b;
  BigInt cumulative_c;
  BigInt map_dim_d;
  BigInt map_elements_e;
  std::string comment;
  bool cutoff = false;  // map elements can no longer span this level
};

// Exact rows for levels 1..levels; the sequence terminates at level 4,
// where 2^32 map elements cannot span 2^127 - 1 symbols.
std::vector<ChTableRow> ch_table(int levels);

// Decimal display, except the level-4 symbol count which reads better as
// its power form.
std::string big_to_string(const BigInt& v);

// Scientific display with six significant digits, e.g. "1.70141e+38".
std::string big_to_scientific(const BigInt& v);

struct DcsEntry {
  std::vector<std::string> elements;  // display names, e.g. {"s1","s2","s1s2"}
  bool closed = false;                // verified via blade shadows
};

struct DcsLevelListing {
  int level = 0;
  std::vector<DcsEntry> entries;
};

// The one-, two- and three-sensor categories with each entry checked for
// closure under discrimination of the blade shadows (product with the
// sign discarded, i.e. symmetric difference of the index sets).
std::vector<DcsLevelListing> z3_dcs_listing();

}  // namespace pw
