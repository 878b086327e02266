#include "phaseweb/hierarchy.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "phaseweb/blade.hpp"
#include "phaseweb/error.hpp"

namespace pw {

std::vector<std::uint32_t> discrimination_closure(
    std::vector<std::uint32_t> seed) {
  std::set<std::uint32_t> closed;
  for (std::uint32_t v : seed) {
    if (v == 0) throw Error("dcs elements are non-zero vectors");
    closed.insert(v);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> current(closed.begin(), closed.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::uint32_t d = current[i] ^ current[j];
        if (d != 0 && closed.insert(d).second) grew = true;
      }
  }
  return {closed.begin(), closed.end()};
}

bool discriminately_closed(const std::vector<std::uint32_t>& elements) {
  if (elements.empty()) return false;
  std::set<std::uint32_t> lookup(elements.begin(), elements.end());
  if (lookup.count(0)) return false;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      std::uint32_t d = elements[i] ^ elements[j];
      if (d != 0 && !lookup.count(d)) return false;
    }
  return true;
}

std::vector<DcsSet> enumerate_dcs(int n) {
  if (n < 1 || n > 7)
    throw Error("dcs enumeration supports 1..7 basis symbols, got " +
                std::to_string(n));
  std::vector<DcsSet> out;
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint32_t gen = 1; gen < (1u << n); ++gen) {
    std::vector<std::uint32_t> seed;
    for (int bit = 0; bit < n; ++bit)
      if (gen & (1u << bit)) seed.push_back(1u << bit);
    auto closure = discrimination_closure(seed);
    if (seen.insert(closure).second)
      out.push_back(DcsSet{gen, std::move(closure)});
  }
  return out;
}

std::string big_to_string(const BigInt& v) { return v.str(); }

std::string big_to_scientific(const BigInt& v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5e", v.convert_to<double>());
  return buf;
}

namespace {

// Values above plain display range read better as the power that
// generated them.
std::string symbol_display(const BigInt& v) {
  static const BigInt big_level = (BigInt(1) << 127) - 1;
  if (v == big_level) return "2^127 - 1";
  return v.str();
}

}  // namespace

std::vector<ChTableRow> ch_table(int levels) {
  if (levels < 1 || levels > 4)
    throw Error("the hierarchy table has levels 1..4 (the sequence cuts "
                "off after the fourth), got " + std::to_string(levels));
  std::vector<ChTableRow> rows;
  BigInt b = 3;        // 2^2 - 1 over the two seed symbols
  BigInt d = 4;
  BigInt cumulative = 0;
  for (int level = 1; level <= levels; ++level) {
    ChTableRow row;
    row.level = level;
    row.symbols_b = b;
    cumulative += b;
    row.cumulative_c = cumulative;
    row.map_dim_d = d;
    row.map_elements_e = d * d;
    row.cutoff = row.map_elements_e < row.symbols_b;
    if (row.cutoff) {
      row.comment = "cut-off reached";
    } else {
      // Compare the map's capacity with the next level's symbol count.
      BigInt next_b = (BigInt(1) << b.convert_to<unsigned>()) - 1;
      row.comment = big_to_string(row.map_elements_e) +
                    (row.map_elements_e > next_b ? " > " : " < ") +
                    symbol_display(next_b);
    }
    rows.push_back(std::move(row));
    if (level < 4) {
      b = (BigInt(1) << b.convert_to<unsigned>()) - 1;
      d = d * d;
    }
  }
  return rows;
}

namespace {

DcsEntry entry_from_masks(const std::vector<BladeMask>& masks,
                          bool single_sensor_universe = false) {
  DcsEntry e;
  std::set<BladeMask> lookup(masks.begin(), masks.end());
  bool closed = !masks.empty() && !lookup.count(0);
  for (std::size_t i = 0; i < masks.size() && closed; ++i)
    for (std::size_t j = i + 1; j < masks.size() && closed; ++j) {
      // Discrimination through the algebra shadow: the blade product with
      // the sign discarded is the symmetric difference of the supports.
      BladeMask d = masks[i] ^ masks[j];
      if (d == 0 || !lookup.count(d)) closed = false;
    }
  for (BladeMask m : masks)
    e.elements.push_back(single_sensor_universe ? "s" : blade_name(m));
  e.closed = closed;
  return e;
}

}  // namespace

std::vector<DcsLevelListing> z3_dcs_listing() {
  std::vector<DcsLevelListing> out;

  const BladeMask s1 = basis_blade(1);
  const BladeMask s2 = basis_blade(2);
  const BladeMask s3 = basis_blade(3);

  {
    DcsLevelListing level;
    level.level = 1;
    level.entries.push_back(entry_from_masks({s1}, true));
    out.push_back(std::move(level));
  }
  {
    DcsLevelListing level;
    level.level = 2;
    level.entries.push_back(entry_from_masks({s1}));
    level.entries.push_back(entry_from_masks({s2}));
    level.entries.push_back(entry_from_masks({s1, s2, s1 | s2}));
    out.push_back(std::move(level));
  }
  {
    DcsLevelListing level;
    level.level = 3;
    level.entries.push_back(entry_from_masks({s1}));
    level.entries.push_back(entry_from_masks({s2}));
    level.entries.push_back(entry_from_masks({s3}));
    level.entries.push_back(entry_from_masks({s1, s2, s1 | s2}));
    level.entries.push_back(entry_from_masks({s2, s3, s2 | s3}));
    level.entries.push_back(entry_from_masks({s3, s1, s3 | s1}));
    level.entries.push_back(entry_from_masks({s1 | s2 | s3}));
    out.push_back(std::move(level));
  }
  return out;
}

}  // namespace pw
