#include <doctest.h>

#include <set>

#include "phaseweb/error.hpp"
#include "phaseweb/hierarchy.hpp"

using namespace pw;

TEST_CASE("closure under discrimination") {
  auto single = discrimination_closure({0b01});
  CHECK(single == std::vector<std::uint32_t>{0b01});

  auto pair = discrimination_closure({0b01, 0b10});
  CHECK(pair == std::vector<std::uint32_t>{0b01, 0b10, 0b11});
  CHECK(discriminately_closed(pair));
  CHECK_FALSE(discriminately_closed({0b01, 0b10}));

  // Different generators, same span.
  CHECK(discrimination_closure({0b01, 0b11}) == pair);
}

TEST_CASE("small dcs enumerations match the displayed families") {
  auto one = enumerate_dcs(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].elements == std::vector<std::uint32_t>{1});

  auto two = enumerate_dcs(2);
  REQUIRE(two.size() == 3);
  std::set<std::vector<std::uint32_t>> sets;
  for (const auto& d : two) sets.insert(d.elements);
  CHECK(sets.count({0b01}));
  CHECK(sets.count({0b10}));
  CHECK(sets.count({0b01, 0b10, 0b11}));

  CHECK(enumerate_dcs(3).size() == 7);
  CHECK_THROWS_AS(enumerate_dcs(0), Error);
  CHECK_THROWS_AS(enumerate_dcs(8), Error);
}

TEST_CASE("dcs counts hit 2^n - 1 with every closure verified") {
  for (int n = 1; n <= 7; ++n) {
    auto dcs = enumerate_dcs(n);
    CHECK(dcs.size() == (1u << n) - 1);
    for (const auto& d : dcs) {
      CHECK(discriminately_closed(d.elements));
      CHECK(!d.elements.empty());
    }
  }
}

TEST_CASE("the counting table reproduces the exact integers") {
  auto rows = ch_table(4);
  REQUIRE(rows.size() == 4);

  CHECK(rows[0].symbols_b == 3);
  CHECK(rows[1].symbols_b == 7);
  CHECK(rows[2].symbols_b == 127);
  CHECK(rows[3].symbols_b == (BigInt(1) << 127) - 1);

  CHECK(rows[0].cumulative_c == 3);
  CHECK(rows[1].cumulative_c == 10);
  CHECK(rows[2].cumulative_c == 137);
  CHECK(rows[3].cumulative_c ==
        BigInt("170141183460469231731687303715884105864"));

  CHECK(rows[0].map_dim_d == 4);
  CHECK(rows[1].map_dim_d == 16);
  CHECK(rows[2].map_dim_d == 256);
  CHECK(rows[3].map_dim_d == 65536);

  CHECK(rows[0].map_elements_e == 16);
  CHECK(rows[1].map_elements_e == 256);
  CHECK(rows[2].map_elements_e == 65536);
  CHECK(rows[3].map_elements_e == BigInt(65536) * 65536);

  CHECK(rows[0].comment == "16 > 7");
  CHECK(rows[1].comment == "256 > 127");
  CHECK(rows[2].comment == "65536 < 2^127 - 1");
  CHECK(rows[3].comment == "cut-off reached");

  CHECK_FALSE(rows[0].cutoff);
  CHECK_FALSE(rows[2].cutoff);
  CHECK(rows[3].cutoff);

  CHECK_THROWS_AS(ch_table(0), Error);
  CHECK_THROWS_AS(ch_table(5), Error);
}

TEST_CASE("the level recurrence holds exactly") {
  auto rows = ch_table(4);
  for (std::size_t l = 0; l + 1 < rows.size(); ++l) {
    BigInt expect = (BigInt(1) << rows[l].symbols_b.convert_to<unsigned>()) - 1;
    CHECK(rows[l + 1].symbols_b == expect);
  }
  // Running sums.
  BigInt sum = 0;
  for (const auto& row : rows) {
    sum += row.symbols_b;
    CHECK(row.cumulative_c == sum);
  }
}

TEST_CASE("the cut-off comparison is strict") {
  CHECK(BigInt(65536) < (BigInt(1) << 127) - 1);
}

TEST_CASE("big integer display") {
  CHECK(big_to_string(BigInt("170141183460469231731687303715884105864")) ==
        "170141183460469231731687303715884105864");
  CHECK(big_to_scientific((BigInt(1) << 127) + 136) == "1.70141e+38");
}

TEST_CASE("the displayed category listing closes under shadows") {
  auto listing = z3_dcs_listing();
  REQUIRE(listing.size() == 3);

  CHECK(listing[0].level == 1);
  REQUIRE(listing[0].entries.size() == 1);
  CHECK(listing[0].entries[0].elements == std::vector<std::string>{"s"});

  CHECK(listing[1].entries.size() == 3);
  CHECK(listing[2].entries.size() == 7);

  bool has_volume = false;
  for (const auto& e : listing[2].entries)
    if (e.elements == std::vector<std::string>{"s1s2s3"}) has_volume = true;
  CHECK(has_volume);

  for (const auto& level : listing)
    for (const auto& entry : level.entries) CHECK(entry.closed);

  // The two-sensor family spelled out.
  CHECK(listing[1].entries[2].elements ==
        std::vector<std::string>{"s1", "s2", "s1s2"});
}
