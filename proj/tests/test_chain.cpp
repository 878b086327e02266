#include <doctest.h>

#include <random>

#include "phaseweb/chain.hpp"

using namespace pw;

namespace {

Multivector sum_of_components(BladeMask b, int universe) {
  Multivector acc = Multivector::zero(universe);
  for (int i : blade_indices(b)) acc = acc + Multivector::basis(universe, i);
  return acc;
}

Multivector random_multivector(std::mt19937_64& rng, int universe) {
  Multivector acc = Multivector::zero(universe);
  std::uniform_int_distribution<int> coeff(0, 2);
  for (BladeMask b = 0; b < (BladeMask{1} << universe); ++b) {
    if ((rng() & 3) != 0) continue;
    acc = acc + Multivector::from_mask(universe, b, Z3::of(coeff(rng)));
  }
  return acc;
}

Z3 pair(const Multivector& a, const Multivector& b) {
  Z3 acc = Z3::zero();
  for (const auto& [blade, c] : a.terms()) acc += c * b.coeff(blade);
  return acc;
}

}  // namespace

TEST_CASE("boundary base cases") {
  CHECK(boundary(Multivector::basis(1, 1)) ==
        Multivector::scalar(1, Z3::one()));
  CHECK(boundary(Multivector::scalar(1, Z3::one())).is_zero());
  CHECK(boundary(Multivector::zero(3)).is_zero());
}

TEST_CASE("boundary of a 2-blade is the signed co-occurrence") {
  Multivector expect =
      Multivector::blade(2, {1}, Z3::minus_one()) + Multivector::basis(2, 2);
  CHECK(boundary(Multivector::blade(2, {1, 2})) == expect);
}

TEST_CASE("boundary of a 3-blade alternates over its faces") {
  Multivector expect = Multivector::blade(3, {2, 3}) +
                       Multivector::blade(3, {1, 3}, Z3::minus_one()) +
                       Multivector::blade(3, {1, 2});
  CHECK(boundary(Multivector::blade(3, {1, 2, 3})) == expect);
}

TEST_CASE("the worked double boundary collapses through 1 + ~1") {
  Multivector b12 = Multivector::blade(2, {1, 2});
  Multivector once = boundary(b12);
  // ~s1 contributes -1, s2 contributes +1.
  CHECK(boundary(grade_project(once, 1)) ==
        Multivector::scalar(2, Z3::minus_one()) +
            Multivector::scalar(2, Z3::one()));
  CHECK(boundary(once).is_zero());
}

TEST_CASE("double boundary vanishes on every blade up to n=6") {
  for (int n = 1; n <= 6; ++n)
    for (int g = 0; g <= n; ++g)
      for (BladeMask b : blades_of_grade(n, g))
        CHECK(boundary(boundary(Multivector::from_mask(n, b))).is_zero());
}

TEST_CASE("boundary is Z3-linear") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 40; ++round) {
    Multivector a = random_multivector(rng, 5);
    Multivector b = random_multivector(rng, 5);
    CHECK(boundary(a + b) == boundary(a) + boundary(b));
    CHECK(boundary(a.scaled(Z3::of(2))) == boundary(a).scaled(Z3::of(2)));
  }
}

TEST_CASE("boundary agrees with the component-sum product route") {
  // The geometric route (s_i1 + ... + s_im) * B is an independent oracle
  // for the alternating sum, under all-plus squares.
  for (int n = 2; n <= 6; ++n) {
    Signature sig = Signature::uniform(n, +1);
    for (int g = 2; g <= std::min(n, 5); ++g)
      for (BladeMask b : blades_of_grade(n, g)) {
        Multivector blade = Multivector::from_mask(n, b);
        CHECK(boundary(blade) ==
              geometric_product(sum_of_components(b, n), blade, sig));
      }
  }
}

TEST_CASE("coboundary lifts the scalar in a one-sensor universe") {
  CHECK(coboundary(Multivector::scalar(1, Z3::one()), 1) ==
        Multivector::basis(1, 1));
}

TEST_CASE("coboundary of a sensor in a two-sensor universe") {
  CHECK(coboundary(Multivector::basis(2, 1), 2) ==
        Multivector::blade(2, {1, 2}, Z3::minus_one()));
}

TEST_CASE("coboundary rejects top-grade terms") {
  CHECK_THROWS_AS(coboundary(Multivector::blade(2, {1, 2}), 2), Error);
  CHECK_THROWS_AS(coboundary(Multivector::basis(1, 1), 1), Error);
}

TEST_CASE("coboundary is the adjoint of boundary") {
  std::mt19937_64 rng(41);
  for (int n = 2; n <= 6; ++n)
    for (int round = 0; round < 20; ++round) {
      // a restricted below the top grade so the coboundary exists.
      Multivector a = Multivector::zero(n);
      for (int g = 0; g < n; ++g)
        a = a + grade_project(random_multivector(rng, n), g);
      Multivector da = coboundary(a, n);
      for (int g = 0; g <= n; ++g)
        for (BladeMask b : blades_of_grade(n, g)) {
          Multivector blade = Multivector::from_mask(n, b);
          CHECK(pair(boundary(blade), a) == pair(blade, da));
        }
    }
}

TEST_CASE("double coboundary vanishes where defined") {
  for (int n = 2; n <= 6; ++n)
    for (int g = 0; g + 2 <= n; ++g)
      for (BladeMask b : blades_of_grade(n, g)) {
        Multivector blade = Multivector::from_mask(n, b);
        CHECK(coboundary(coboundary(blade, n), n).is_zero());
      }
}

TEST_CASE("boundary matrix columns read off the operator") {
  Gf3Matrix m = boundary_matrix(2, 2);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 1);
  CHECK(m.at(0, 0) == 2);  // -1 on s1
  CHECK(m.at(1, 0) == 1);  // +1 on s2

  Gf3Matrix ones = boundary_matrix(1, 3);
  REQUIRE(ones.rows() == 1);
  REQUIRE(ones.cols() == 3);
  for (int c = 0; c < 3; ++c) CHECK(ones.at(0, c) == 1);

  CHECK_THROWS_AS(boundary_matrix(0, 3), Error);
  CHECK_THROWS_AS(boundary_matrix(4, 3), Error);
}

TEST_CASE("consecutive boundary matrices compose to zero") {
  CHECK((boundary_matrix(1, 3) * boundary_matrix(2, 3)).is_zero());
  for (int n = 1; n <= 6; ++n)
    for (int g = 2; g <= n; ++g)
      CHECK((boundary_matrix(g - 1, n) * boundary_matrix(g, n)).is_zero());
}

TEST_CASE("matrix action matches the operator on random chains") {
  std::mt19937_64 rng(43);
  for (int n = 2; n <= 6; ++n)
    for (int g = 1; g <= n; ++g) {
      auto source = blades_of_grade(n, g);
      auto target = blades_of_grade(n, g - 1);
      Gf3Matrix m = boundary_matrix(g, n);
      for (int round = 0; round < 5; ++round) {
        Multivector a = grade_project(random_multivector(rng, n), g);
        Gf3Vector coords(source.size(), 0);
        for (std::size_t i = 0; i < source.size(); ++i)
          coords[i] = a.coeff(source[i]).residue();
        Gf3Vector image = m.apply(coords);
        Multivector da = boundary(a);
        for (std::size_t i = 0; i < target.size(); ++i)
          CHECK(image[i] == da.coeff(target[i]).residue());
      }
    }
}

TEST_CASE("coboundary matrix is the transpose of the boundary one grade up") {
  for (int n = 1; n <= 6; ++n)
    for (int g = 0; g < n; ++g)
      CHECK(coboundary_matrix(g, n) == boundary_matrix(g + 1, n).transpose());
}

TEST_CASE("double coboundary vanishes at the matrix level at every grade") {
  for (int n = 1; n <= 6; ++n)
    for (int g = 0; g < n; ++g)
      CHECK((coboundary_matrix(g + 1, n) * coboundary_matrix(g, n)).is_zero());
}

TEST_CASE("the pair-drop variant is unsigned and shaped two grades down") {
  Gf3Matrix m = pair_drop_matrix(3, 4);
  REQUIRE(m.rows() == 4);   // grade-1 blades
  REQUIRE(m.cols() == 4);   // grade-3 blades
  for (int c = 0; c < m.cols(); ++c) {
    int ones = 0;
    for (int r = 0; r < m.rows(); ++r) {
      CHECK((m.at(r, c) == 0 || m.at(r, c) == 1));
      ones += m.at(r, c);
    }
    CHECK(ones == 3);  // C(3,2) ways to drop a pair
  }
  Gf3Matrix scalar_drop = pair_drop_matrix(2, 3);
  REQUIRE(scalar_drop.rows() == 1);
  for (int c = 0; c < scalar_drop.cols(); ++c) CHECK(scalar_drop.at(0, c) == 1);
  CHECK_THROWS_AS(pair_drop_matrix(1, 3), Error);
}

TEST_CASE("gf3 elimination on known matrices") {
  Gf3Matrix id(3, 3);
  for (int i = 0; i < 3; ++i) id.set(i, i, 1);
  CHECK(id.rank() == 3);
  CHECK(id.null_space().empty());

  Gf3Matrix singular(2, 3);
  // rows (1 2 0) and (2 1 0): second = 2 * first mod 3.
  singular.set(0, 0, 1);
  singular.set(0, 1, 2);
  singular.set(1, 0, 2);
  singular.set(1, 1, 1);
  CHECK(singular.rank() == 1);
  auto kernel = singular.null_space();
  REQUIRE(kernel.size() == 2);
  for (const auto& v : kernel) {
    auto image = singular.apply(v);
    for (auto x : image) CHECK(x == 0);
  }
}

TEST_CASE("kernel vectors of boundary matrices really lie in the kernel") {
  for (int n = 2; n <= 5; ++n)
    for (int g = 1; g <= n; ++g) {
      Gf3Matrix m = boundary_matrix(g, n);
      auto kernel = m.null_space();
      CHECK(static_cast<int>(kernel.size()) == m.cols() - m.rank());
      for (const auto& v : kernel) {
        auto image = m.apply(v);
        for (auto x : image) CHECK(x == 0);
      }
    }
}

TEST_CASE("span intersection dimensions") {
  // span{(1,0)} and span{(0,1)} meet trivially.
  CHECK(span_intersection_dim({{1, 0}}, {{0, 1}}, 2) == 0);
  // identical lines meet in the line.
  CHECK(span_intersection_dim({{1, 2}}, {{2, 1}}, 2) == 1);
  // plane and line inside it.
  CHECK(span_intersection_dim({{1, 0, 0}, {0, 1, 0}}, {{1, 1, 0}}, 3) == 1);
}

TEST_CASE("ladder report for the full complex") {
  LadderReport r3 = ladder_report(3);
  REQUIRE(r3.rungs.size() == 4);
  for (const auto& rung : r3.rungs) {
    CHECK(rung.reduced_homology_dim == 0);
    CHECK(rung.boundary_kernel_dim + rung.boundary_rank == rung.dim);
    CHECK(rung.coboundary_kernel_dim + rung.coboundary_rank == rung.dim);
    CHECK(rung.kernel_overlap_dim >= 0);
    CHECK(rung.kernel_overlap_dim <=
          std::min(rung.boundary_kernel_dim, rung.coboundary_kernel_dim));
  }

  LadderReport r1 = ladder_report(1);
  CHECK(r1.rungs[1].boundary_rank == 1);
  CHECK(r1.rungs[1].boundary_kernel_dim == 0);

  CHECK_THROWS_AS(ladder_report(0), Error);
  CHECK_THROWS_AS(ladder_report(9), Error);
}

TEST_CASE("the volumetric decomposition identity holds") {
  for (int sign : {+1, -1}) {
    Signature sig = Signature::uniform(4, sign);
    CHECK(coex_identity_check(1, 2, 3, 4, sig));
    CHECK(coex_identity_check(2, 3, 4, 4, sig));
    CHECK(coex_identity_check(3, 1, 2, 4, sig));
  }
  Signature sig3 = Signature::uniform(3, +1);
  CHECK(coex_identity_check(3, sig3));
  CHECK_THROWS_AS(coex_identity_check(2, Signature::uniform(2, +1)), Error);
  CHECK_THROWS_AS(coex_identity_check(1, 1, 2, 3, sig3), Error);
}
