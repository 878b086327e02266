#include "phaseweb/chain.hpp"

#include <set>
#include <utility>

namespace pw {

namespace {

// Alternating-sum boundary of a single blade, coefficient folded in.
void blade_boundary_into(Multivector& out, BladeMask b, Z3 c) {
  auto indices = blade_indices(b);
  Z3 sign = Z3::one();
  for (int i : indices) {
    out = out + Multivector::from_mask(out.universe(), b ^ basis_blade(i),
                                       c * sign);
    sign = -sign;
  }
}

Z3 pairing(const Multivector& a, const Multivector& b) {
  Z3 acc = Z3::zero();
  for (const auto& [blade, c] : a.terms()) acc += c * b.coeff(blade);
  return acc;
}

}  // namespace

Multivector boundary(const Multivector& a) {
  Multivector out(a.universe());
  for (const auto& [b, c] : a.terms()) blade_boundary_into(out, b, c);
  return out;
}

Multivector coboundary(const Multivector& a, int universe) {
  if (a.universe() > universe)
    throw UniverseMismatch(a.universe(), universe);
  Multivector out(universe);
  if (a.is_zero()) return out;
  int top = a.max_grade();
  if (top >= universe)
    throw Error("coboundary undefined on grade-" + std::to_string(top) +
                " terms in a universe of size " + std::to_string(universe) +
                ": no room to increase arity");
  // Adjoint: <B, coboundary(a)> = <boundary(B), a> for each blade B one
  // grade above a term of a.
  std::set<int> grades;
  for (const auto& [b, c] : a.terms()) {
    (void)c;
    grades.insert(grade(b));
  }
  for (int g : grades)
    for (BladeMask target : blades_of_grade(universe, g + 1)) {
      Z3 coeff =
          pairing(boundary(Multivector::from_mask(universe, target)), a);
      if (!coeff.is_zero())
        out = out + Multivector::from_mask(universe, target, coeff);
    }
  return out;
}

Gf3Matrix boundary_matrix(int g, int universe) {
  if (g < 1 || g > universe)
    throw Error("boundary matrix grade " + std::to_string(g) +
                " out of range for universe " + std::to_string(universe));
  auto cols = blades_of_grade(universe, g);
  auto rows = blades_of_grade(universe, g - 1);
  Gf3Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    Multivector img =
        boundary(Multivector::from_mask(universe, cols[static_cast<std::size_t>(c)]));
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      m.set(r, c, img.coeff(rows[static_cast<std::size_t>(r)]));
  }
  return m;
}

Gf3Matrix coboundary_matrix(int g, int universe) {
  if (g < 0 || g > universe)
    throw Error("coboundary matrix grade " + std::to_string(g) +
                " out of range for universe " + std::to_string(universe));
  if (g == universe) {
    // Top grade: nothing above, the zero map.
    return Gf3Matrix(0, static_cast<int>(blades_of_grade(universe, g).size()));
  }
  return boundary_matrix(g + 1, universe).transpose();
}

Gf3Matrix pair_drop_matrix(int g, int universe) {
  if (g < 2 || g > universe)
    throw Error("pair-drop matrix grade " + std::to_string(g) +
                " out of range for universe " + std::to_string(universe));
  auto cols = blades_of_grade(universe, g);
  auto rows = blades_of_grade(universe, g - 2);
  Gf3Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (int c = 0; c < static_cast<int>(cols.size()); ++c)
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      BladeMask src = cols[static_cast<std::size_t>(c)];
      BladeMask dst = rows[static_cast<std::size_t>(r)];
      if ((dst & src) == dst) m.set(r, c, 1);
    }
  return m;
}

LadderReport ladder_report(int universe) {
  if (universe < 1 || universe > 8)
    throw Error("ladder report supports universes 1..8, got " +
                std::to_string(universe));
  LadderReport report;
  report.universe = universe;
  for (int g = 0; g <= universe; ++g) {
    LadderRung rung;
    rung.grade = g;
    rung.dim = static_cast<int>(blades_of_grade(universe, g).size());

    std::vector<Gf3Vector> down_kernel;
    if (g >= 1) {
      Gf3Matrix down = boundary_matrix(g, universe);
      rung.boundary_rank = down.rank();
      down_kernel = down.null_space();
    } else {
      // The scalar level maps to nothing below; everything is kernel.
      rung.boundary_rank = 0;
      down_kernel.assign(1, Gf3Vector{1});
    }
    rung.boundary_kernel_dim = rung.dim - rung.boundary_rank;

    Gf3Matrix up = coboundary_matrix(g, universe);
    rung.coboundary_rank = up.rank();
    auto up_kernel = up.null_space();
    rung.coboundary_kernel_dim = rung.dim - rung.coboundary_rank;

    // Reduced homology: image from one grade up has the same rank as the
    // coboundary out of this grade (transpose preserves rank).
    rung.reduced_homology_dim = rung.boundary_kernel_dim - rung.coboundary_rank;
    rung.kernel_overlap_dim =
        span_intersection_dim(down_kernel, up_kernel, rung.dim);
    report.rungs.push_back(rung);
  }
  return report;
}

bool coex_identity_check(int i, int j, int k, int universe,
                         const Signature& sig) {
  if (universe < 3)
    throw Error("decomposition identity needs a universe of at least 3 "
                "sensors, got " + std::to_string(universe));
  if (i == j || j == k || i == k)
    throw Error("decomposition identity needs three distinct sensors");
  auto blade2 = [&](int a, int b) {
    // Ordered product, e.g. (3,1) -> s3s1 = -s1s3.
    return geometric_product(Multivector::basis(universe, a),
                             Multivector::basis(universe, b), sig);
  };
  Multivector triple = geometric_product(
      blade2(i, j), Multivector::basis(universe, k), sig);
  Multivector lhs = boundary(triple);
  Multivector rhs =
      geometric_product(boundary(blade2(i, j)), Multivector::basis(universe, k), sig) +
      geometric_product(boundary(blade2(j, k)), Multivector::basis(universe, i), sig) +
      geometric_product(boundary(blade2(k, i)), Multivector::basis(universe, j), sig);
  return lhs == -rhs;
}

}  // namespace pw
