#include "phaseweb/bitbang.hpp"

#include <algorithm>
#include <bit>

#include "phaseweb/engine.hpp"
#include "phaseweb/error.hpp"

namespace pw {

namespace {

Multivector sc(int v) { return Multivector::scalar(2, Z3::of(v)); }

bool check_sum(int a, int b, int expect) {
  return sc(a) + sc(b) == sc(expect);
}

// (s1s2)^2 under a uniform signature; -1 regardless of the sign choice.
bool spinor_squares_to_minus_one(int sign) {
  Signature sig = Signature::uniform(2, sign);
  Multivector b12 = Multivector::blade(2, {1, 2});
  return geometric_product(b12, b12, sig) == sc(-1);
}

}  // namespace

std::vector<DerivationStep> derive() {
  std::vector<DerivationStep> steps;

  {
    DerivationStep s;
    s.index = 0;
    s.symbol = "Void";
    s.rule = "void-split";
    s.justification = "0 + 0 = 0";
    s.holds = check_sum(0, 0, 0) && (-Z3::zero() == Z3::zero());
    s.shadow = "0";
    s.commentary =
        "Nothing can be said, yet a first split must leave the whole "
        "unchanged: the parts are as the whole. Splitting as 0 = ~0 "
        "instead starts the alternate branch.";
    steps.push_back(s);
  }
  {
    DerivationStep s;
    s.index = 1;
    s.symbol = "1_0";
    s.rule = "void-split";
    s.justification = "0 + 0 = 0";
    s.holds = check_sum(0, 0, 0);
    s.shadow = "1";
    s.commentary =
        "Names 'the same as'. Asking 1 + 0 instead adds nothing new: it "
        "evaluates to 1 and leads back to the opposite at the next step.";
    steps.push_back(s);
  }
  {
    DerivationStep s;
    s.index = 2;
    s.symbol = "~1_0";
    s.rule = "mod3-sum";
    s.justification = "1 + 1 = -1";
    s.holds = check_sum(1, 1, -1);
    s.shadow = "-1";
    s.commentary =
        "The whole is not the same as its parts: doubling sameness lands "
        "on 'the opposite of'. Z3 is the smallest ring where the zero, "
        "the value and its opposite stay distinct.";
    steps.push_back(s);
  }
  {
    DerivationStep s;
    s.index = 3;
    s.symbol = "1_1";
    s.rule = "arity1-coex";
    s.justification = "1 + -1 = 0";
    s.holds = check_sum(1, -1, 0);
    s.shadow = "s1";
    s.commentary =
        "Sameness plus oppositeness exhausts the void, so their exclusion "
        "is a new distinction: the arity-1 co-exclusion promotes the "
        "grade-0 pair to a discrete variable.";
    steps.push_back(s);
  }
  {
    DerivationStep s;
    s.index = 4;
    s.symbol = "1_2";
    s.rule = "true-coex";
    s.justification = "s1s2 * s1s2 = -1";
    s.holds =
        spinor_squares_to_minus_one(+1) && spinor_squares_to_minus_one(-1);
    s.shadow = "s1s2";
    s.commentary =
        "Co-excluding a fresh variable with its opposite instance is the "
        "first true (arity-2) co-exclusion; its shadow squares to -1 under "
        "either uniform signature, and under the all-minus signature the "
        "grade-1 square (~1_1)^2 = -1 as well. Via step 2, ~1_2 follows.";
    // Replay the registration itself: an arity-1 node per instance, then
    // the true co-exclusion joining them.
    Registry reg;
    NodeRef s1 = reg.declare_sensor("s1");
    NodeRef s2 = reg.declare_sensor("s2");
    const MetaSensor& first = coexclude(reg, {s1}, {+1});
    const MetaSensor& second = coexclude(reg, {s2}, {-1});
    NodeRef fr{NodeRef::Kind::meta, 0};
    NodeRef sr{NodeRef::Kind::meta, 1};
    (void)first;
    (void)second;
    const MetaSensor& spinor = coexclude(reg, {fr, sr}, {+1, -1});
    s.holds = s.holds && spinor.level == 2 &&
              spinor.shadow == (basis_blade(1) | basis_blade(2));
    steps.push_back(s);
  }
  return steps;
}

std::vector<DerivationStep> derive_alternate_branch() {
  std::vector<DerivationStep> steps;
  {
    DerivationStep s;
    s.index = 1;
    s.symbol = "~1_0";
    s.rule = "void-split";
    s.justification = "0 = -0";
    s.holds = (-Z3::zero() == Z3::zero());
    s.shadow = "-1";
    s.commentary = "Splitting the void as 0 = ~0 names oppositeness first.";
    steps.push_back(s);
  }
  {
    DerivationStep s;
    s.index = 2;
    s.symbol = "1_0";
    s.rule = "mod3-sum";
    s.justification = "-1 + -1 = 1";
    s.holds = check_sum(-1, -1, 1);
    s.shadow = "1";
    s.commentary =
        "Doubling oppositeness lands on sameness; the branch rejoins the "
        "main line at the end of step 2.";
    steps.push_back(s);
  }
  return steps;
}

QuaternionReport quaternion_check(const Signature& sig,
                                  const std::array<Multivector, 3>& mapping) {
  std::set<BladeMask> masks;
  for (const auto& e : mapping) {
    auto term = e.single_term();
    if (!term || grade(term->first) != 2)
      throw Error("quaternion mapping entries must be single grade-2 "
                  "blades, got " + e.str());
    if ((term->first & ~(basis_blade(1) | basis_blade(2) | basis_blade(3))) !=
        0)
      throw Error("quaternion mapping must stay over {s1, s2, s3}, got " +
                  e.str());
    if (!masks.insert(term->first).second)
      throw Error("quaternion mapping entries must be distinct blades");
  }

  QuaternionReport report;
  report.e = mapping;
  auto gp = [&](const Multivector& a, const Multivector& b) {
    return geometric_product(a, b, sig);
  };
  Multivector minus_one = Multivector::scalar(mapping[0].universe(), Z3::minus_one());

  auto add = [&](std::string name, const Multivector& lhs,
                 const Multivector& rhs) {
    report.relations.push_back(
        QuaternionRelation{std::move(name), lhs.str(), rhs.str(), lhs == rhs});
  };

  const auto& [e1, e2, e3] = mapping;
  add("e1^2 = -1", gp(e1, e1), minus_one);
  add("e2^2 = -1", gp(e2, e2), minus_one);
  add("e3^2 = -1", gp(e3, e3), minus_one);
  add("e1e2 = -e2e1", gp(e1, e2), -gp(e2, e1));
  add("e2e3 = -e3e2", gp(e2, e3), -gp(e3, e2));
  add("e3e1 = -e1e3", gp(e3, e1), -gp(e1, e3));
  add("e1e2 = e3", gp(e1, e2), e3);
  add("e2e3 = e1", gp(e2, e3), e1);
  add("e3e1 = e2", gp(e3, e1), e2);

  report.all_hold =
      std::all_of(report.relations.begin(), report.relations.end(),
                  [](const QuaternionRelation& r) { return r.holds; });
  return report;
}

std::array<Multivector, 3> cyclic_mapping() {
  Signature plus = Signature::uniform(3, +1);
  auto ordered = [&](int a, int b) {
    // The written order matters: s3s1 is the blade s1s3 with a sign.
    return geometric_product(Multivector::basis(3, a),
                             Multivector::basis(3, b), plus);
  };
  return {ordered(1, 2), ordered(2, 3), ordered(3, 1)};
}

std::array<Multivector, 3> ascending_mapping() {
  return {Multivector::blade(3, {1, 2}), Multivector::blade(3, {2, 3}),
          Multivector::blade(3, {1, 3})};
}

std::vector<SpinorState> spinor_states() {
  std::vector<SpinorState> out;
  for (int index = 7; index >= 0; --index) {
    SpinorState s;
    s.index = index;
    s.bits = {(index & 4) ? +1 : -1, (index & 2) ? +1 : -1,
              (index & 1) ? +1 : -1};
    out.push_back(s);
  }
  return out;
}

namespace {

int hamming(int a, int b) { return std::popcount(static_cast<unsigned>(a ^ b)); }

}  // namespace

std::vector<std::pair<int, int>> one_flip_edges() {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      if (hamming(a, b) == 1) out.emplace_back(a, b);
  return out;
}

std::vector<std::pair<int, int>> two_flip_edges() {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      if (hamming(a, b) == 2) out.emplace_back(a, b);
  return out;
}

Tetrahedra tetrahedra() {
  // Connected components of the two-flip graph.
  auto edges = two_flip_edges();
  std::array<int, 8> component{};
  component.fill(-1);
  int next = 0;
  for (int start = 0; start < 8; ++start) {
    if (component[static_cast<std::size_t>(start)] != -1) continue;
    std::vector<int> stack{start};
    component[static_cast<std::size_t>(start)] = next;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [a, b] : edges) {
        int other = a == v ? b : b == v ? a : -1;
        if (other >= 0 && component[static_cast<std::size_t>(other)] == -1) {
          component[static_cast<std::size_t>(other)] = next;
          stack.push_back(other);
        }
      }
    }
    ++next;
  }
  if (next != 2)
    throw Error("two-flip graph should split into two families, got " +
                std::to_string(next));

  Tetrahedra t;
  std::array<std::vector<int>, 2> groups;
  for (int v = 0; v < 8; ++v)
    groups[static_cast<std::size_t>(component[static_cast<std::size_t>(v)])]
        .push_back(v);
  // The family containing state 0 comes first.
  if (groups[0].front() != 0) std::swap(groups[0], groups[1]);
  auto states = spinor_states();
  for (int f = 0; f < 2; ++f) {
    std::sort(groups[static_cast<std::size_t>(f)].begin(),
              groups[static_cast<std::size_t>(f)].end());
    for (int i = 0; i < 4; ++i)
      t.families[static_cast<std::size_t>(f)][static_cast<std::size_t>(i)] =
          groups[static_cast<std::size_t>(f)][static_cast<std::size_t>(i)];
    int parity =
        states[static_cast<std::size_t>(7 - groups[static_cast<std::size_t>(
                                                f)][0])].parity();
    for (int v : groups[static_cast<std::size_t>(f)])
      if (states[static_cast<std::size_t>(7 - v)].parity() != parity)
        throw Error("family parity is not constant");
    t.parity[static_cast<std::size_t>(f)] = parity;
  }
  return t;
}

std::vector<PciRow> pci_table() {
  // Meta-sensor constituent pairs, in the table's column order:
  // P = (s1s2 | s3), C = (s2s3 | s1), I = (s3s1 | s2).
  struct Pair {
    std::array<int, 2> blade;  // the two sensors of the 2-blade column
    int lone;                  // the base sensor column
  };
  const std::array<Pair, 3> metas = {Pair{{1, 2}, 3}, Pair{{2, 3}, 1},
                                     Pair{{3, 1}, 2}};
  auto sensor_name = [](int i) { return "s" + std::to_string(i); };
  auto blade_label = [&](const std::array<int, 2>& b) {
    return sensor_name(b[0]) + sensor_name(b[1]);
  };

  std::vector<PciRow> rows;
  const std::vector<std::vector<int>> flip_sets = {{1}, {1, 2}, {1, 2, 3}};
  for (const auto& flips : flip_sets) {
    PciRow row;
    for (int s : flips) row.flipped.push_back(sensor_name(s));
    auto flipped = [&](int s) {
      return std::find(flips.begin(), flips.end(), s) != flips.end();
    };
    for (std::size_t m = 0; m < metas.size(); ++m) {
      const Pair& p = metas[m];
      // The 2-blade constituent is itself symmetric: it flips iff exactly
      // one of its two base sensors flips.
      bool blade_flips = (static_cast<int>(flipped(p.blade[0])) +
                          static_cast<int>(flipped(p.blade[1]))) == 1;
      bool lone_flips = flipped(p.lone);
      row.columns[2 * m] = blade_label(p.blade);
      row.columns[2 * m + 1] = sensor_name(p.lone);
      row.cell_flips[2 * m] = blade_flips;
      row.cell_flips[2 * m + 1] = lone_flips;
      bool meta_flips =
          (static_cast<int>(blade_flips) + static_cast<int>(lone_flips)) == 1;
      row.meta_flips[m] = meta_flips;
      if (meta_flips) ++row.total;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* to_string(TransformKind k) {
  return k == TransformKind::reflection ? "reflection" : "rotation";
}

TransformKind classify_transformation(const std::set<std::string>& flipped) {
  if (flipped.empty())
    throw Error("classification needs at least one flipped sensor");
  for (const auto& name : flipped)
    if (name != "s1" && name != "s2" && name != "s3")
      throw Error("flips must come from {s1, s2, s3}, got " + name);
  return flipped.size() % 2 == 1 ? TransformKind::reflection
                                 : TransformKind::rotation;
}

}  // namespace pw
