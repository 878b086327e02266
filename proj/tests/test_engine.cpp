#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "phaseweb/engine.hpp"

using namespace pw;

namespace {

using Key = std::pair<std::uint64_t, std::string>;

// Independent discovery oracle: a pairwise scan over the whole trace.
// Pair (i, j) is a discovery iff it fits in the window and no later event
// re-flipped either sensor in between.
std::set<Key> oracle_pairs(const std::vector<Event>& trace, double window) {
  std::set<Key> out;
  for (std::size_t j = 0; j < trace.size(); ++j) {
    std::set<std::string> seen{trace[j].sensor};
    for (std::size_t step = 1; step <= j; ++step) {
      std::size_t i = j - step;
      if (trace[j].t - trace[i].t > window) break;
      if (!seen.insert(trace[i].sensor).second) continue;
      std::vector<std::pair<std::string, int>> named = {
          {trace[i].sensor, trace[i].orientation},
          {trace[j].sensor, trace[j].orientation}};
      std::sort(named.begin(), named.end());
      out.emplace(action_id({named[0].first, named[1].first}),
                  dual_id({named[0].second, named[1].second}));
    }
  }
  return out;
}

// Random flip-valid trace: every event really flips its sensor.
std::vector<Event> random_trace(std::mt19937_64& rng, int sensors,
                                int events) {
  std::vector<Event> trace;
  std::map<std::string, int> state;
  std::uniform_int_distribution<int> pick(1, sensors);
  std::uniform_real_distribution<double> gap(0.0, 1.0);
  double t = 0.0;
  for (int i = 0; i < events; ++i) {
    t += gap(rng);
    std::string name = "s" + std::to_string(pick(rng));
    int& current = state.try_emplace(name, -1).first->second;
    current = -current;
    trace.push_back(Event{name, current, t});
  }
  return trace;
}

}  // namespace

TEST_CASE("action digests ignore constituent order") {
  CHECK(action_id({"s1", "s2"}) == action_id({"s2", "s1"}));
  CHECK(action_id({"s1", "s2"}) != action_id({"s1", "s3"}));
  std::vector<std::string> names = {"a", "b", "c"};
  std::uint64_t reference = action_id(names);
  std::sort(names.begin(), names.end());
  do {
    CHECK(action_id(names) == reference);
  } while (std::next_permutation(names.begin(), names.end()));
  CHECK_THROWS_AS(action_id({"s1"}), Error);
  CHECK_THROWS_AS(action_id({}), Error);
}

TEST_CASE("dual patterns normalize the leading polarity") {
  CHECK(dual_id({+1, -1}) == "+-");
  CHECK(dual_id({-1, +1}) == "+-");
  CHECK(dual_id({-1, -1}) == "++");
  CHECK(dual_id({+1, +1}) == "++");
  CHECK(dual_id({-1}) == "+");
  CHECK_THROWS_AS(dual_id({}), Error);
  CHECK_THROWS_AS(dual_id({0, 1}), Error);
}

TEST_CASE("simultaneous flips in a zero window co-exclude") {
  Engine engine(0.0, 2);
  CHECK(engine.ingest(Event{"s1", +1, 5.0}).empty());
  auto fresh = engine.ingest(Event{"s2", +1, 5.0});
  REQUIRE(fresh.size() == 1);
  const MetaSensor& m = *fresh[0];
  CHECK(m.dual_id == "++");
  CHECK(m.level == 1);
  CHECK(m.kind == HierKind::pancake);
  CHECK(m.orientation == +1);
  CHECK(m.arity() == 2);
  CHECK(m.action_id == action_id({"s1", "s2"}));
  CHECK(m.shadow == (basis_blade(1) | basis_blade(2)));
}

TEST_CASE("an expired window blocks discovery") {
  Engine engine(1.0, 2);
  engine.ingest(Event{"s1", +1, 0.0});
  CHECK(engine.ingest(Event{"s2", +1, 10.0}).empty());
  CHECK(engine.registry().meta_count() == 0);
}

TEST_CASE("timestamps must be monotone") {
  Engine engine(1.0, 2);
  engine.ingest(Event{"s1", +1, 5.0});
  CHECK_THROWS_AS(engine.ingest(Event{"s2", +1, 4.0}), Error);
  CHECK_THROWS_AS(engine.ingest(Event{"s2", +1, -1.0}), Error);
}

TEST_CASE("an event must flip its sensor") {
  Engine engine(1.0, 2);
  engine.ingest(Event{"s1", +1, 0.0});
  CHECK_THROWS_AS(engine.ingest(Event{"s1", +1, 1.0}), Error);
  CHECK_NOTHROW(engine.ingest(Event{"s1", -1, 2.0}));
}

TEST_CASE("a re-flip replaces the stale resident") {
  // s1's second flip supersedes the first, so only the fresh polarity
  // pairs with s2.
  Engine engine(10.0, 2);
  engine.ingest(Event{"s1", +1, 0.0});
  engine.ingest(Event{"s1", -1, 1.0});
  auto fresh = engine.ingest(Event{"s2", +1, 2.0});
  REQUIRE(fresh.size() == 1);
  CHECK(fresh[0]->dual_id == "+-");  // (s1 -1, s2 +1) normalized
  CHECK(engine.buffer().residents().size() == 2);
}

TEST_CASE("buffer never holds more residents than distinct sensors") {
  std::mt19937_64 rng(47);
  Engine engine(3.0, 2);
  for (const Event& e : random_trace(rng, 6, 500)) {
    engine.ingest(e);
    CHECK(engine.buffer().residents().size() <= 6);
  }
}

TEST_CASE("replaying a balanced trace registers nothing new") {
  std::vector<Event> trace = {
      {"s1", +1, 0.0}, {"s2", +1, 0.0}, {"s1", -1, 1.0}, {"s2", -1, 1.0}};
  Engine engine(0.0, 2);
  for (const Event& e : trace) engine.ingest(e);
  std::size_t first_pass = engine.registry().meta_count();
  CHECK(first_pass == 1);  // both pairs share one (action, dual)
  for (Event e : trace) {
    e.t += 2.0;
    CHECK(engine.ingest(e).empty());
  }
  CHECK(engine.registry().meta_count() == first_pass);
}

TEST_CASE("discoveries carry sound witnesses") {
  std::mt19937_64 rng(53);
  Engine engine(0.5, 2);
  for (const Event& e : random_trace(rng, 8, 1500)) engine.ingest(e);
  const Registry& reg = engine.registry();
  REQUIRE(reg.meta_count() > 0);
  for (std::size_t i = 0; i < reg.meta_count(); ++i) {
    const MetaSensor& m = reg.meta(i);
    REQUIRE(m.witnesses.size() == 2);
    CHECK(std::abs(m.witnesses[0].t - m.witnesses[1].t) <= 0.5);
    CHECK(m.witnesses[0].sensor != m.witnesses[1].sensor);
  }
}

TEST_CASE("discovery equals the pairwise oracle on random traces") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(seed);
    auto trace = random_trace(rng, 10, 2000);
    for (double window : {0.0, 0.5, 5.0}) {
      Engine engine(window, 2);
      for (const Event& e : trace) engine.ingest(e);
      CHECK(engine.registry().keys() == oracle_pairs(trace, window));
    }
  }
}

TEST_CASE("arity-3 discovery joins a full buffer subset") {
  Engine engine(0.0, 3);
  engine.ingest(Event{"s1", +1, 1.0});
  CHECK(engine.ingest(Event{"s2", +1, 1.0}).empty());
  auto fresh = engine.ingest(Event{"s3", +1, 1.0});
  REQUIRE(fresh.size() == 1);
  CHECK(fresh[0]->arity() == 3);
  CHECK(fresh[0]->dual_id == "+++");
  CHECK(engine.registry().meta_count() == 1);
}

TEST_CASE("arity-free mode instantiates every subset") {
  Engine engine(0.0, 0);
  engine.ingest(Event{"s1", +1, 1.0});
  engine.ingest(Event{"s2", +1, 1.0});
  engine.ingest(Event{"s3", +1, 1.0});
  // {s1,s2}, {s1,s3}, {s2,s3}, {s1,s2,s3}.
  CHECK(engine.registry().meta_count() == 4);
}

TEST_CASE("manual co-exclusion builds blade shadows by join") {
  Registry reg;
  NodeRef s1 = reg.declare_sensor("s1");
  NodeRef s2 = reg.declare_sensor("s2");
  NodeRef s3 = reg.declare_sensor("s3");

  const MetaSensor& m12 = coexclude(reg, {s1, s2}, {+1, +1});
  CHECK(m12.shadow == (basis_blade(1) | basis_blade(2)));

  NodeRef m12_ref = *reg.find_meta(m12.action_id, m12.dual_id);
  const MetaSensor& volume = coexclude(reg, {m12_ref, s3}, {+1, +1});
  CHECK(volume.shadow ==
        (basis_blade(1) | basis_blade(2) | basis_blade(3)));
  CHECK(volume.level == 2);
  CHECK(volume.kind == HierKind::ortho);  // skips level 1 for s3

  // The pairwise join over overlapping 2-blades lands on the volume.
  const MetaSensor& m23 = coexclude(reg, {s2, s3}, {+1, +1});
  const MetaSensor& m13 = coexclude(reg, {s1, s3}, {+1, +1});
  NodeRef r23 = *reg.find_meta(m23.action_id, m23.dual_id);
  NodeRef r13 = *reg.find_meta(m13.action_id, m13.dual_id);
  const MetaSensor& joined =
      coexclude(reg, {m12_ref, r23, r13}, {+1, +1, +1});
  CHECK(joined.shadow == (basis_blade(1) | basis_blade(2) | basis_blade(3)));
}

TEST_CASE("arity-1 co-exclusion is allowed for the derivation") {
  Registry reg;
  NodeRef s1 = reg.declare_sensor("s1");
  const MetaSensor& m = coexclude(reg, {s1}, {+1});
  CHECK(m.arity() == 1);
  CHECK(m.dual_id == "+");
  CHECK(m.level == 1);
}

TEST_CASE("duplicate registration returns the existing node") {
  Registry reg;
  NodeRef s1 = reg.declare_sensor("s1");
  NodeRef s2 = reg.declare_sensor("s2");
  const MetaSensor& first = coexclude(reg, {s1, s2}, {+1, -1});
  const MetaSensor& again = coexclude(reg, {s2, s1}, {-1, +1});
  CHECK(&first == &again);
  CHECK(reg.meta_count() == 1);
  CHECK_THROWS_AS(coexclude(reg, {s1, s1}, {+1, -1}), Error);
}

TEST_CASE("symmetric propagation truth table") {
  // All four input patterns for a 2-action.
  for (bool flip1 : {false, true})
    for (bool flip2 : {false, true}) {
      Registry reg;
      NodeRef s1 = reg.declare_sensor("s1");
      NodeRef s2 = reg.declare_sensor("s2");
      coexclude(reg, {s1, s2}, {+1, +1});
      std::vector<std::string> flips;
      if (flip1) flips.push_back("s1");
      if (flip2) flips.push_back("s2");
      int before = reg.meta(0).orientation;
      auto changed = propagate(reg, flips);
      bool expect_flip = flip1 != flip2;
      CHECK((reg.meta(0).orientation != before) == expect_flip);
      CHECK(changed.size() == (expect_flip ? 1 : 0));
    }
}

TEST_CASE("propagation twice is the identity") {
  Registry reg;
  NodeRef s1 = reg.declare_sensor("s1");
  NodeRef s2 = reg.declare_sensor("s2");
  coexclude(reg, {s1, s2}, {+1, +1});
  int before = reg.meta(0).orientation;
  propagate(reg, {"s1"});
  propagate(reg, {"s1"});
  CHECK(reg.meta(0).orientation == before);
  CHECK(reg.sensor(0).orientation == +1);
}

TEST_CASE("propagation cascades level by level") {
  Registry reg;
  NodeRef s1 = reg.declare_sensor("s1");
  NodeRef s2 = reg.declare_sensor("s2");
  NodeRef s3 = reg.declare_sensor("s3");
  const MetaSensor& m12 = coexclude(reg, {s1, s2}, {+1, +1});
  NodeRef m12_ref = *reg.find_meta(m12.action_id, m12.dual_id);
  coexclude(reg, {m12_ref, s3}, {+1, +1});

  // One base flip climbs both levels.
  auto changed = propagate(reg, {"s1"});
  CHECK(changed.size() == 2);
  CHECK(reg.meta(0).orientation == -1);
  CHECK(reg.meta(1).orientation == -1);

  // Flipping s1 and s3 together flips the bottom meta and leaves the top
  // unchanged (both of its constituents moved).
  Registry reg2;
  NodeRef t1 = reg2.declare_sensor("s1");
  NodeRef t2 = reg2.declare_sensor("s2");
  NodeRef t3 = reg2.declare_sensor("s3");
  const MetaSensor& n12 = coexclude(reg2, {t1, t2}, {+1, +1});
  NodeRef n12_ref = *reg2.find_meta(n12.action_id, n12.dual_id);
  coexclude(reg2, {n12_ref, t3}, {+1, +1});
  auto changed2 = propagate(reg2, {"s1", "s3"});
  CHECK(changed2.size() == 1);
  CHECK(reg2.meta(0).orientation == -1);
  CHECK(reg2.meta(1).orientation == +1);

  CHECK(propagate(reg2, {}).empty());
  CHECK_THROWS_AS(propagate(reg2, {"nope"}), Error);
}

TEST_CASE("level registration rules") {
  Registry reg;
  auto pancake = register_level(
      reg, HierKind::pancake,
      {{NodeClass::sensor, 0}, {NodeClass::sensor, 0}});
  CHECK(pancake.level == 1);

  auto morphic = register_level(
      reg, HierKind::morphic, {{NodeClass::sensor, 1}, {NodeClass::goal, 1}});
  CHECK(morphic.level == 2);
  CHECK(morphic.kind == HierKind::morphic);

  auto icarian = register_level(
      reg, HierKind::icarian, {{NodeClass::goal, 0}, {NodeClass::goal, 1}});
  CHECK(icarian.level == 2);

  auto ortho = register_level(
      reg, HierKind::ortho, {{NodeClass::sensor, 0}, {NodeClass::sensor, 2}});
  CHECK(ortho.level == 3);

  CHECK_THROWS_AS(register_level(reg, HierKind::pancake,
                                 {{NodeClass::sensor, 0}, {NodeClass::sensor, 1}}),
                  Error);
  CHECK_THROWS_AS(register_level(reg, HierKind::icarian,
                                 {{NodeClass::sensor, 0}, {NodeClass::goal, 0}}),
                  Error);
  CHECK_THROWS_AS(register_level(reg, HierKind::morphic,
                                 {{NodeClass::goal, 0}, {NodeClass::goal, 0}}),
                  Error);
  // Explicit target at or below a source.
  CHECK_THROWS_AS(register_level(reg, HierKind::ortho,
                                 {{NodeClass::sensor, 0}, {NodeClass::sensor, 1}},
                                 1),
                  Error);
  CHECK(reg.levels().size() == 4);
}

TEST_CASE("a free goal satisfies with one base subgoal") {
  Registry reg;
  NodeRef s1 = reg.declare_sensor("s1");
  NodeRef s2 = reg.declare_sensor("s2");
  const MetaSensor& m = coexclude(reg, {s1, s2}, {+1, +1});
  Goal goal{*reg.find_meta(m.action_id, m.dual_id), -1, GoalStatus::pending, 5};
  TrickleResult result = trickle(reg, goal, 42);
  CHECK(result.status == GoalStatus::satisfied);
  CHECK(result.budget_left == 4);
  int issued = 0;
  for (const auto& step : result.trace)
    if (step.outcome == "issued") ++issued;
  CHECK(issued == 1);
  CHECK(reg.meta(0).orientation == -1);
}

TEST_CASE("an already satisfied goal does nothing") {
  Registry reg;
  NodeRef s1 = reg.declare_sensor("s1");
  NodeRef s2 = reg.declare_sensor("s2");
  const MetaSensor& m = coexclude(reg, {s1, s2}, {+1, +1});
  Goal goal{*reg.find_meta(m.action_id, m.dual_id), +1, GoalStatus::pending, 5};
  TrickleResult result = trickle(reg, goal, 1);
  CHECK(result.status == GoalStatus::satisfied);
  CHECK(result.trace.empty());
  CHECK(result.budget_left == 5);
}

TEST_CASE("frozen sensors exhaust the budget") {
  Registry reg;
  NodeRef s1 = reg.declare_sensor("s1");
  NodeRef s2 = reg.declare_sensor("s2");
  const MetaSensor& m = coexclude(reg, {s1, s2}, {+1, +1});
  Goal goal{*reg.find_meta(m.action_id, m.dual_id), -1, GoalStatus::pending, 6};
  TrickleResult result = trickle(reg, goal, 7, {"s1", "s2"});
  CHECK(result.status == GoalStatus::abandoned);
  CHECK(result.budget_left == 0);
  bool any_refused = false;
  for (const auto& step : result.trace)
    if (step.outcome == "refused") any_refused = true;
  CHECK(any_refused);
}

TEST_CASE("zero budget abandons immediately") {
  Registry reg;
  NodeRef s1 = reg.declare_sensor("s1");
  NodeRef s2 = reg.declare_sensor("s2");
  const MetaSensor& m = coexclude(reg, {s1, s2}, {+1, +1});
  Goal goal{*reg.find_meta(m.action_id, m.dual_id), -1, GoalStatus::pending, 0};
  TrickleResult result = trickle(reg, goal, 3);
  CHECK(result.status == GoalStatus::abandoned);
  CHECK(result.trace.empty());
}

TEST_CASE("trickling is deterministic for a fixed seed") {
  auto run = [](std::uint64_t seed) {
    Registry reg;
    NodeRef s1 = reg.declare_sensor("s1");
    NodeRef s2 = reg.declare_sensor("s2");
    NodeRef s3 = reg.declare_sensor("s3");
    const MetaSensor& m12 = coexclude(reg, {s1, s2}, {+1, +1});
    NodeRef m12_ref = *reg.find_meta(m12.action_id, m12.dual_id);
    const MetaSensor& top = coexclude(reg, {m12_ref, s3}, {+1, +1});
    Goal goal{*reg.find_meta(top.action_id, top.dual_id), -1,
              GoalStatus::pending, 8};
    return trickle(reg, goal, seed);
  };
  for (std::uint64_t seed : {0ULL, 9ULL, 77ULL}) {
    TrickleResult a = run(seed);
    TrickleResult b = run(seed);
    CHECK(a.status == b.status);
    CHECK(a.budget_left == b.budget_left);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      CHECK(a.trace[i].node == b.trace[i].node);
      CHECK(a.trace[i].outcome == b.trace[i].outcome);
    }
    CHECK(a.status == GoalStatus::satisfied);
  }
}

TEST_CASE("a shared descendant forces the retry path") {
  // top = (m1, m2) with m1 = (a, b), m2 = (a, c): flipping a moves both
  // constituents, so the first subgoal cannot satisfy top by itself.
  Registry reg;
  NodeRef a = reg.declare_sensor("a");
  NodeRef b = reg.declare_sensor("b");
  NodeRef c = reg.declare_sensor("c");
  const MetaSensor& m1 = coexclude(reg, {a, b}, {+1, +1});
  const MetaSensor& m2 = coexclude(reg, {a, c}, {+1, +1});
  NodeRef r1 = *reg.find_meta(m1.action_id, m1.dual_id);
  NodeRef r2 = *reg.find_meta(m2.action_id, m2.dual_id);
  const MetaSensor& top = coexclude(reg, {r1, r2}, {+1, +1});
  Goal goal{*reg.find_meta(top.action_id, top.dual_id), -1,
            GoalStatus::pending, 16};
  // Freeze a: subgoals must route through b or c, which satisfies.
  TrickleResult frozen_a = trickle(reg, goal, 5, {"a"});
  CHECK(frozen_a.status == GoalStatus::satisfied);
}

TEST_CASE("goal targets must exist") {
  Registry reg;
  reg.declare_sensor("s1");
  Goal goal{NodeRef{NodeRef::Kind::meta, 3}, -1, GoalStatus::pending, 2};
  CHECK_THROWS_AS(trickle(reg, goal, 0), Error);
}
