#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phaseweb/blade.hpp"
#include "phaseweb/error.hpp"

namespace pw {

// A sensor flip: the sensor's new orientation and when it happened.
// Timestamps are dimensionless and must arrive monotone non-decreasing.
struct Event {
  std::string sensor;
  int orientation = +1;  // new value, +1 or -1
  double t = 0.0;
};

enum class HierKind { pancake, ortho, icarian, morphic };
enum class NodeClass { sensor, goal };

const char* to_string(HierKind k);
const char* to_string(NodeClass c);

// Reference into the registry: either a base sensor or a meta-sensor.
struct NodeRef {
  enum class Kind { sensor, meta };
  Kind kind = Kind::sensor;
  std::size_t index = 0;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
  friend bool operator<(const NodeRef& a, const NodeRef& b) {
    return a.kind != b.kind ? a.kind < b.kind : a.index < b.index;
  }
};

struct ConstituentRef {
  NodeRef node;
  std::string name;  // node display name at link time
  int level = 0;
};

struct SensorNode {
  std::string name;
  int index = 0;        // 1-based basis index in declaration order
  int orientation = +1;
  bool seen = false;    // fixed by at least one event
};

// A discovered or constructed action. action_id is the order-insensitive
// digest of the constituent names; dual_id the normalized polarity
// pattern; together they name the node.
struct MetaSensor {
  std::uint64_t action_id = 0;
  std::string dual_id;
  std::vector<ConstituentRef> constituents;  // sorted by name
  int level = 1;
  HierKind kind = HierKind::pancake;
  int orientation = +1;  // the designation at registration is arbitrary
  BladeMask shadow = 0;  // union of constituent shadows
  std::vector<Event> witnesses;  // events behind a buffer discovery

  int arity() const { return static_cast<int>(constituents.size()); }
  std::string name() const;  // "<hex action_id>:<dual_id>"
};

// Order-insensitive digest over constituent names (per-name hash combined
// with a commutative, associative sum over 64 bits). Requires at least
// two names; the arity-1 variant used by the void derivation lives on
// coexclude directly.
std::uint64_t action_id(const std::vector<std::string>& names);

// Normalized polarity pattern: if the first polarity is -1, the whole
// pattern is negated, so "+..." always. Errors on empty input.
std::string dual_id(const std::vector<int>& polarities);

std::string action_id_hex(std::uint64_t id);

// Construction rule for one hierarchy level over earlier ones.
struct LevelSource {
  NodeClass cls = NodeClass::sensor;
  int level = 0;
};

struct LevelDescriptor {
  int id = 0;
  int level = 0;
  HierKind kind = HierKind::pancake;
  std::vector<LevelSource> sources;
};

// Holds every declared sensor and registered meta-sensor. Single-writer:
// one mutating call at a time; reads may be concurrent between writes.
class Registry {
 public:
  // Idempotent; assigns the next basis index on first sight. At most 63
  // sensors, so every node keeps an exact blade shadow.
  NodeRef declare_sensor(const std::string& name);

  std::optional<NodeRef> find_sensor(const std::string& name) const;
  std::optional<NodeRef> find_meta(std::uint64_t action,
                                   const std::string& dual) const;
  std::optional<NodeRef> find_node(const std::string& display_name) const;

  const SensorNode& sensor(std::size_t i) const { return sensors_[i]; }
  SensorNode& sensor(std::size_t i) { return sensors_[i]; }
  const MetaSensor& meta(std::size_t i) const { return metas_[i]; }
  MetaSensor& meta(std::size_t i) { return metas_[i]; }

  std::size_t sensor_count() const { return sensors_.size(); }
  std::size_t meta_count() const { return metas_.size(); }

  int node_orientation(NodeRef ref) const;
  std::string node_name(NodeRef ref) const;
  int node_level(NodeRef ref) const;
  BladeMask node_shadow(NodeRef ref) const;

  const std::vector<LevelDescriptor>& levels() const { return levels_; }

  // Set of (action_id, dual_id) keys, the registry's identity for
  // equality checks against oracles.
  std::set<std::pair<std::uint64_t, std::string>> keys() const;

 private:
  friend const MetaSensor& coexclude(Registry&, const std::vector<NodeRef>&,
                                     const std::vector<int>&);
  friend LevelDescriptor register_level(Registry&, HierKind,
                                        const std::vector<LevelSource>&,
                                        std::optional<int>);
  friend std::vector<NodeRef> propagate(Registry&,
                                        const std::vector<std::string>&);

  std::deque<SensorNode> sensors_;
  std::deque<MetaSensor> metas_;
  std::map<std::string, std::size_t> sensor_by_name_;
  std::map<std::pair<std::uint64_t, std::string>, std::size_t> meta_by_key_;
  std::vector<LevelDescriptor> levels_;
};

// Registers the co-exclusion of the given constituents under its
// (action_id, dual_id); returns the existing node when already known.
// Arity 1 is permitted (the void derivation's first co-exclusion);
// everything else needs two or more distinct constituents. The shadow is
// the join (index-set union) of the constituent shadows, which for
// disjoint constituents is their blade product.
const MetaSensor& coexclude(Registry& reg,
                            const std::vector<NodeRef>& constituents,
                            const std::vector<int>& polarities);

// Declares a hierarchy level: pancake is built from two sensor levels
// immediately below, icarian from goal nodes only, morphic from a mix,
// ortho from any sensor levels below. Source levels must lie strictly
// under the target.
LevelDescriptor register_level(Registry& reg, HierKind kind,
                               const std::vector<LevelSource>& sources,
                               std::optional<int> target_level = std::nullopt);

// State propagation up the hierarchy. Three encodings are possible for
// how a 2-action's orientation bit tracks its constituents:
//
//   1. Flip when both constituents flip. This pins the orientation to one
//      dual pair and leaves the other dual's states unrepresented; a
//      distinct meta-sensor per dual restores them but gives up the state
//      compression, and the missing dual may not even have been
//      discovered yet.
//   2. Flip when exactly one constituent flips (the symmetric rule). One
//      orientation per dual; which state inside the dual stays ambiguous,
//      and a simultaneous flip of both constituents leaves the action
//      still. Works precisely because a 2-action has exactly two duals.
//   3. Mirror the orientation of one designated constituent. Resolves
//      nothing the symmetric rule doesn't, forces an arbitrary choice of
//      constituent, and makes every level ape the base sensors instead of
//      the exclusions it abstracts.
//
// Only the symmetric rule is implemented; its phase ambiguity doubles as
// a model of non-deterministic outcomes, and it keeps the
// spinor-fixing identity s1s2(s1s2 + s1 + s2)s2s1 = s1s2 + ~s1 + ~s2
// intact. Arity-2 discovery is the supported propagation path; wider
// co-exclusions stay registered but do not propagate.
//
// Flips the given base sensors, then walks the hierarchy bottom-up
// flipping every arity-2 meta-sensor with exactly one flipped
// constituent. Returns the meta-sensors that flipped.
std::vector<NodeRef> propagate(Registry& reg,
                               const std::vector<std::string>& flipped);

// Sliding time window over sensor flips: at most one resident per sensor,
// every resident within `window` of the newest event.
class EventBuffer {
 public:
  EventBuffer(double window, int arity);

  double window() const { return window_; }
  int arity() const { return arity_; }
  const std::deque<Event>& residents() const { return residents_; }

 private:
  friend class Engine;
  double window_;
  int arity_;  // 0 = arity-free (capped)
  std::deque<Event> residents_;
  double last_t_ = 0.0;
  bool any_ = false;
};

// The discovery mechanism: every event passes through the buffer; every
// co-resident (arity-1)-subset certifies a co-exclusion with the new
// event, because each resident just changed state, so its negation held
// before. Work per event is proportional to the buffer, which is bounded
// by the number of distinct sensors.
class Engine {
 public:
  // arity >= 2 discovers fixed-arity co-exclusions; arity 0 instantiates
  // co-exclusions of every arity over the buffer, hard-capped per event.
  Engine(double window, int arity);

  static constexpr int kArityFreeCap = 256;

  // Returns the newly registered meta-sensors, in registration order.
  // Throws on a timestamp running backwards or an event that does not
  // flip its sensor.
  std::vector<const MetaSensor*> ingest(const Event& e);

  Registry& registry() { return registry_; }
  const Registry& registry() const { return registry_; }
  const EventBuffer& buffer() const { return buffer_; }

 private:
  EventBuffer buffer_;
  Registry registry_;
};

enum class GoalStatus { pending, satisfied, abandoned };

const char* to_string(GoalStatus s);

// A goal asks a node to change its orientation; satisfaction is best
// effort, bounded by a decomposition budget.
struct Goal {
  NodeRef target;
  int desired = +1;
  GoalStatus status = GoalStatus::pending;
  int budget = 0;
};

struct TrickleStep {
  int depth = 0;
  std::string node;
  int desired = +1;
  std::string outcome;  // issued | flipped | refused
};

struct TrickleResult {
  GoalStatus status = GoalStatus::pending;
  int budget_left = 0;
  std::vector<TrickleStep> trace;
};

// Recursive goal decomposition under the symmetric model: a meta-sensor
// goal issues a subgoal to one constituent (seeded pseudo-random draw),
// then to the other if the parent is still unsatisfied; each issued
// subgoal costs one budget unit. Frozen sensors refuse to move. A subgoal
// is dropped as soon as its parent is satisfied or the budget runs out.
// Deterministic for a given seed.
TrickleResult trickle(Registry& reg, Goal goal, std::uint64_t seed,
                      const std::set<std::string>& frozen = {});

}  // namespace pw
