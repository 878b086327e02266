#include "phaseweb/engine.hpp"

#include <algorithm>
#include <random>

namespace pw {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finalizer; spreads the per-name digests before the
  // commutative sum so anagram-ish name sets stay apart.
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine_names(const std::vector<std::string>& names) {
  std::uint64_t acc = 0;
  for (const auto& n : names) acc += mix(fnv1a(n));  // wrapping sum
  return acc;
}

}  // namespace

const char* to_string(HierKind k) {
  switch (k) {
    case HierKind::pancake: return "pancake";
    case HierKind::ortho: return "ortho";
    case HierKind::icarian: return "icarian";
    case HierKind::morphic: return "morphic";
  }
  return "?";
}

const char* to_string(NodeClass c) {
  return c == NodeClass::sensor ? "sensor" : "goal";
}

const char* to_string(GoalStatus s) {
  switch (s) {
    case GoalStatus::pending: return "pending";
    case GoalStatus::satisfied: return "satisfied";
    case GoalStatus::abandoned: return "abandoned";
  }
  return "?";
}

std::string action_id_hex(std::uint64_t id) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[id & 0xf];
    id >>= 4;
  }
  return out;
}

std::string MetaSensor::name() const {
  return action_id_hex(action_id) + ":" + dual_id;
}

std::uint64_t action_id(const std::vector<std::string>& names) {
  if (names.size() < 2)
    throw Error("action_id needs at least 2 constituent names, got " +
                std::to_string(names.size()));
  return combine_names(names);
}

std::string dual_id(const std::vector<int>& polarities) {
  if (polarities.empty()) throw Error("dual_id needs a non-empty pattern");
  int flip = polarities.front() == -1 ? -1 : +1;
  std::string out;
  out.reserve(polarities.size());
  for (int p : polarities) {
    if (p != 1 && p != -1)
      throw Error("polarities must be +1 or -1, got " + std::to_string(p));
    out += (p * flip) == 1 ? '+' : '-';
  }
  return out;
}

NodeRef Registry::declare_sensor(const std::string& name) {
  if (name.empty()) throw Error("sensor name must be non-empty");
  auto it = sensor_by_name_.find(name);
  if (it != sensor_by_name_.end())
    return NodeRef{NodeRef::Kind::sensor, it->second};
  if (sensors_.size() >= static_cast<std::size_t>(kMaxUniverse))
    throw Error("registry supports at most 63 base sensors");
  SensorNode node;
  node.name = name;
  node.index = static_cast<int>(sensors_.size()) + 1;
  sensors_.push_back(node);
  std::size_t i = sensors_.size() - 1;
  sensor_by_name_.emplace(name, i);
  return NodeRef{NodeRef::Kind::sensor, i};
}

std::optional<NodeRef> Registry::find_sensor(const std::string& name) const {
  auto it = sensor_by_name_.find(name);
  if (it == sensor_by_name_.end()) return std::nullopt;
  return NodeRef{NodeRef::Kind::sensor, it->second};
}

std::optional<NodeRef> Registry::find_meta(std::uint64_t action,
                                           const std::string& dual) const {
  auto it = meta_by_key_.find({action, dual});
  if (it == meta_by_key_.end()) return std::nullopt;
  return NodeRef{NodeRef::Kind::meta, it->second};
}

std::optional<NodeRef> Registry::find_node(const std::string& display) const {
  if (auto s = find_sensor(display)) return s;
  auto colon = display.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::uint64_t action = 0;
  for (char c : display.substr(0, colon)) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else return std::nullopt;
    action = (action << 4) | static_cast<std::uint64_t>(digit);
  }
  return find_meta(action, display.substr(colon + 1));
}

int Registry::node_orientation(NodeRef ref) const {
  return ref.kind == NodeRef::Kind::sensor ? sensors_[ref.index].orientation
                                           : metas_[ref.index].orientation;
}

std::string Registry::node_name(NodeRef ref) const {
  return ref.kind == NodeRef::Kind::sensor ? sensors_[ref.index].name
                                           : metas_[ref.index].name();
}

int Registry::node_level(NodeRef ref) const {
  return ref.kind == NodeRef::Kind::sensor ? 0 : metas_[ref.index].level;
}

BladeMask Registry::node_shadow(NodeRef ref) const {
  return ref.kind == NodeRef::Kind::sensor
             ? basis_blade(sensors_[ref.index].index)
             : metas_[ref.index].shadow;
}

std::set<std::pair<std::uint64_t, std::string>> Registry::keys() const {
  std::set<std::pair<std::uint64_t, std::string>> out;
  for (const auto& [key, idx] : meta_by_key_) {
    (void)idx;
    out.insert(key);
  }
  return out;
}

const MetaSensor& coexclude(Registry& reg,
                            const std::vector<NodeRef>& constituents,
                            const std::vector<int>& polarities) {
  if (constituents.empty())
    throw Error("coexclude needs at least one constituent");
  if (constituents.size() != polarities.size())
    throw Error("coexclude: one polarity per constituent");

  // Canonical order: by display name. The digest does not care, the dual
  // pattern does.
  std::vector<std::size_t> order(constituents.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return reg.node_name(constituents[a]) < reg.node_name(constituents[b]);
  });

  std::vector<std::string> names;
  std::vector<int> pattern;
  std::vector<ConstituentRef> refs;
  int level = 0;
  BladeMask shadow = 0;
  for (std::size_t i : order) {
    NodeRef ref = constituents[i];
    std::string name = reg.node_name(ref);
    if (!names.empty() && names.back() == name)
      throw Error("coexclude constituents must be distinct, got duplicate " +
                  name);
    names.push_back(name);
    pattern.push_back(polarities[i]);
    refs.push_back(ConstituentRef{ref, name, reg.node_level(ref)});
    level = std::max(level, reg.node_level(ref));
    shadow |= reg.node_shadow(ref);
  }
  level += 1;

  std::uint64_t action = combine_names(names);
  std::string dual = dual_id(pattern);
  if (auto existing = reg.find_meta(action, dual))
    return reg.metas_[existing->index];

  MetaSensor meta;
  meta.action_id = action;
  meta.dual_id = dual;
  meta.constituents = std::move(refs);
  meta.level = level;
  // Pancake when everything sits one level down; anything that skips
  // levels is an ortho construction.
  bool flat = std::all_of(
      meta.constituents.begin(), meta.constituents.end(),
      [&](const ConstituentRef& c) { return c.level == level - 1; });
  meta.kind = flat ? HierKind::pancake : HierKind::ortho;
  meta.orientation = +1;
  meta.shadow = shadow;
  reg.metas_.push_back(std::move(meta));
  std::size_t idx = reg.metas_.size() - 1;
  reg.meta_by_key_.emplace(std::make_pair(action, dual), idx);
  return reg.metas_[idx];
}

LevelDescriptor register_level(Registry& reg, HierKind kind,
                               const std::vector<LevelSource>& sources,
                               std::optional<int> target_level) {
  if (sources.size() < 2)
    throw Error("a hierarchy level is a product of at least two sources");
  int max_source = 0;
  for (const auto& s : sources) {
    if (s.level < 0) throw Error("source level must be non-negative");
    max_source = std::max(max_source, s.level);
  }
  int target = target_level.value_or(max_source + 1);
  for (const auto& s : sources)
    if (s.level >= target)
      throw Error("source level " + std::to_string(s.level) +
                  " must lie strictly below target level " +
                  std::to_string(target));

  auto all_class = [&](NodeClass cls) {
    return std::all_of(sources.begin(), sources.end(),
                       [&](const LevelSource& s) { return s.cls == cls; });
  };
  bool mixed = !all_class(NodeClass::sensor) && !all_class(NodeClass::goal);
  switch (kind) {
    case HierKind::pancake:
      if (!all_class(NodeClass::sensor))
        throw Error("pancake levels are built from sensor levels");
      for (const auto& s : sources)
        if (s.level != target - 1)
          throw Error("pancake levels are built from the level immediately "
                      "below; source at level " + std::to_string(s.level) +
                      ", target " + std::to_string(target));
      break;
    case HierKind::ortho:
      if (!all_class(NodeClass::sensor))
        throw Error("ortho levels are built from sensor levels");
      break;
    case HierKind::icarian:
      if (!all_class(NodeClass::goal))
        throw Error("icarian levels are built from goal levels only");
      break;
    case HierKind::morphic:
      if (!mixed)
        throw Error("morphic levels mix sensor and goal sources");
      break;
  }

  LevelDescriptor desc;
  desc.id = static_cast<int>(reg.levels_.size());
  desc.level = target;
  desc.kind = kind;
  desc.sources = sources;
  reg.levels_.push_back(desc);
  return desc;
}

std::vector<NodeRef> propagate(Registry& reg,
                               const std::vector<std::string>& flipped) {
  std::set<NodeRef> changed;
  for (const auto& name : flipped) {
    auto ref = reg.find_sensor(name);
    if (!ref) throw Error("unknown sensor in propagate: " + name);
    if (changed.count(*ref))
      throw Error("sensor listed twice in propagate: " + name);
    changed.insert(*ref);
    reg.sensors_[ref->index].orientation =
        -reg.sensors_[ref->index].orientation;
  }

  // Bottom-up: a node's constituents live strictly below it, so by the
  // time a level is visited every flip below is already known.
  int max_level = 0;
  for (const auto& m : reg.metas_) max_level = std::max(max_level, m.level);
  std::vector<NodeRef> result;
  for (int level = 1; level <= max_level; ++level) {
    for (std::size_t i = 0; i < reg.metas_.size(); ++i) {
      MetaSensor& m = reg.metas_[i];
      if (m.level != level || m.arity() != 2) continue;
      int flipped_constituents =
          static_cast<int>(changed.count(m.constituents[0].node)) +
          static_cast<int>(changed.count(m.constituents[1].node));
      if (flipped_constituents == 1) {
        m.orientation = -m.orientation;
        NodeRef ref{NodeRef::Kind::meta, i};
        changed.insert(ref);
        result.push_back(ref);
      }
    }
  }
  return result;
}

EventBuffer::EventBuffer(double window, int arity)
    : window_(window), arity_(arity) {
  if (window < 0) throw Error("window must be non-negative");
  if (arity != 0 && arity < 2)
    throw Error("discovery arity must be >= 2 (0 for arity-free)");
}

Engine::Engine(double window, int arity) : buffer_(window, arity) {}

std::vector<const MetaSensor*> Engine::ingest(const Event& e) {
  if (e.orientation != 1 && e.orientation != -1)
    throw Error("event orientation must be +1 or -1");
  if (e.t < 0) throw Error("event timestamps must be non-negative");
  if (buffer_.any_ && e.t < buffer_.last_t_)
    throw Error("event timestamps must be monotone non-decreasing: " +
                std::to_string(e.t) + " after " +
                std::to_string(buffer_.last_t_));

  NodeRef sref = registry_.declare_sensor(e.sensor);
  SensorNode& sensor = registry_.sensor(sref.index);
  if (sensor.seen && sensor.orientation == e.orientation)
    throw Error("event on " + e.sensor +
                " does not flip it: orientation already " +
                std::to_string(e.orientation));
  sensor.orientation = e.orientation;
  sensor.seen = true;
  buffer_.last_t_ = e.t;
  buffer_.any_ = true;

  // Age out stale residents, and the sensor's own previous entry: the
  // same event-state changed again.
  auto& residents = buffer_.residents_;
  while (!residents.empty() && e.t - residents.front().t > buffer_.window_)
    residents.pop_front();
  for (auto it = residents.begin(); it != residents.end(); ++it)
    if (it->sensor == e.sensor) {
      residents.erase(it);
      break;
    }

  // Everything still resident changed within the window of e, hence
  // "simultaneously": each (arity-1)-subset joins e in a co-exclusion.
  std::vector<const MetaSensor*> fresh;
  auto register_group = [&](const std::vector<const Event*>& group) {
    std::vector<NodeRef> refs;
    std::vector<int> pols;
    refs.reserve(group.size() + 1);
    for (const Event* ev : group) {
      refs.push_back(*registry_.find_sensor(ev->sensor));
      pols.push_back(ev->orientation);
    }
    refs.push_back(sref);
    pols.push_back(e.orientation);
    std::size_t before = registry_.meta_count();
    const MetaSensor& m = coexclude(registry_, refs, pols);
    if (registry_.meta_count() > before) {
      MetaSensor& stored = registry_.meta(registry_.meta_count() - 1);
      for (const Event* ev : group) stored.witnesses.push_back(*ev);
      stored.witnesses.push_back(e);
      fresh.push_back(&stored);
    } else {
      (void)m;
    }
  };

  int k = buffer_.arity_;
  if (k >= 2) {
    int pick = k - 1;
    if (static_cast<int>(residents.size()) >= pick) {
      // Enumerate (k-1)-subsets of the residents in entry order.
      std::vector<int> idx(static_cast<std::size_t>(pick));
      for (int i = 0; i < pick; ++i) idx[static_cast<std::size_t>(i)] = i;
      int n = static_cast<int>(residents.size());
      while (true) {
        std::vector<const Event*> group;
        group.reserve(static_cast<std::size_t>(pick));
        for (int i : idx)
          group.push_back(&residents[static_cast<std::size_t>(i)]);
        register_group(group);
        int pos = pick - 1;
        while (pos >= 0 &&
               idx[static_cast<std::size_t>(pos)] == n - (pick - pos))
          --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < pick; ++i)
          idx[static_cast<std::size_t>(i)] =
              idx[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
  } else {
    // Arity-free: all non-empty subsets of the residents join e, smallest
    // first, until the per-event cap cuts the combinatorial blow-up.
    int n = static_cast<int>(residents.size());
    int registered = 0;
    for (int size = 1; size <= n && registered < kArityFreeCap; ++size) {
      std::vector<int> idx(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
      while (registered < kArityFreeCap) {
        std::vector<const Event*> group;
        group.reserve(static_cast<std::size_t>(size));
        for (int i : idx)
          group.push_back(&residents[static_cast<std::size_t>(i)]);
        register_group(group);
        ++registered;
        int pos = size - 1;
        while (pos >= 0 &&
               idx[static_cast<std::size_t>(pos)] == n - (size - pos))
          --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < size; ++i)
          idx[static_cast<std::size_t>(i)] =
              idx[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
  }

  residents.push_back(e);
  return fresh;
}

namespace {

class Trickler {
 public:
  Trickler(Registry& reg, std::uint64_t seed,
           const std::set<std::string>& frozen)
      : reg_(reg), rng_(seed), frozen_(frozen) {}

  TrickleResult run(Goal goal) {
    TrickleResult result;
    budget_ = goal.budget;
    if (reg_.node_orientation(goal.target) == goal.desired) {
      result.status = GoalStatus::satisfied;
      result.budget_left = budget_;
      return result;
    }
    while (budget_ > 0) {
      int before = budget_;
      attempt(goal.target, goal.desired, 0);
      if (reg_.node_orientation(goal.target) == goal.desired) break;
      if (budget_ == before) break;  // no decomposition possible, give up
    }
    result.status = reg_.node_orientation(goal.target) == goal.desired
                        ? GoalStatus::satisfied
                        : GoalStatus::abandoned;
    result.budget_left = budget_;
    result.trace = std::move(trace_);
    return result;
  }

 private:
  void record(int depth, NodeRef node, int desired, const char* outcome) {
    trace_.push_back(
        TrickleStep{depth, reg_.node_name(node), desired, outcome});
  }

  void attempt(NodeRef node, int desired, int depth) {
    if (reg_.node_orientation(node) == desired) return;
    if (node.kind == NodeRef::Kind::sensor) {
      const std::string& name = reg_.sensor(node.index).name;
      if (frozen_.count(name)) {
        record(depth, node, desired, "refused");
        return;
      }
      propagate(reg_, {name});
      record(depth, node, desired, "flipped");
      return;
    }
    const MetaSensor& meta = reg_.meta(node.index);
    if (meta.arity() != 2)
      throw Error("symmetric trickling supports arity-2 meta-sensors; " +
                  meta.name() + " has arity " + std::to_string(meta.arity()));
    // One constituent suffices under the symmetric rule; draw which.
    std::size_t first = rng_() & 1;
    for (int tried = 0; tried < 2; ++tried) {
      if (reg_.node_orientation(node) == desired) return;  // retract rest
      if (budget_ == 0) return;
      --budget_;
      NodeRef child = meta.constituents[(first + static_cast<std::size_t>(
                                                     tried)) % 2].node;
      record(depth + 1, child, -reg_.node_orientation(child), "issued");
      attempt(child, -reg_.node_orientation(child), depth + 1);
    }
  }

  Registry& reg_;
  std::mt19937_64 rng_;
  const std::set<std::string>& frozen_;
  int budget_ = 0;
  std::vector<TrickleStep> trace_;
};

}  // namespace

TrickleResult trickle(Registry& reg, Goal goal, std::uint64_t seed,
                      const std::set<std::string>& frozen) {
  if (goal.budget < 0) throw Error("goal budget must be non-negative");
  if (goal.desired != 1 && goal.desired != -1)
    throw Error("desired orientation must be +1 or -1");
  if (goal.target.kind == NodeRef::Kind::meta &&
      goal.target.index >= reg.meta_count())
    throw Error("goal target does not exist");
  if (goal.target.kind == NodeRef::Kind::sensor &&
      goal.target.index >= reg.sensor_count())
    throw Error("goal target does not exist");
  return Trickler(reg, seed, frozen).run(goal);
}

}  // namespace pw
