#include "phaseweb/reports.hpp"

#include <sstream>

namespace pw {

Json multivector_json(const Multivector& m) {
  Json terms = Json::array();
  // Grade-major, lexicographic within a grade, mirroring str().
  std::vector<std::pair<BladeMask, Z3>> sorted(m.terms().begin(),
                                               m.terms().end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    if (grade(x.first) != grade(y.first))
      return grade(x.first) < grade(y.first);
    return blade_lex_less(x.first, y.first);
  });
  for (const auto& [b, c] : sorted) {
    Json term;
    term["blade"] = blade_name(b);
    term["indices"] = blade_indices(b);
    term["coeff"] = c.as_int();
    terms.push_back(term);
  }
  Json out;
  out["expr"] = m.str();
  out["universe"] = m.universe();
  out["terms"] = terms;
  return out;
}

Json matrix_json(const Gf3Matrix& m, int grade_from, int grade_to,
                 int universe) {
  Json out;
  out["universe"] = universe;
  out["grade_from"] = grade_from;
  out["grade_to"] = grade_to;
  auto names = [&](int g) {
    Json arr = Json::array();
    for (BladeMask b : blades_of_grade(universe, g)) arr.push_back(blade_name(b));
    return arr;
  };
  out["rows"] = names(grade_to);
  out["cols"] = names(grade_from);
  Json entries = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    entries.push_back(row);
  }
  out["entries"] = entries;
  return out;
}

Json ladder_json(const LadderReport& report) {
  Json rungs = Json::array();
  for (const auto& r : report.rungs) {
    Json rung;
    rung["grade"] = r.grade;
    rung["dim"] = r.dim;
    rung["boundary_rank"] = r.boundary_rank;
    rung["boundary_kernel_dim"] = r.boundary_kernel_dim;
    rung["coboundary_rank"] = r.coboundary_rank;
    rung["coboundary_kernel_dim"] = r.coboundary_kernel_dim;
    rung["reduced_homology_dim"] = r.reduced_homology_dim;
    rung["kernel_overlap_dim"] = r.kernel_overlap_dim;
    rungs.push_back(rung);
  }
  Json out;
  out["universe"] = report.universe;
  out["rungs"] = rungs;
  return out;
}

std::string ladder_dot(const LadderReport& report) {
  std::ostringstream os;
  os << "digraph ladder {\n  rankdir=BT;\n";
  for (const auto& r : report.rungs) {
    os << "  chain_" << r.grade << " [label=\"C" << r.grade
       << " dim=" << r.dim << " ker=" << r.boundary_kernel_dim << "\"];\n";
    os << "  cochain_" << r.grade << " [label=\"D" << r.grade
       << " dim=" << r.dim << " ker=" << r.coboundary_kernel_dim << "\"];\n";
    os << "  chain_" << r.grade << " -> cochain_" << r.grade
       << " [dir=both, style=dashed, label=\"overlap="
       << r.kernel_overlap_dim << "\"];\n";
  }
  for (const auto& r : report.rungs) {
    if (r.grade == 0) continue;
    os << "  chain_" << r.grade << " -> chain_" << r.grade - 1
       << " [label=\"d rank=" << r.boundary_rank << "\"];\n";
    os << "  cochain_" << r.grade - 1 << " -> cochain_" << r.grade
       << " [label=\"delta\"];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

Json constituent_json(const ConstituentRef& c) {
  Json out;
  out["kind"] = c.node.kind == NodeRef::Kind::sensor ? "sensor" : "meta";
  out["name"] = c.name;
  out["level"] = c.level;
  return out;
}

}  // namespace

Json registry_json(const Registry& reg) {
  Json sensors = Json::array();
  for (std::size_t i = 0; i < reg.sensor_count(); ++i) {
    const SensorNode& s = reg.sensor(i);
    Json node;
    node["name"] = s.name;
    node["index"] = s.index;
    node["orientation"] = s.orientation;
    sensors.push_back(node);
  }
  Json metas = Json::array();
  for (std::size_t i = 0; i < reg.meta_count(); ++i) {
    const MetaSensor& m = reg.meta(i);
    Json node;
    node["action_id"] = action_id_hex(m.action_id);
    node["dual_id"] = m.dual_id;
    node["name"] = m.name();
    node["level"] = m.level;
    node["kind"] = to_string(m.kind);
    node["orientation"] = m.orientation;
    Json constituents = Json::array();
    for (const auto& c : m.constituents) constituents.push_back(constituent_json(c));
    node["constituents"] = constituents;
    node["shadow"] = blade_name(m.shadow);
    metas.push_back(node);
  }
  Json out;
  out["sensors"] = sensors;
  out["metas"] = metas;
  return out;
}

std::string registry_dot(const Registry& reg) {
  std::ostringstream os;
  os << "digraph registry {\n";
  for (std::size_t i = 0; i < reg.sensor_count(); ++i)
    os << "  \"" << reg.sensor(i).name << "\" [shape=box];\n";
  for (std::size_t i = 0; i < reg.meta_count(); ++i) {
    const MetaSensor& m = reg.meta(i);
    os << "  \"" << m.name() << "\" [label=\"" << m.name() << "\\nlevel "
       << m.level << " " << to_string(m.kind) << "\"];\n";
    for (const auto& c : m.constituents)
      os << "  \"" << c.name << "\" -> \"" << m.name() << "\";\n";
  }
  os << "}\n";
  return os.str();
}

Json trickle_json(const Goal& goal, const TrickleResult& result,
                  std::uint64_t seed, const Registry& reg) {
  Json out;
  out["target"] = reg.node_name(goal.target);
  out["desired"] = goal.desired;
  out["seed"] = seed;
  out["budget"] = goal.budget;
  out["status"] = to_string(result.status);
  out["budget_left"] = result.budget_left;
  Json trace = Json::array();
  for (const auto& step : result.trace) {
    Json s;
    s["depth"] = step.depth;
    s["node"] = step.node;
    s["desired"] = step.desired;
    s["outcome"] = step.outcome;
    trace.push_back(s);
  }
  out["trace"] = trace;
  return out;
}

namespace {

Json step_json(const DerivationStep& s) {
  Json out;
  out["index"] = s.index;
  out["symbol"] = s.symbol;
  out["rule"] = s.rule;
  out["justification"] = s.justification;
  out["holds"] = s.holds;
  out["shadow"] = s.shadow;
  out["commentary"] = s.commentary;
  return out;
}

}  // namespace

Json derivation_json() {
  Json steps = Json::array();
  for (const auto& s : derive()) steps.push_back(step_json(s));
  Json branch = Json::array();
  for (const auto& s : derive_alternate_branch()) branch.push_back(step_json(s));
  Json out;
  out["steps"] = steps;
  out["alternate_branch"] = branch;
  return out;
}

Json quaternion_json(const QuaternionReport& report, int sig_sign) {
  Json out;
  out["signature"] = sig_sign;
  Json mapping;
  mapping["e1"] = report.e[0].str();
  mapping["e2"] = report.e[1].str();
  mapping["e3"] = report.e[2].str();
  out["mapping"] = mapping;
  Json relations = Json::array();
  for (const auto& r : report.relations) {
    Json rel;
    rel["name"] = r.name;
    rel["lhs"] = r.lhs;
    rel["rhs"] = r.rhs;
    rel["holds"] = r.holds;
    relations.push_back(rel);
  }
  out["relations"] = relations;
  out["all_hold"] = report.all_hold;
  return out;
}

Json spinor_table_json() {
  Json states = Json::array();
  for (const auto& s : spinor_states()) {
    Json row;
    row["index"] = s.index;
    row["s1s2"] = s.bits[0];
    row["s2s3"] = s.bits[1];
    row["s3s1"] = s.bits[2];
    row["parity"] = s.parity();
    states.push_back(row);
  }
  Tetrahedra t = tetrahedra();
  Json out;
  out["states"] = states;
  out["families"] = Json::array({t.families[0], t.families[1]});
  out["family_parity"] = Json::array({t.parity[0], t.parity[1]});
  Json pairs = Json::array();
  for (auto [a, b] : std::vector<std::pair<int, int>>{{7, 0}, {6, 1}, {5, 2}, {4, 3}})
    pairs.push_back(Json::array({a, b}));
  out["coexclusion_pairs"] = pairs;
  return out;
}

std::string tetra_dot() {
  Tetrahedra t = tetrahedra();
  std::ostringstream os;
  os << "graph tetrahedra {\n";
  for (int f = 0; f < 2; ++f) {
    os << "  subgraph cluster_" << f << " {\n    label=\"parity "
       << t.parity[static_cast<std::size_t>(f)] << "\";\n";
    for (int v : t.families[static_cast<std::size_t>(f)])
      os << "    " << v << ";\n";
    os << "  }\n";
  }
  for (auto [a, b] : two_flip_edges()) os << "  " << a << " -- " << b << ";\n";
  os << "}\n";
  return os.str();
}

Json pci_json() {
  Json rows = Json::array();
  const std::array<std::string, 3> names = {"P", "C", "I"};
  for (const auto& row : pci_table()) {
    Json r;
    r["flipped"] = row.flipped;
    Json cells = Json::array();
    for (std::size_t i = 0; i < row.columns.size(); ++i) {
      Json cell;
      cell["constituent"] = row.columns[i];
      cell["flips"] = row.cell_flips[i];
      cells.push_back(cell);
    }
    r["cells"] = cells;
    Json metas;
    for (std::size_t i = 0; i < names.size(); ++i)
      metas[names[i]] = row.meta_flips[i];
    r["meta_flips"] = metas;
    r["total"] = row.total;
    rows.push_back(r);
  }
  Json out;
  out["meta_sensors"] = {{"P", "s1s2|s3"}, {"C", "s2s3|s1"}, {"I", "s3s1|s2"}};
  out["rows"] = rows;
  return out;
}

Json ch_table_json(int levels) {
  Json rows = Json::array();
  for (const auto& row : ch_table(levels)) {
    Json r;
    r["level"] = row.level;
    r["symbols_b"] = big_to_string(row.symbols_b);
    r["cumulative_c"] = big_to_string(row.cumulative_c);
    if (row.cumulative_c > BigInt(1000000000000000LL))
      r["cumulative_c_approx"] = big_to_scientific(row.cumulative_c);
    r["map_dim_d"] = big_to_string(row.map_dim_d);
    r["map_elements_e"] = big_to_string(row.map_elements_e);
    r["comment"] = row.comment;
    r["cutoff"] = row.cutoff;
    rows.push_back(r);
  }
  Json out;
  out["rows"] = rows;
  out["footnote"] =
      "Counts are exact integers. The corrected constants 137.0359674 and "
      "1.69358e38 rest on adjustments outside this enumeration and are "
      "deliberately not reproduced; only the integer cumulative counts "
      "are.";
  return out;
}

Json dcs_json(int generators) {
  Json sets = Json::array();
  for (const auto& dcs : enumerate_dcs(generators)) {
    Json s;
    Json gens = Json::array();
    for (int bit = 0; bit < generators; ++bit)
      if (dcs.generators & (1u << bit)) gens.push_back("s" + std::to_string(bit + 1));
    s["generators"] = gens;
    Json elems = Json::array();
    for (std::uint32_t v : dcs.elements) {
      std::string name;
      for (int bit = 0; bit < generators; ++bit)
        if (v & (1u << bit)) name += "s" + std::to_string(bit + 1);
      elems.push_back(name);
    }
    s["elements"] = elems;
    s["size"] = dcs.elements.size();
    sets.push_back(s);
  }
  Json out;
  out["basis"] = generators;
  out["count"] = sets.size();
  out["sets"] = sets;
  return out;
}

Json dcs_listing_json() {
  Json levels = Json::array();
  for (const auto& level : z3_dcs_listing()) {
    Json l;
    l["level"] = level.level;
    Json entries = Json::array();
    for (const auto& e : level.entries) {
      Json entry;
      entry["elements"] = e.elements;
      entry["closed"] = e.closed;
      entries.push_back(entry);
    }
    l["entries"] = entries;
    levels.push_back(l);
  }
  Json out;
  out["levels"] = levels;
  return out;
}

}  // namespace pw
