#pragma once

#include <json.hpp>
#include <string>

#include "phaseweb/bitbang.hpp"
#include "phaseweb/chain.hpp"
#include "phaseweb/engine.hpp"
#include "phaseweb/hierarchy.hpp"
#include "phaseweb/multivector.hpp"

namespace pw {

// Everything the CLI prints funnels through these builders. ordered_json
// keeps insertion order, so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

Json multivector_json(const Multivector& m);
Json matrix_json(const Gf3Matrix& m, int grade_from, int grade_to,
                 int universe);
Json ladder_json(const LadderReport& report);
std::string ladder_dot(const LadderReport& report);

Json registry_json(const Registry& reg);
std::string registry_dot(const Registry& reg);
Json trickle_json(const Goal& goal, const TrickleResult& result,
                  std::uint64_t seed, const Registry& reg);

Json derivation_json();
Json quaternion_json(const QuaternionReport& report, int sig_sign);
Json spinor_table_json();
std::string tetra_dot();
Json pci_json();

Json ch_table_json(int levels);
Json dcs_json(int generators);
Json dcs_listing_json();

}  // namespace pw
