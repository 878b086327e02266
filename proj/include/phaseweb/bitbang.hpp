#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "phaseweb/multivector.hpp"
#include "phaseweb/signature.hpp"

namespace pw {

// One step of the void derivation. Every justification is a Z3 identity
// that is re-evaluated through the algebra when the step is built; no
// step carries a hand-asserted truth value.
struct DerivationStep {
  int index = 0;
  std::string symbol;         // Void, 1_0, ~1_0, 1_1, 1_2
  std::string rule;           // void-split | mod3-sum | arity1-coex | true-coex
  std::string justification;  // the identity checked, in expression syntax
  bool holds = false;
  std::string shadow;         // algebra shadow of the symbol (display form)
  std::string commentary;
};

// The five steps from the void to the first spinor: splitting the void,
// naming sameness, closing grade 0 with 1+1 = -1, the arity-1
// co-exclusion that yields the first variable, and the true co-exclusion
// whose shadow squares to -1.
std::vector<DerivationStep> derive();

// The branch that starts from 0 = ~0 instead: oppositeness first, then
// sameness, rejoining the main line at step 2.
std::vector<DerivationStep> derive_alternate_branch();

struct QuaternionRelation {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool holds = false;
};

struct QuaternionReport {
  std::array<Multivector, 3> e;
  std::vector<QuaternionRelation> relations;  // the nine defining relations
  bool all_hold = false;
};

// Verifies e_i^2 = -1, anti-commutation, and the cyclic products
// e1e2 = e3, e2e3 = e1, e3e1 = e2 for three distinct grade-2 blades over
// {s1, s2, s3} under the given signature.
QuaternionReport quaternion_check(const Signature& sig,
                                  const std::array<Multivector, 3>& mapping);

// (s1s2, s2s3, s3s1): the cyclic assignment; satisfies all nine relations
// under the all-minus signature.
std::array<Multivector, 3> cyclic_mapping();

// (s1s2, s2s3, s1s3): index-sorted assignment; satisfies all nine under
// the all-plus signature.
std::array<Multivector, 3> ascending_mapping();

// One of the eight orientation states of the three spinors
// (s1s2, s2s3, s3s1); the index reads the bits as binary with -1 as 0.
struct SpinorState {
  int index = 0;
  std::array<int, 3> bits{};  // each +1 or -1

  int parity() const { return bits[0] * bits[1] * bits[2]; }
};

// All eight states, listed from index 7 down to 0.
std::vector<SpinorState> spinor_states();

struct Tetrahedra {
  std::array<std::array<int, 4>, 2> families{};  // state indices, ascending
  std::array<int, 2> parity{};                   // constant within a family
};

// Partition of the eight states under the two-flip adjacency relation:
// two disjoint tetrahedra of opposite handedness.
Tetrahedra tetrahedra();

// Edges of the one-flip transition graph (the unit cube; no state
// compression).
std::vector<std::pair<int, int>> one_flip_edges();

// The two-flip transition graph that carves out the tetrahedra.
std::vector<std::pair<int, int>> two_flip_edges();

// One row of the mixed-level flip table for the meta-sensors
// P = (s1s2|s3), C = (s2s3|s1), I = (s3s1|s2).
struct PciRow {
  std::vector<std::string> flipped;        // base sensors that flip
  std::array<std::string, 6> columns{};    // constituent names
  std::array<bool, 6> cell_flips{};        // per-constituent flips
  std::array<bool, 3> meta_flips{};        // P, C, I
  int total = 0;
};

// The three rows (one, two, and three base flips), computed by applying
// the symmetric rule at both levels.
std::vector<PciRow> pci_table();

enum class TransformKind { reflection, rotation };

const char* to_string(TransformKind k);

// Odd flip counts reflect both coordinate systems; a two-flip is a pure
// rotation of the base frame.
TransformKind classify_transformation(const std::set<std::string>& flipped);

}  // namespace pw
