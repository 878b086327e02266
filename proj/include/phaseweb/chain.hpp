#pragma once

#include <vector>

#include "phaseweb/gf3.hpp"
#include "phaseweb/multivector.hpp"

namespace pw {

// Boundary operator: on a grade-m blade, the alternating sum of its m
// grade-(m-1) subblades (drop one factor at a time, in order); a basis
// sensor maps to the scalar 1 (the augmentation) and the scalar to 0.
// Extended Z3-linearly. The sign alternation is built in, so no metric
// signature enters.
Multivector boundary(const Multivector& a);

// Coboundary: the adjoint of the boundary under the blade-orthonormal
// pairing of the n-sensor universe. The coefficient of a grade-(g+1)
// blade B in the output is the pairing of boundary(B) with the input.
// Terms of grade n are rejected: there is no room to increase arity.
Multivector coboundary(const Multivector& a, int universe);

// Matrix of the boundary at grade g: C(n,g-1) rows by C(n,g) columns,
// blades enumerated in lexicographic order on both axes.
Gf3Matrix boundary_matrix(int g, int universe);

// Matrix of the coboundary at grade g, i.e. the transpose of the
// boundary matrix one grade up. For g = n it is the zero map (0 rows).
Gf3Matrix coboundary_matrix(int g, int universe);

// Variant boundary that drops two factors at a time with no sign
// alternation; kept for completeness, not used by any identity here.
Gf3Matrix pair_drop_matrix(int g, int universe);

struct LadderRung {
  int grade = 0;
  int dim = 0;                   // C(n, grade)
  int boundary_rank = 0;         // rank of the grade-lowering map
  int boundary_kernel_dim = 0;
  int coboundary_rank = 0;       // rank of the grade-raising map
  int coboundary_kernel_dim = 0;
  int reduced_homology_dim = 0;  // ker(boundary) mod im(boundary from above)
  int kernel_overlap_dim = 0;    // dim(ker boundary ∩ ker coboundary)
};

struct LadderReport {
  int universe = 0;
  std::vector<LadderRung> rungs;  // grades 0..n
};

// Ranks, kernels, reduced homology and kernel overlaps at every grade of
// the full chain complex over GF(3). The overlap column is descriptive:
// no identity is claimed for it. Supported for 1 <= n <= 8.
LadderReport ladder_report(int universe);

// Checks the volumetric decomposition identity
//   boundary(s_i s_j s_k) = -[boundary(s_i s_j)s_k + boundary(s_j s_k)s_i
//                             + boundary(s_k s_i)s_j]
// with geometric products over Z3.
bool coex_identity_check(int i, int j, int k, int universe,
                         const Signature& sig);

inline bool coex_identity_check(int universe, const Signature& sig) {
  return coex_identity_check(1, 2, 3, universe, sig);
}

}  // namespace pw
