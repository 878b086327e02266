#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phaseweb/blade.hpp"
#include "phaseweb/error.hpp"
#include "phaseweb/signature.hpp"
#include "phaseweb/z3.hpp"

namespace pw {

// A multivector over Z3: a finite map from canonical blades to nonzero
// coefficients, tagged with the size of the ambient sensor universe.
// Values are immutable once built; every operation returns a fresh value,
// so multivectors can be shared freely across threads.
//
// Equality compares term maps only. The universe tag is a compatibility
// check for binary operations (and fixes the ambient basis for the
// coboundary adjoint), not part of the algebraic value.
class Multivector {
 public:
  explicit Multivector(int universe = 0) : universe_(check_universe(universe)) {}

  static Multivector zero(int universe) { return Multivector(universe); }

  static Multivector scalar(int universe, Z3 c) {
    Multivector m(universe);
    m.accumulate(0, c);
    return m;
  }

  // Basis sensor s_index, 1-based.
  static Multivector basis(int universe, int index) {
    return blade(universe, {index});
  }

  static Multivector blade(int universe, std::initializer_list<int> indices,
                           Z3 c = Z3::one()) {
    return blade(universe, std::vector<int>(indices), c);
  }

  static Multivector blade(int universe, const std::vector<int>& indices,
                           Z3 c = Z3::one());

  static Multivector from_mask(int universe, BladeMask mask,
                               Z3 c = Z3::one());

  int universe() const { return universe_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<BladeMask, Z3>& terms() const { return terms_; }

  Z3 coeff(BladeMask b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Z3::zero() : it->second;
  }

  // The single (blade, coefficient) term, if there is exactly one.
  std::optional<std::pair<BladeMask, Z3>> single_term() const {
    if (terms_.size() != 1) return std::nullopt;
    return *terms_.begin();
  }

  int max_grade() const;

  Multivector scaled(Z3 c) const;

  friend Multivector operator+(const Multivector& a, const Multivector& b);
  friend Multivector operator-(const Multivector& a) {
    return a.scaled(Z3::minus_one());
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.terms_ == b.terms_;
  }

  // Canonical display, grade-major then lexicographic, e.g. "~s1 + s2".
  // Round-trips through parse_expression.
  std::string str() const;

 private:
  static int check_universe(int n) {
    if (n < 0 || n > kMaxUniverse)
      throw Error("universe size out of range: " + std::to_string(n));
    return n;
  }

  void check_blade_fits(BladeMask b) const;
  void accumulate(BladeMask b, Z3 c);

  int universe_;
  std::map<BladeMask, Z3> terms_;

  friend Multivector geometric_product(const Multivector&, const Multivector&,
                                       const Signature&);
  friend std::pair<Multivector, Multivector> inner_outer(const Multivector&,
                                                         const Multivector&,
                                                         const Signature&);
  friend Multivector reverse(const Multivector&);
  friend Multivector grade_project(const Multivector&, int);
  friend Multivector boundary(const Multivector&);
  friend Multivector coboundary(const Multivector&, int);
};

// Clifford product, bilinear over the blade product. Anti-commutative on
// distinct basis sensors, associative, contracting repeated sensors
// through the signature.
Multivector geometric_product(const Multivector& a, const Multivector& b,
                              const Signature& sig);

// Splits the geometric product of each term pair into its contraction
// part (lowest grade) and its contraction-free part (highest grade,
// the outer product). The two pieces always sum to the full product;
// for grade-1 arguments this is the classic ab = a.b + a^b split.
std::pair<Multivector, Multivector> inner_outer(const Multivector& a,
                                                const Multivector& b,
                                                const Signature& sig);

// Reverses the factor order of every blade: grade m picks up
// (-1)^(m(m-1)/2).
Multivector reverse(const Multivector& a);

// Inner automorphism: spinor * state * reverse(spinor). The spinor must
// be a single blade of grade >= 2 (a sign is tolerated).
Multivector apply_action(const Multivector& spinor, const Multivector& state,
                         const Signature& sig);

// Terms of grade g only.
Multivector grade_project(const Multivector& a, int g);

}  // namespace pw
