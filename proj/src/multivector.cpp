#include "phaseweb/multivector.hpp"

#include <algorithm>

namespace pw {

namespace {

void check_same_universe(const Multivector& a, const Multivector& b) {
  if (a.universe() != b.universe())
    throw UniverseMismatch(a.universe(), b.universe());
}

void check_signature_covers(const Signature& sig, const Multivector& a) {
  if (sig.dimension() < a.universe())
    throw Error("signature covers " + std::to_string(sig.dimension()) +
                " sensors, universe has " + std::to_string(a.universe()));
}

}  // namespace

Multivector Multivector::blade(int universe, const std::vector<int>& indices,
                               Z3 c) {
  Multivector m(universe);
  BladeMask mask = 0;
  for (int i : indices) {
    if (i < 1 || i > universe)
      throw Error("sensor index " + std::to_string(i) +
                  " outside universe of size " + std::to_string(universe));
    BladeMask bit = basis_blade(i);
    if (mask & bit)
      throw Error("repeated sensor index " + std::to_string(i) +
                  " in canonical blade");
    mask |= bit;
  }
  m.accumulate(mask, c);
  return m;
}

Multivector Multivector::from_mask(int universe, BladeMask mask, Z3 c) {
  Multivector m(universe);
  m.check_blade_fits(mask);
  m.accumulate(mask, c);
  return m;
}

void Multivector::check_blade_fits(BladeMask b) const {
  if (universe_ < kMaxUniverse && (b >> universe_) != 0)
    throw Error("blade " + blade_name(b) + " outside universe of size " +
                std::to_string(universe_));
}

void Multivector::accumulate(BladeMask b, Z3 c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int Multivector::max_grade() const {
  int g = 0;
  for (const auto& [b, c] : terms_) g = std::max(g, grade(b));
  return g;
}

Multivector Multivector::scaled(Z3 c) const {
  Multivector out(universe_);
  if (c.is_zero()) return out;
  for (const auto& [b, coeff] : terms_) out.terms_.emplace(b, coeff * c);
  return out;
}

Multivector operator+(const Multivector& a, const Multivector& b) {
  check_same_universe(a, b);
  Multivector out = a;
  for (const auto& [blade, c] : b.terms_) out.accumulate(blade, c);
  return out;
}

std::string Multivector::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<BladeMask, Z3>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    if (grade(x.first) != grade(y.first))
      return grade(x.first) < grade(y.first);
    return blade_lex_less(x.first, y.first);
  });
  std::string out;
  for (const auto& [b, c] : sorted) {
    if (!out.empty()) out += " + ";
    if (b == 0) {
      out += c == Z3::one() ? "1" : "-1";
    } else {
      if (c == Z3::minus_one()) out += '~';
      out += blade_name(b);
    }
  }
  return out;
}

Multivector geometric_product(const Multivector& a, const Multivector& b,
                              const Signature& sig) {
  check_same_universe(a, b);
  check_signature_covers(sig, a);
  Multivector out(a.universe());
  for (const auto& [ba, ca] : a.terms_)
    for (const auto& [bb, cb] : b.terms_)
      out.accumulate(ba ^ bb, ca * cb * blade_product_sign(ba, bb, sig));
  return out;
}

std::pair<Multivector, Multivector> inner_outer(const Multivector& a,
                                                const Multivector& b,
                                                const Signature& sig) {
  check_same_universe(a, b);
  check_signature_covers(sig, a);
  Multivector inner(a.universe());
  Multivector outer(a.universe());
  for (const auto& [ba, ca] : a.terms_)
    for (const auto& [bb, cb] : b.terms_) {
      Z3 c = ca * cb * blade_product_sign(ba, bb, sig);
      // No shared factor: the grades add and the term is the outer part.
      // Any contraction drops the grade below maximal.
      if ((ba & bb) == 0)
        outer.accumulate(ba ^ bb, c);
      else
        inner.accumulate(ba ^ bb, c);
    }
  return {inner, outer};
}

Multivector reverse(const Multivector& a) {
  Multivector out(a.universe());
  for (const auto& [b, c] : a.terms_)
    out.terms_.emplace(b, c * reversal_sign(grade(b)));
  return out;
}

Multivector apply_action(const Multivector& spinor, const Multivector& state,
                         const Signature& sig) {
  auto term = spinor.single_term();
  if (!term || grade(term->first) < 2)
    throw Error("action spinor must be a single blade of grade >= 2, got " +
                spinor.str());
  return geometric_product(geometric_product(spinor, state, sig),
                           reverse(spinor), sig);
}

Multivector grade_project(const Multivector& a, int g) {
  if (g < 0 || g > a.universe())
    throw Error("grade " + std::to_string(g) + " out of range for universe " +
                std::to_string(a.universe()));
  Multivector out(a.universe());
  for (const auto& [b, c] : a.terms_)
    if (grade(b) == g) out.terms_.emplace(b, c);
  return out;
}

}  // namespace pw
