#pragma once

#include <cstdint>
#include <vector>

#include "phaseweb/z3.hpp"

namespace pw {

using Gf3Vector = std::vector<std::uint8_t>;

// Dense matrix over GF(3), row-major, entries stored as residues 0..2.
// Sized for chain-complex work (dimensions are binomial coefficients of
// small universes), so plain Gaussian elimination is all we need.
class Gf3Matrix {
 public:
  Gf3Matrix(int rows, int cols)
      : rows_(rows),
        cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
           0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::uint8_t at(int r, int c) const { return a_[index(r, c)]; }
  void set(int r, int c, Z3 v) { a_[index(r, c)] = v.residue(); }
  void set(int r, int c, int v) { a_[index(r, c)] = Z3::of(v).residue(); }

  Gf3Matrix transpose() const;
  bool is_zero() const;

  friend Gf3Matrix operator*(const Gf3Matrix& a, const Gf3Matrix& b);
  friend bool operator==(const Gf3Matrix& a, const Gf3Matrix& b) = default;

  // Rank over GF(3) by Gaussian elimination.
  int rank() const;

  // Basis of the right null space; each vector has cols() entries.
  std::vector<Gf3Vector> null_space() const;

  Gf3Vector apply(const Gf3Vector& v) const;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_;
  int cols_;
  std::vector<std::uint8_t> a_;
};

// Dimension of span(rows of each block) intersection, used for the
// ladder's kernel-overlap report: dim(U ∩ W) = dim U + dim W - dim(U + W).
int span_intersection_dim(const std::vector<Gf3Vector>& u,
                          const std::vector<Gf3Vector>& w, int length);

}  // namespace pw
