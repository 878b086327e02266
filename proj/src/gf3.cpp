#include "phaseweb/gf3.hpp"

#include <algorithm>

#include "phaseweb/error.hpp"

namespace pw {

namespace {

// Row echelon form in place; returns the pivot column of each pivot row.
std::vector<int> eliminate(std::vector<Gf3Vector>& rows, int cols) {
  std::vector<int> pivot_cols;
  int pivot_row = 0;
  for (int col = 0; col < cols && pivot_row < static_cast<int>(rows.size());
       ++col) {
    int found = -1;
    for (int r = pivot_row; r < static_cast<int>(rows.size()); ++r)
      if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] !=
          0) {
        found = r;
        break;
      }
    if (found < 0) continue;
    std::swap(rows[static_cast<std::size_t>(pivot_row)],
              rows[static_cast<std::size_t>(found)]);
    auto& prow = rows[static_cast<std::size_t>(pivot_row)];
    // Normalize the pivot to 1 (2 is its own inverse mod 3).
    std::uint8_t p = prow[static_cast<std::size_t>(col)];
    if (p == 2)
      for (auto& x : prow) x = static_cast<std::uint8_t>((x * 2) % 3);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == pivot_row) continue;
      auto& row = rows[static_cast<std::size_t>(r)];
      std::uint8_t f = row[static_cast<std::size_t>(col)];
      if (f == 0) continue;
      std::uint8_t neg = static_cast<std::uint8_t>((3 - f) % 3);
      for (int c = 0; c < cols; ++c)
        row[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(
            (row[static_cast<std::size_t>(c)] +
             neg * prow[static_cast<std::size_t>(c)]) %
            3);
    }
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  return pivot_cols;
}

std::vector<Gf3Vector> matrix_rows(const Gf3Matrix& m) {
  std::vector<Gf3Vector> rows;
  rows.reserve(static_cast<std::size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) {
    Gf3Vector row(static_cast<std::size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c)
      row[static_cast<std::size_t>(c)] = m.at(r, c);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Gf3Matrix Gf3Matrix::transpose() const {
  Gf3Matrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.a_[out.index(c, r)] = at(r, c);
  return out;
}

bool Gf3Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::uint8_t x) { return x == 0; });
}

Gf3Matrix operator*(const Gf3Matrix& a, const Gf3Matrix& b) {
  if (a.cols_ != b.rows_)
    throw Error("matrix shape mismatch: " + std::to_string(a.cols_) +
                " vs " + std::to_string(b.rows_));
  Gf3Matrix out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      std::uint8_t f = a.at(r, k);
      if (f == 0) continue;
      for (int c = 0; c < b.cols_; ++c)
        out.a_[out.index(r, c)] = static_cast<std::uint8_t>(
            (out.a_[out.index(r, c)] + f * b.at(k, c)) % 3);
    }
  return out;
}

int Gf3Matrix::rank() const {
  auto rows = matrix_rows(*this);
  return static_cast<int>(eliminate(rows, cols_).size());
}

std::vector<Gf3Vector> Gf3Matrix::null_space() const {
  auto rows = matrix_rows(*this);
  auto pivot_cols = eliminate(rows, cols_);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
  for (int c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Gf3Vector> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Gf3Vector v(static_cast<std::size_t>(cols_), 0);
    v[static_cast<std::size_t>(free)] = 1;
    // Back-substitute: pivot variable = -(row entry at the free column).
    for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
      std::uint8_t entry = rows[p][static_cast<std::size_t>(free)];
      v[static_cast<std::size_t>(pivot_cols[p])] =
          static_cast<std::uint8_t>((3 - entry) % 3);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Gf3Vector Gf3Matrix::apply(const Gf3Vector& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw Error("vector length " + std::to_string(v.size()) +
                " does not match " + std::to_string(cols_) + " columns");
  Gf3Vector out(static_cast<std::size_t>(rows_), 0);
  for (int r = 0; r < rows_; ++r) {
    int acc = 0;
    for (int c = 0; c < cols_; ++c)
      acc += at(r, c) * v[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(acc % 3);
  }
  return out;
}

int span_intersection_dim(const std::vector<Gf3Vector>& u,
                          const std::vector<Gf3Vector>& w, int length) {
  auto rank_of = [length](std::vector<Gf3Vector> rows) {
    return static_cast<int>(eliminate(rows, length).size());
  };
  std::vector<Gf3Vector> stacked = u;
  stacked.insert(stacked.end(), w.begin(), w.end());
  return rank_of(u) + rank_of(w) - rank_of(stacked);
}

}  // namespace pw
