// Copyright 2026 The symtri Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "symtri/rational.hpp"

namespace symtri {

/// Sparse rational vector with sorted, unique, nonzero entries.
class SparseVec {
 public:
  using Index = std::uint32_t;
  using Entry = std::pair<Index, Rational>;

  SparseVec() = default;
  explicit SparseVec(std::size_t dim) : dim_(dim) {}

  /// Builds a vector from unsorted terms; repeated indices are summed and
  /// zeros dropped.
  static SparseVec from_terms(std::size_t dim, std::vector<Entry> terms) {
    for (const auto& [i, c] : terms)
      if (i >= dim) throw std::out_of_range("sparse index beyond dimension");
    std::sort(terms.begin(), terms.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVec v(dim);
    for (auto& [i, c] : terms) {
      if (!v.entries_.empty() && v.entries_.back().first == i) {
        v.entries_.back().second += c;
      } else {
        v.entries_.emplace_back(i, std::move(c));
      }
    }
    std::erase_if(v.entries_, [](const Entry& e) { return sgn(e.second) == 0; });
    return v;
  }

  static SparseVec from_dense(const std::vector<Rational>& dense) {
    SparseVec v(dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (sgn(dense[i]) != 0) v.entries_.emplace_back(static_cast<Index>(i), dense[i]);
    return v;
  }

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  Rational at(std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    return (it != entries_.end() && it->first == i) ? it->second : Rational(0);
  }

  std::vector<Rational> to_dense() const {
    std::vector<Rational> out(dim_);
    for (const auto& [i, c] : entries_) out[i] = c;
    return out;
  }

  Rational dot(const std::vector<Rational>& x) const {
    if (x.size() != dim_) throw std::invalid_argument("dimension mismatch in dot");
    Rational s = 0;
    for (const auto& [i, c] : entries_) s += c * x[i];
    return s;
  }

  SparseVec scaled(const Rational& k) const {
    SparseVec v(dim_);
    if (sgn(k) == 0) return v;
    v.entries_.reserve(entries_.size());
    for (const auto& [i, c] : entries_) v.entries_.emplace_back(i, c * k);
    return v;
  }

  /// Shifts every index by `offset` inside a space of dimension `dim`.
  SparseVec embedded(std::size_t dim, std::size_t offset) const {
    if (offset + dim_ > dim) throw std::out_of_range("embedding exceeds target dimension");
    SparseVec v(dim);
    v.entries_.reserve(entries_.size());
    for (const auto& [i, c] : entries_) v.entries_.emplace_back(static_cast<Index>(i + offset), c);
    return v;
  }

  friend SparseVec operator+(const SparseVec& a, const SparseVec& b) { return merge(a, b, 1); }
  friend SparseVec operator-(const SparseVec& a, const SparseVec& b) { return merge(a, b, -1); }
  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  /// True when no stored entry is zero and indices strictly increase.
  bool canonical() const {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (sgn(entries_[k].second) == 0 || entries_[k].first >= dim_) return false;
      if (k > 0 && entries_[k - 1].first >= entries_[k].first) return false;
    }
    return true;
  }

 private:
  static SparseVec merge(const SparseVec& a, const SparseVec& b, int sign) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("dimension mismatch in sparse add");
    SparseVec v(a.dim_);
    std::size_t i = 0, j = 0;
    while (i < a.entries_.size() || j < b.entries_.size()) {
      if (j == b.entries_.size() || (i < a.entries_.size() && a.entries_[i].first < b.entries_[j].first)) {
        v.entries_.push_back(a.entries_[i++]);
      } else if (i == a.entries_.size() || b.entries_[j].first < a.entries_[i].first) {
        Rational c = b.entries_[j].second;
        if (sign < 0) c = -c;
        v.entries_.emplace_back(b.entries_[j++].first, std::move(c));
      } else {
        Rational c = sign > 0 ? Rational(a.entries_[i].second + b.entries_[j].second)
                              : Rational(a.entries_[i].second - b.entries_[j].second);
        if (sgn(c) != 0) v.entries_.emplace_back(a.entries_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return v;
  }

  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

/// Exact linear combination sum_k c_k * row_k.
inline SparseVec row_combine(const std::vector<std::pair<Rational, SparseVec>>& rows) {
  if (rows.empty()) return SparseVec();
  const std::size_t dim = rows.front().second.dim();
  std::vector<SparseVec::Entry> terms;
  for (const auto& [c, row] : rows) {
    if (row.dim() != dim) throw std::invalid_argument("dimension mismatch in row_combine");
    if (sgn(c) == 0) continue;
    for (const auto& [i, v] : row) terms.emplace_back(i, c * v);
  }
  return SparseVec::from_terms(dim, std::move(terms));
}

/// Row-major sparse rational matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t cols) : cols_(cols) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const SparseVec& row(std::size_t i) const { return rows_[i]; }
  const std::vector<SparseVec>& row_list() const { return rows_; }

  void add_row(SparseVec r) {
    if (r.dim() != cols_) throw std::invalid_argument("row dimension does not match matrix");
    if (!r.canonical()) throw std::invalid_argument("row is not in canonical sparse form");
    rows_.push_back(std::move(r));
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.nnz();
    return n;
  }

  std::vector<Rational> multiply(const std::vector<Rational>& x) const {
    std::vector<Rational> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.dot(x));
    return out;
  }

  /// A^T y as a dense vector.
  std::vector<Rational> transpose_multiply(const std::vector<Rational>& y) const {
    if (y.size() != rows_.size()) throw std::invalid_argument("dimension mismatch in transpose_multiply");
    std::vector<Rational> out(cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (sgn(y[i]) == 0) continue;
      for (const auto& [j, c] : rows_[i]) out[j] += c * y[i];
    }
    return out;
  }

  bool canonical() const {
    return std::all_of(rows_.begin(), rows_.end(),
                       [&](const SparseVec& r) { return r.dim() == cols_ && r.canonical(); });
  }

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVec> rows_;
};

}  // namespace symtri
