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

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symtri/lin/sparse.hpp"
#include "symtri/rational.hpp"

namespace symtri {

using Word = std::uint32_t;

inline constexpr int kMinRingSize = 3;
inline constexpr int kMaxRingSize = 24;

// Words store node 0 in the most significant of the m used bits, so integer
// order on words is lexicographic order on the node sequence 0..m-1.

inline constexpr Word word_mask(int m) { return m >= 32 ? ~Word{0} : ((Word{1} << m) - 1); }

inline constexpr unsigned node_bit(Word w, int m, int i) { return (w >> (m - 1 - i)) & 1U; }

inline constexpr Word with_node(Word w, int m, int i, unsigned bit) {
  const Word mask = Word{1} << (m - 1 - i);
  return bit ? (w | mask) : (w & ~mask);
}

/// Rotation by k: node i of the result is node (i + k) mod m of w.
inline constexpr Word rotate_word(Word w, int m, int k) {
  k %= m;
  if (k < 0) k += m;
  if (k == 0) return w;
  return ((w << k) | (w >> (m - k))) & word_mask(m);
}

/// A length-m binary word for a ring of m nodes.
struct RingAssignment {
  int m = 0;
  Word bits = 0;

  RingAssignment() = default;
  RingAssignment(int size, Word w) : m(size), bits(w) {
    if (size < kMinRingSize || size > kMaxRingSize) throw std::out_of_range("ring size out of bounds");
    if (w & ~word_mask(size)) throw std::out_of_range("word has bits beyond the ring size");
  }

  /// Parses a '0'/'1' string, node 0 first.
  static RingAssignment from_string(const std::string& s) {
    Word w = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw ParseError("ring word must be a 0/1 string: " + s);
      w = (w << 1) | static_cast<Word>(c - '0');
    }
    return RingAssignment(static_cast<int>(s.size()), w);
  }

  unsigned node(int i) const { return node_bit(bits, m, i); }
  RingAssignment rotated(int k) const { return RingAssignment(m, rotate_word(bits, m, k)); }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(m), '0');
    for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = node(i) ? '1' : '0';
    return s;
  }

  friend bool operator==(const RingAssignment&, const RingAssignment&) = default;
};

/// Least rotation by Booth's algorithm, O(m).
inline RingAssignment canonical_rotation(const RingAssignment& w) {
  const int m = w.m;
  const int n = 2 * m;
  auto at = [&](int j) { return w.node(j % m); };
  std::vector<int> f(static_cast<std::size_t>(n), -1);
  int k = 0;
  for (int j = 1; j < n; ++j) {
    const unsigned sj = at(j);
    int i = f[static_cast<std::size_t>(j - k - 1)];
    while (i != -1 && sj != at(k + i + 1)) {
      if (sj < at(k + i + 1)) k = j - i - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (sj != at(k + i + 1)) {
      if (sj < at(k)) k = j;
      f[static_cast<std::size_t>(j - k)] = -1;
    } else {
      f[static_cast<std::size_t>(j - k)] = i + 1;
    }
  }
  return w.rotated(k);
}

/// Reference implementation: minimum over all m rotations.
inline RingAssignment canonical_rotation_bruteforce(const RingAssignment& w) {
  Word best = w.bits;
  for (int k = 1; k < w.m; ++k) best = std::min(best, rotate_word(w.bits, w.m, k));
  return RingAssignment(w.m, best);
}

/// Number of distinct rotations of w (a divisor of m).
inline int rotation_period(Word w, int m) {
  for (int d = 1; d < m; ++d)
    if (m % d == 0 && rotate_word(w, m, d) == w) return d;
  return m;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// Binary necklaces of length m by Burnside: (1/m) sum_{d|m} phi(d) 2^(m/d).
inline std::uint64_t necklace_count(int m) {
  if (m < 1 || m > 62) throw std::out_of_range("necklace length out of range");
  std::uint64_t total = 0;
  for (int d = 1; d <= m; ++d)
    if (m % d == 0) total += euler_phi(static_cast<std::uint64_t>(d)) * (std::uint64_t{1} << (m / d));
  return total / static_cast<std::uint64_t>(m);
}

/// Canonical representatives and orbit sizes for C_m acting on {0,1}^m.
/// Immutable after construction.
class OrbitTable {
 public:
  int ring_size() const { return m_; }
  std::size_t size() const { return reps_.size(); }
  const std::vector<Word>& reps() const { return reps_; }
  Word rep(std::size_t r) const { return reps_[r]; }
  std::uint32_t index_of(Word w) const { return index_[w]; }
  int orbit_size(std::size_t r) const { return orbit_size_[r]; }

 private:
  friend OrbitTable build_orbit_table(int m, int max_ring_size);
  int m_ = 0;
  std::vector<Word> reps_;
  std::vector<std::uint32_t> index_;
  std::vector<std::uint8_t> orbit_size_;
};

inline OrbitTable build_orbit_table(int m, int max_ring_size = kMaxRingSize) {
  if (m < kMinRingSize || m > max_ring_size || m > kMaxRingSize)
    throw std::out_of_range("ring size " + std::to_string(m) + " outside [" + std::to_string(kMinRingSize) + ", " +
                            std::to_string(std::min(max_ring_size, kMaxRingSize)) + "]");
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  OrbitTable t;
  t.m_ = m;
  const std::size_t n_words = std::size_t{1} << m;
  t.index_.assign(n_words, kUnset);
  t.reps_.reserve(static_cast<std::size_t>(necklace_count(m)));
  // Ascending enumeration: the first unseen word of each orbit is its minimum.
  for (std::size_t w = 0; w < n_words; ++w) {
    if (t.index_[w] != kUnset) continue;
    const auto r = static_cast<std::uint32_t>(t.reps_.size());
    const Word word = static_cast<Word>(w);
    const int period = rotation_period(word, m);
    for (int k = 0; k < period; ++k) t.index_[rotate_word(word, m, k)] = r;
    t.reps_.push_back(word);
    t.orbit_size_.push_back(static_cast<std::uint8_t>(period));
  }
  return t;
}

/// Process-wide cache of orbit tables; thread-safe.
inline const OrbitTable& orbit_table(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<OrbitTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<OrbitTable>(build_orbit_table(m));
  return *slot;
}

/// Projects a linear functional over ring words onto orbit variables: each
/// word's coefficient is accumulated onto its representative.
inline SparseVec symmetrize_row(const OrbitTable& table, std::span<const std::pair<Word, Rational>> coefficients) {
  std::vector<SparseVec::Entry> terms;
  terms.reserve(coefficients.size());
  for (const auto& [w, c] : coefficients) terms.emplace_back(table.index_of(w), c);
  return SparseVec::from_terms(table.size(), std::move(terms));
}

}  // namespace symtri
