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
#include <array>
#include <cctype>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "symtri/dist.hpp"
#include "symtri/lin/poly2.hpp"
#include "symtri/lin/sparse.hpp"
#include "symtri/lp/standard_lp.hpp"
#include "symtri/symmetry.hpp"

namespace symtri {

enum class Family : unsigned {
  kL1 = 1U << 0,
  kL2 = 1U << 1,
  kFactorized = 1U << 2,
  kDirectMarginal = 1U << 3,
  kCoupling = 1U << 4,
  kNormalization = 1U << 5,
};

inline constexpr std::array<Family, 6> kAllFamilies{Family::kL1,           Family::kL2,       Family::kFactorized,
                                                    Family::kDirectMarginal, Family::kCoupling, Family::kNormalization};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::kL1: return "L1";
    case Family::kL2: return "L2";
    case Family::kFactorized: return "FACTORIZED";
    case Family::kDirectMarginal: return "DIRECT_MARGINAL";
    case Family::kCoupling: return "COUPLING";
    case Family::kNormalization: return "NORMALIZATION";
  }
  return "?";
}

/// A set of constraint families. NORMALIZATION is always present.
class FamilySet {
 public:
  FamilySet() : bits_(static_cast<unsigned>(Family::kNormalization)) {}
  FamilySet(std::initializer_list<Family> fs) : FamilySet() {
    for (Family f : fs) add(f);
  }

  static FamilySet all() { return FamilySet(kAllFamilies.begin(), kAllFamilies.end()); }
  /// Linearized-identity families with couplings.
  static FamilySet lpi() { return {Family::kL1, Family::kL2, Family::kCoupling}; }
  /// Families with an E-independent matrix, usable for polynomial witnesses.
  static FamilySet witness() { return {Family::kFactorized, Family::kDirectMarginal, Family::kCoupling}; }

  /// Parses a comma-separated list; accepts full names and the short forms
  /// F, D, C, N.
  static FamilySet parse(const std::string& text) {
    FamilySet s;
    std::string tok;
    auto flush = [&]() {
      std::string t;
      for (char c : tok)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::toupper(c)));
      tok.clear();
      if (t.empty()) return;
      if (t == "ALL") {
        s = all();
        return;
      }
      for (Family f : kAllFamilies)
        if (t == family_name(f) || t == family_name(f).substr(0, 1) || (f == Family::kDirectMarginal && t == "DIRECT")) {
          if ((f == Family::kL1 || f == Family::kL2) && t.size() == 1) continue;
          s.add(f);
          return;
        }
      throw ParseError("unknown constraint family: " + t);
    };
    for (char c : text) {
      if (c == ',') {
        flush();
      } else {
        tok.push_back(c);
      }
    }
    flush();
    return s;
  }

  bool has(Family f) const { return (bits_ & static_cast<unsigned>(f)) != 0; }
  void add(Family f) { bits_ |= static_cast<unsigned>(f); }
  unsigned bits() const { return bits_; }
  bool subset_of(const FamilySet& o) const { return (bits_ & ~o.bits_) == 0; }
  /// True when no enabled family places (E1, E2) in the coefficient matrix.
  bool matrix_is_constant() const { return !has(Family::kL1) && !has(Family::kL2); }

  std::string to_string() const {
    std::string out;
    for (Family f : kAllFamilies)
      if (has(f)) out += (out.empty() ? "" : ",") + family_name(f);
    return out;
  }

  friend bool operator==(const FamilySet&, const FamilySet&) = default;

 private:
  template <class It>
  FamilySet(It first, It last) : FamilySet() {
    for (; first != last; ++first) add(*first);
  }
  unsigned bits_;
};

/// Rings {4, ..., n + 3} of hierarchy level n.
inline std::vector<int> level_rings(int n) {
  if (n < 1) throw std::out_of_range("hierarchy level must be >= 1");
  if (n + 3 > kMaxRingSize) throw std::out_of_range("hierarchy level exceeds the maximum ring size");
  std::vector<int> r;
  for (int m = 4; m <= n + 3; ++m) r.push_back(m);
  return r;
}

inline Poly2 q1_poly(Outcome a) {
  return (Poly2::constant(make_rational(1, 2)) + Poly2::e1().scaled(make_rational(a.value(), 2)));
}
inline Poly2 q2_poly(Outcome a, Outcome b) {
  return Poly2::constant(make_rational(1, 4)) + Poly2::e1().scaled(make_rational(a.value() + b.value(), 4)) +
         Poly2::e2().scaled(make_rational(a.value() * b.value(), 4));
}

/// Concatenated variable vector over several rings, either orbit-reduced or
/// one variable per word.
class VariableLayout {
 public:
  VariableLayout(std::vector<int> rings, bool reduced) : rings_(std::move(rings)), reduced_(reduced) {
    if (rings_.empty()) throw std::invalid_argument("at least one ring is required");
    for (int m : rings_) {
      if (m < 4) throw std::out_of_range("ring size must be >= 4");
      offsets_.push_back(total_);
      tables_.push_back(&orbit_table(m));
      total_ += reduced_ ? tables_.back()->size() : (std::size_t{1} << m);
    }
  }

  const std::vector<int>& rings() const { return rings_; }
  bool reduced() const { return reduced_; }
  std::size_t size() const { return total_; }
  std::size_t offset(std::size_t pos) const { return offsets_[pos]; }
  std::size_t ring_vars(std::size_t pos) const {
    return (pos + 1 < offsets_.size() ? offsets_[pos + 1] : total_) - offsets_[pos];
  }
  const OrbitTable& table(std::size_t pos) const { return *tables_[pos]; }
  std::optional<std::size_t> position(int m) const {
    for (std::size_t i = 0; i < rings_.size(); ++i)
      if (rings_[i] == m) return i;
    return std::nullopt;
  }

  SparseVec::Index index(std::size_t pos, Word w) const {
    return static_cast<SparseVec::Index>(offsets_[pos] + (reduced_ ? tables_[pos]->index_of(w) : w));
  }

 private:
  std::vector<int> rings_;
  bool reduced_;
  std::vector<std::size_t> offsets_;
  std::vector<const OrbitTable*> tables_;
  std::size_t total_ = 0;
};

struct ConstraintRow {
  SparseVec coeffs;
  Poly2 rhs;
  Family family;
  int ring;  // the larger ring for couplings
};

/// Collects projected rows, dropping exact duplicates (same coefficients and
/// right-hand side).
class RowSink {
 public:
  explicit RowSink(std::size_t dim) : dim_(dim) {}

  void push(std::vector<SparseVec::Entry> terms, Poly2 rhs, Family family, int ring) {
    ++raw_;
    SparseVec v = SparseVec::from_terms(dim_, std::move(terms));
    if (v.empty() && rhs.is_zero()) return;
    std::size_t h = v.nnz() * 0x9e3779b97f4a7c15ULL;
    for (const auto& [j, c] : v) h = (h ^ (j + 0x51ed27ULL)) * 0x100000001b3ULL ^ hash_value(c);
    for (const auto& [mono, c] : rhs.terms())
      h = (h ^ static_cast<std::size_t>(mono.first * 41 + mono.second)) * 0x100000001b3ULL ^ hash_value(c);
    auto& bucket = index_[h];
    for (std::size_t k : bucket)
      if (rows_[k].coeffs == v && rows_[k].rhs == rhs) return;
    bucket.push_back(rows_.size());
    rows_.push_back({std::move(v), std::move(rhs), family, ring});
  }

  std::size_t raw_count() const { return raw_; }
  std::vector<ConstraintRow>& rows() { return rows_; }

 private:
  std::size_t dim_;
  std::size_t raw_ = 0;
  std::vector<ConstraintRow> rows_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> index_;
};

namespace gen {

/// Node i of ring m is bit (m - 1 - i); outcome +1 is bit 0.
inline Outcome node_outcome(Word w, int m, int i) { return Outcome::from_bit(node_bit(w, m, i)); }

inline void l1(const VariableLayout& lay, std::size_t pos, const Rational& e1, RowSink& sink) {
  const int m = lay.rings()[pos];
  if (m < 5) return;
  const int ctx_bits = m - 3;
  for (Outcome a1 : kOutcomes) {
    const Rational q = marginal1(e1, a1);
    for (Word c = 0; c < (Word{1} << ctx_bits); ++c) {
      std::vector<SparseVec::Entry> terms;
      for (Word head = 0; head < 8; ++head) {
        const Word w = (head << ctx_bits) | c;
        Rational coeff = (node_outcome(w, m, 1) == a1 ? Rational(1) : Rational(0)) - q;
        terms.emplace_back(lay.index(pos, w), std::move(coeff));
      }
      sink.push(std::move(terms), Poly2(), Family::kL1, m);
    }
  }
}

inline void l2(const VariableLayout& lay, std::size_t pos, const Rational& e1, const Rational& e2, RowSink& sink) {
  const int m = lay.rings()[pos];
  if (m < 6) return;
  const int ctx_bits = m - 4;
  for (Outcome a1 : kOutcomes)
    for (Outcome a2 : kOutcomes) {
      const Rational q = marginal2(e1, e2, a1, a2);
      for (Word c = 0; c < (Word{1} << ctx_bits); ++c) {
        std::vector<SparseVec::Entry> terms;
        for (Word head = 0; head < 16; ++head) {
          const Word w = (head << ctx_bits) | c;
          const bool hit = node_outcome(w, m, 1) == a1 && node_outcome(w, m, 2) == a2;
          terms.emplace_back(lay.index(pos, w), (hit ? Rational(1) : Rational(0)) - q);
        }
        sink.push(std::move(terms), Poly2(), Family::kL2, m);
      }
    }
}

/// Survivor masks (bit per node, same layout as words) whose circular runs of
/// survivors all have length 1 or 2, one per rotation class.
inline std::vector<Word> factorized_patterns(int m) {
  std::vector<Word> out;
  const Word full = word_mask(m);
  for (Word s = 1; s < full; ++s) {
    bool canonical = true;
    for (int k = 1; k < m && canonical; ++k)
      if (rotate_word(s, m, k) < s) canonical = false;
    if (!canonical) continue;
    // No three consecutive survivors around the circle.
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      if (node_bit(s, m, i) && node_bit(s, m, (i + 1) % m) && node_bit(s, m, (i + 2) % m)) ok = false;
    if (ok) out.push_back(s);
  }
  return out;
}

/// Arcs of survivors as (start node, length).
inline std::vector<std::pair<int, int>> survivor_arcs(Word s, int m) {
  std::vector<std::pair<int, int>> arcs;
  int start = 0;
  while (node_bit(s, m, start)) ++start;  // a deleted node exists
  for (int k = 1; k <= m; ++k) {
    const int i = (start + k) % m;
    if (!node_bit(s, m, i)) continue;
    const int prev = (i + m - 1) % m;
    if (!node_bit(s, m, prev)) {
      int len = 1;
      while (node_bit(s, m, (i + len) % m)) ++len;
      arcs.emplace_back(i, len);
    }
  }
  return arcs;
}

inline void factorized(const VariableLayout& lay, std::size_t pos, RowSink& sink) {
  const int m = lay.rings()[pos];
  for (Word s : factorized_patterns(m)) {
    std::vector<int> surv;
    for (int i = 0; i < m; ++i)
      if (node_bit(s, m, i)) surv.push_back(i);
    const auto arcs = survivor_arcs(s, m);
    const std::size_t n_assign = std::size_t{1} << surv.size();
    std::vector<std::vector<SparseVec::Entry>> terms(n_assign);
    for (Word w = 0; w < (Word{1} << m); ++w) {
      std::size_t key = 0;
      for (int i : surv) key = (key << 1) | node_bit(w, m, i);
      terms[key].emplace_back(lay.index(pos, w), Rational(1));
    }
    for (std::size_t key = 0; key < n_assign; ++key) {
      Word wk = 0;
      for (std::size_t t = 0; t < surv.size(); ++t)
        wk = with_node(wk, m, surv[t], static_cast<unsigned>((key >> (surv.size() - 1 - t)) & 1U));
      Poly2 rhs(Rational(1));
      for (const auto& [i, len] : arcs) {
        if (len == 1) {
          rhs = poly_mul(rhs, q1_poly(node_outcome(wk, m, i)));
        } else {
          rhs = poly_mul(rhs, q2_poly(node_outcome(wk, m, i), node_outcome(wk, m, (i + 1) % m)));
        }
      }
      sink.push(std::move(terms[key]), std::move(rhs), Family::kFactorized, m);
    }
  }
}

inline void direct_marginals(const VariableLayout& lay, std::size_t pos, RowSink& sink) {
  const int m = lay.rings()[pos];
  for (Outcome a0 : kOutcomes) {
    std::vector<SparseVec::Entry> terms;
    for (Word w = 0; w < (Word{1} << m); ++w)
      if (node_outcome(w, m, 0) == a0) terms.emplace_back(lay.index(pos, w), Rational(1));
    sink.push(std::move(terms), q1_poly(a0), Family::kDirectMarginal, m);
  }
  for (Outcome a0 : kOutcomes)
    for (Outcome a1 : kOutcomes) {
      std::vector<SparseVec::Entry> terms;
      for (Word w = 0; w < (Word{1} << m); ++w)
        if (node_outcome(w, m, 0) == a0 && node_outcome(w, m, 1) == a1)
          terms.emplace_back(lay.index(pos, w), Rational(1));
      sink.push(std::move(terms), q2_poly(a0, a1), Family::kDirectMarginal, m);
    }
}

/// Couples ring m (at `pos`) with ring m - 1 (at `pos_prev`) on the shared
/// chain of nodes 0..m-3.
inline void coupling(const VariableLayout& lay, std::size_t pos, std::size_t pos_prev, RowSink& sink) {
  const int m = lay.rings()[pos];
  if (lay.rings()[pos_prev] != m - 1) throw std::invalid_argument("coupling needs consecutive ring sizes");
  for (Word c = 0; c < (Word{1} << (m - 2)); ++c) {
    std::vector<SparseVec::Entry> terms;
    for (Word tail = 0; tail < 4; ++tail) terms.emplace_back(lay.index(pos, (c << 2) | tail), Rational(1));
    for (Word tail = 0; tail < 2; ++tail) terms.emplace_back(lay.index(pos_prev, (c << 1) | tail), Rational(-1));
    sink.push(std::move(terms), Poly2(), Family::kCoupling, m);
  }
}

inline void normalization(const VariableLayout& lay, std::size_t pos, RowSink& sink) {
  const int m = lay.rings()[pos];
  std::vector<SparseVec::Entry> terms;
  for (Word w = 0; w < (Word{1} << m); ++w) terms.emplace_back(lay.index(pos, w), Rational(1));
  sink.push(std::move(terms), Poly2(Rational(1)), Family::kNormalization, m);
}

/// p(w) = p(rotate(w)) rows; only meaningful without orbit reduction.
inline void shift_equalities(const VariableLayout& lay, std::size_t pos, RowSink& sink) {
  const int m = lay.rings()[pos];
  for (Word w = 0; w < (Word{1} << m); ++w) {
    const Word r = rotate_word(w, m, 1);
    if (r == w) continue;
    sink.push({{lay.index(pos, w), Rational(1)}, {lay.index(pos, r), Rational(-1)}}, Poly2(), Family::kNormalization,
              m);
  }
}

}  // namespace gen

struct AssembleOptions {
  bool reduce_symmetry = true;
};

/// A generated constraint system over the concatenated ring variables.
/// Right-hand sides are kept as polynomials in (E1, E2); the matrix depends
/// on (E1, E2) only when L1 or L2 is enabled.
class AssembledSystem {
 public:
  AssembledSystem(VariableLayout layout, FamilySet families, std::optional<std::pair<Rational, Rational>> point)
      : layout_(std::move(layout)), families_(families), point_(std::move(point)) {}

  const VariableLayout& layout() const { return layout_; }
  const FamilySet& families() const { return families_; }
  const std::vector<ConstraintRow>& rows() const { return rows_; }
  std::size_t raw_row_count() const { return raw_rows_; }
  std::size_t cols() const { return layout_.size(); }
  bool symbolic() const { return !point_.has_value(); }
  const std::optional<std::pair<Rational, Rational>>& point() const { return point_; }

  /// The LP at the assembly point.
  StandardLp lp() const {
    if (!point_) throw std::logic_error("symbolic system has no assembly point; use lp_at");
    return build(point_->first, point_->second);
  }

  /// The LP at any (E1, E2); only for systems with a constant matrix.
  StandardLp lp_at(const Rational& e1, const Rational& e2) const {
    if (point_ && !families_.matrix_is_constant() && (point_->first != e1 || point_->second != e2))
      throw std::logic_error("matrix depends on (E1, E2); reassemble at the new point");
    return build(e1, e2);
  }

  /// Writes the sidecar manifest for an LP dump.
  void write_manifest(std::ostream& os) const {
    os << "rings";
    for (int m : layout_.rings()) os << ' ' << m;
    os << "\nfamilies " << families_.to_string() << "\n";
    os << "reduced " << (layout_.reduced() ? 1 : 0) << "\n";
    if (point_) os << "e1 " << symtri::to_string(point_->first) << "\ne2 " << symtri::to_string(point_->second) << "\n";
    os << "rows " << rows_.size() << "\ncols " << cols() << "\n";
  }

 private:
  friend AssembledSystem assemble_impl(const std::vector<int>&, const Rational*, const Rational*, FamilySet,
                                       const AssembleOptions&);

  StandardLp build(const Rational& e1, const Rational& e2) const {
    SparseMatrix a(cols());
    std::vector<Rational> b;
    b.reserve(rows_.size());
    for (const auto& r : rows_) {
      a.add_row(r.coeffs);
      b.push_back(poly_eval(r.rhs, e1, e2));
    }
    return StandardLp(std::move(a), std::move(b));
  }

  VariableLayout layout_;
  FamilySet families_;
  std::optional<std::pair<Rational, Rational>> point_;
  std::vector<ConstraintRow> rows_;
  std::size_t raw_rows_ = 0;
};

inline AssembledSystem assemble_impl(const std::vector<int>& rings, const Rational* e1, const Rational* e2,
                                     FamilySet families, const AssembleOptions& opt) {
  std::vector<int> sorted = rings;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  VariableLayout lay(sorted, opt.reduce_symmetry);
  std::optional<std::pair<Rational, Rational>> point;
  if (e1) point.emplace(*e1, *e2);
  AssembledSystem sys(lay, families, point);
  RowSink sink(lay.size());
  for (std::size_t pos = 0; pos < sorted.size(); ++pos) {
    gen::normalization(lay, pos, sink);
    if (!opt.reduce_symmetry) gen::shift_equalities(lay, pos, sink);
    if (families.has(Family::kDirectMarginal)) gen::direct_marginals(lay, pos, sink);
    if (families.has(Family::kFactorized)) gen::factorized(lay, pos, sink);
    if (families.has(Family::kL1)) gen::l1(lay, pos, *e1, sink);
    if (families.has(Family::kL2)) gen::l2(lay, pos, *e1, *e2, sink);
    if (families.has(Family::kCoupling) && pos > 0 && sorted[pos - 1] == sorted[pos] - 1)
      gen::coupling(lay, pos, pos - 1, sink);
  }
  sys.raw_rows_ = sink.raw_count();
  sys.rows_ = std::move(sink.rows());
  return sys;
}

/// Assembles the rings at a concrete (E1, E2).
inline AssembledSystem assemble(const std::vector<int>& rings, const Rational& e1, const Rational& e2,
                                FamilySet families, const AssembleOptions& opt = {}) {
  if (e1 < -1 || e1 > 1 || e2 < -1 || e2 > 1) throw std::invalid_argument("correlators must lie in [-1, 1]");
  return assemble_impl(rings, &e1, &e2, families, opt);
}
inline AssembledSystem assemble(const std::vector<int>& rings, const SymmetricDist& d, FamilySet families,
                                const AssembleOptions& opt = {}) {
  return assemble(rings, d.e1(), d.e2(), families, opt);
}

/// Assembles with symbolic right-hand sides; refuses families whose
/// coefficients depend on (E1, E2).
inline AssembledSystem assemble_symbolic(const std::vector<int>& rings, FamilySet families,
                                         const AssembleOptions& opt = {}) {
  if (!families.matrix_is_constant())
    throw std::invalid_argument("L1/L2 put (E1, E2) into the matrix; symbolic right-hand sides are unavailable");
  return assemble_impl(rings, nullptr, nullptr, families, opt);
}

/// Single-ring family generators returning projected, deduplicated rows.
inline std::vector<ConstraintRow> gen_family(Family f, int m, const Rational& e1 = 0, const Rational& e2 = 0,
                                             std::size_t* raw = nullptr) {
  VariableLayout lay({m}, true);
  RowSink sink(lay.size());
  switch (f) {
    case Family::kL1: gen::l1(lay, 0, e1, sink); break;
    case Family::kL2: gen::l2(lay, 0, e1, e2, sink); break;
    case Family::kFactorized: gen::factorized(lay, 0, sink); break;
    case Family::kDirectMarginal: gen::direct_marginals(lay, 0, sink); break;
    case Family::kNormalization: gen::normalization(lay, 0, sink); break;
    case Family::kCoupling: throw std::invalid_argument("couplings span two rings; use gen_coupling");
  }
  if (raw) *raw = sink.raw_count();
  return std::move(sink.rows());
}

/// Coupling rows between rings m and m - 1 over the layout {m - 1, m}.
inline std::vector<ConstraintRow> gen_coupling(int m, std::size_t* raw = nullptr) {
  if (m < 5) throw std::out_of_range("coupling needs m >= 5");
  VariableLayout lay({m - 1, m}, true);
  RowSink sink(lay.size());
  gen::coupling(lay, 1, 0, sink);
  if (raw) *raw = sink.raw_count();
  return std::move(sink.rows());
}

}  // namespace symtri
