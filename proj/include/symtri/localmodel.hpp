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
#include <istream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symtri/bigfloat.hpp"
#include "symtri/constants.hpp"
#include "symtri/dist.hpp"
#include "symtri/rational.hpp"
#include "symtri/symmetry.hpp"

namespace symtri {

// ---------------------------------------------------------------------------
// Asymmetric triangle models with three-symbol sources.

inline constexpr int kTriangleAlphabet = 3;

using ResponseTable = std::array<std::array<int, kTriangleAlphabet>, kTriangleAlphabet>;

/// Edges of the triangle, each carrying one source. Party A sits between CA
/// and AB, B between AB and BC, C between BC and CA.
enum Edge { kEdgeBC = 0, kEdgeCA = 1, kEdgeAB = 2 };

inline constexpr std::array<std::array<int, 2>, 3> kPartyEdges{{{kEdgeCA, kEdgeAB}, {kEdgeAB, kEdgeBC}, {kEdgeBC, kEdgeCA}}};

/// How the printed tables attach to the network.
struct Wiring {
  std::array<int, 3> source_on_edge{0, 1, 2};  // edge -> source row (alpha, beta, gamma)
  std::array<int, 3> order{0, 0, 0};  // per party: 0 = table rows follow its first edge, 1 = its second
  int sign_map = 0;                   // 0: bit 0 -> +1; 1: bit 0 -> -1

  friend bool operator==(const Wiring&, const Wiring&) = default;
};

template <class T>
struct TriangleLocalModel {
  std::array<std::array<T, kTriangleAlphabet>, 3> sources;  // alpha, beta, gamma
  std::array<ResponseTable, 3> responses;                   // f_a, f_b, f_c
  Wiring wiring;
};

/// Joint distribution over (a, b, c), indexed by the outcome bits a b c
/// (a most significant), with the symmetric correlators.
template <class T>
struct TriangleDist {
  std::array<T, 8> p;
  T e1;  // average single-party expectation
  T e2;  // average two-party correlator
  T e3;
  std::array<T, 3> single;  // <A>, <B>, <C>
};

namespace detail {
inline Rational zero_like(const Rational&) { return Rational(0); }
inline BigFloat zero_like(const BigFloat& v) { return BigFloat(0L, v.precision()); }
}  // namespace detail

template <class T>
TriangleDist<T> simulate_triangle(const TriangleLocalModel<T>& model) {
  const T zero = detail::zero_like(model.sources[0][0]);
  TriangleDist<T> out{{zero, zero, zero, zero, zero, zero, zero, zero}, zero, zero, zero, {zero, zero, zero}};
  const auto& w = model.wiring;
  for (int s0 = 0; s0 < kTriangleAlphabet; ++s0)
    for (int s1 = 0; s1 < kTriangleAlphabet; ++s1)
      for (int s2 = 0; s2 < kTriangleAlphabet; ++s2) {
        const std::array<int, 3> sym{s0, s1, s2};  // per edge
        T weight = model.sources[static_cast<std::size_t>(w.source_on_edge[0])][static_cast<std::size_t>(s0)] *
                   model.sources[static_cast<std::size_t>(w.source_on_edge[1])][static_cast<std::size_t>(s1)];
        weight = weight * model.sources[static_cast<std::size_t>(w.source_on_edge[2])][static_cast<std::size_t>(s2)];
        if (weight == zero) continue;
        int idx = 0;
        for (int party = 0; party < 3; ++party) {
          const auto [e_first, e_second] = kPartyEdges[static_cast<std::size_t>(party)];
          int u = sym[static_cast<std::size_t>(e_first)], v = sym[static_cast<std::size_t>(e_second)];
          if (w.order[static_cast<std::size_t>(party)]) std::swap(u, v);
          const int bit = model.responses[static_cast<std::size_t>(party)][static_cast<std::size_t>(u)]
                                         [static_cast<std::size_t>(v)];
          const Outcome o = (bit == 0) == (w.sign_map == 0) ? Outcome::plus() : Outcome::minus();
          idx = (idx << 1) | static_cast<int>(o.bit());
        }
        out.p[static_cast<std::size_t>(idx)] += weight;
      }
  for (int idx = 0; idx < 8; ++idx) {
    const int a = Outcome::from_bit((idx >> 2) & 1).value();
    const int b = Outcome::from_bit((idx >> 1) & 1).value();
    const int c = Outcome::from_bit(idx & 1).value();
    const T& pv = out.p[static_cast<std::size_t>(idx)];
    out.single[0] += pv * static_cast<long>(a);
    out.single[1] += pv * static_cast<long>(b);
    out.single[2] += pv * static_cast<long>(c);
    out.e2 += pv * static_cast<long>(a * b + a * c + b * c);
    out.e3 += pv * static_cast<long>(a * b * c);
  }
  out.e1 = (out.single[0] + out.single[1] + out.single[2]) / 3L;
  out.e2 = out.e2 / 3L;
  return out;
}

/// Parameters of the published model: x is the root in (0, 1) of the quartic
/// and y = 1/(3(2x^2 - 2x + 1)).
struct PublishedModelParams {
  unsigned precision_bits = kDefaultPrecisionBits;
  std::optional<Rational> y_offset;  // added to y, for sensitivity checks
};

inline std::array<ResponseTable, 3> published_tables() {
  return {{{{{1, 0, 1}, {0, 0, 0}, {1, 1, 1}}}, {{{1, 1, 0}, {0, 1, 0}, {0, 0, 0}}}, {{{0, 1, 0}, {1, 1, 0}, {0, 0, 0}}}}};
}

inline TriangleLocalModel<BigFloat> published_model(const PublishedModelParams& params = {}) {
  const auto bits = static_cast<mpfr_prec_t>(params.precision_bits);
  BigFloat x = constant(ConstantTag::kXRoot, params.precision_bits).value;
  BigFloat y = constant(ConstantTag::kYValue, params.precision_bits).value;
  if (params.y_offset) y = y + BigFloat(*params.y_offset, bits);
  const BigFloat one(1L, bits), zero(0L, bits);
  TriangleLocalModel<BigFloat> m;
  m.sources = {{{x, one - x, zero}, {y, (one - y) / 2L, (one - y) / 2L}, {one - x, x, zero}}};
  m.responses = published_tables();
  return m;
}

/// Every wiring in the search space: source-to-edge assignments, per-party
/// index orders, and the two sign maps.
inline std::vector<Wiring> all_wirings() {
  std::vector<Wiring> out;
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int ord = 0; ord < 8; ++ord)
      for (int sm = 0; sm < 2; ++sm) out.push_back({perm, {(ord >> 2) & 1, (ord >> 1) & 1, ord & 1}, sm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

struct WiringResolution {
  TriangleLocalModel<BigFloat> model;
  TriangleDist<BigFloat> dist;
  std::size_t conventions_searched = 0;
  std::size_t raw_matches = 0;
  std::size_t distinct_matches = 0;  // matches with different effective responses
  double residual_e1 = 0;
  double residual_e2 = 0;
  double residual_e3 = 0;
};

class WiringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Searches every convention for `base` and keeps those whose correlators
/// reproduce (E1c, -1/3, E3c) within `tolerance`. Conventions that induce the
/// same response function on every party count once.
inline WiringResolution resolve_wiring(const TriangleLocalModel<BigFloat>& base, unsigned precision_bits,
                                       double tolerance) {
  const auto bits = static_cast<mpfr_prec_t>(precision_bits);
  const BigFloat e1c = constant(ConstantTag::kE1c, precision_bits).value;
  const BigFloat e3c = constant(ConstantTag::kE3c, precision_bits).value;
  const BigFloat e2t(make_rational(-1, 3), bits);
  const BigFloat tol(from_double(tolerance), bits);
  WiringResolution out;
  std::set<std::vector<int>> effective;
  for (const Wiring& w : all_wirings()) {
    ++out.conventions_searched;
    auto model = base;
    model.wiring = w;
    auto d = simulate_triangle(model);
    if (abs(d.e1 - e1c) > tol || abs(d.e2 - e2t) > tol || abs(d.e3 - e3c) > tol) continue;
    ++out.raw_matches;
    std::vector<int> key(w.source_on_edge.begin(), w.source_on_edge.end());
    key.push_back(w.sign_map);
    for (int party = 0; party < 3; ++party)
      for (int u = 0; u < kTriangleAlphabet; ++u)
        for (int v = 0; v < kTriangleAlphabet; ++v) {
          const auto& f = model.responses[static_cast<std::size_t>(party)];
          key.push_back(w.order[static_cast<std::size_t>(party)] ? f[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]
                                                                : f[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
        }
    if (effective.insert(key).second && effective.size() == 1) {
      out.model = model;
      out.dist = d;
      out.residual_e1 = abs(d.e1 - e1c).to_double();
      out.residual_e2 = abs(d.e2 - e2t).to_double();
      out.residual_e3 = abs(d.e3 - e3c).to_double();
    }
  }
  out.distinct_matches = effective.size();
  if (out.distinct_matches == 0) throw WiringError("no wiring convention reproduces the target correlators");
  return out;
}

inline WiringResolution resolve_wiring(const PublishedModelParams& params = {}, double tolerance = 1e-8) {
  return resolve_wiring(published_model(params), params.precision_bits, tolerance);
}
/// Largest |p(pi(a,b,c)) - p(a,b,c)| over the six party permutations.
template <class T>
T permutation_asymmetry(const TriangleDist<T>& d) {
  T worst = detail::zero_like(d.p[0]);
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int idx = 0; idx < 8; ++idx) {
      const std::array<int, 3> bits{(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
      const int j = (bits[static_cast<std::size_t>(perm[0])] << 2) | (bits[static_cast<std::size_t>(perm[1])] << 1) |
                    bits[static_cast<std::size_t>(perm[2])];
      T diff = d.p[static_cast<std::size_t>(idx)] - d.p[static_cast<std::size_t>(j)];
      if (diff < detail::zero_like(diff)) diff = -diff;
      if (diff > worst) worst = diff;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return worst;
}

// ---------------------------------------------------------------------------
// Model files.

/// Reads a triangle model: `source <alpha|beta|gamma> v1 v2 v3` lines and
/// `table <f_a|f_b|f_c>` headers followed by three rows of 0/1. Values are
/// rationals or one of x, 1-x, y, (1-y)/2.
inline TriangleLocalModel<BigFloat> read_triangle_model(std::istream& is, unsigned precision_bits) {
  const auto bits = static_cast<mpfr_prec_t>(precision_bits);
  const BigFloat x = constant(ConstantTag::kXRoot, precision_bits).value;
  const BigFloat y = constant(ConstantTag::kYValue, precision_bits).value;
  const BigFloat one(1L, bits);
  auto value = [&](const std::string& tok) -> BigFloat {
    if (tok == "x") return x;
    if (tok == "1-x") return one - x;
    if (tok == "y") return y;
    if (tok == "(1-y)/2") return (one - y) / 2L;
    return BigFloat(parse_rational(tok), bits);
  };
  const std::map<std::string, int> source_names{{"alpha", 0}, {"beta", 1}, {"gamma", 2}};
  const std::map<std::string, int> table_names{{"f_a", 0}, {"f_b", 1}, {"f_c", 2}};

  TriangleLocalModel<BigFloat> m;
  std::array<bool, 3> have_source{}, have_table{};
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "source") {
      std::string name;
      ls >> name;
      auto it = source_names.find(name);
      if (it == source_names.end()) throw ParseError("unknown source " + name);
      std::array<BigFloat, 3> row{BigFloat(bits), BigFloat(bits), BigFloat(bits)};
      BigFloat sum(0L, bits);
      for (auto& v : row) {
        std::string tok;
        if (!(ls >> tok)) throw ParseError("source " + name + " needs three entries");
        v = value(tok);
        if (v.sign() < 0) throw ParseError("source " + name + " has a negative entry");
        sum += v;
      }
      if (abs(sum - one) > BigFloat::exp2(-static_cast<long>(precision_bits) + 8, bits))
        throw ParseError("source " + name + " does not sum to 1");
      m.sources[static_cast<std::size_t>(it->second)] = row;
      have_source[static_cast<std::size_t>(it->second)] = true;
    } else if (kw == "table") {
      std::string name;
      ls >> name;
      auto it = table_names.find(name);
      if (it == table_names.end()) throw ParseError("unknown table " + name);
      ResponseTable t{};
      for (int r = 0; r < kTriangleAlphabet; ++r) {
        if (!std::getline(is, line)) throw ParseError("table " + name + " is truncated");
        std::istringstream rs(line);
        for (int c = 0; c < kTriangleAlphabet; ++c) {
          int v = -1;
          if (!(rs >> v) || (v != 0 && v != 1)) throw ParseError("table " + name + " must hold 3x3 entries in {0,1}");
          t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
        }
        std::string extra;
        if (rs >> extra) throw ParseError("table " + name + " has a row longer than 3");
      }
      m.responses[static_cast<std::size_t>(it->second)] = t;
      have_table[static_cast<std::size_t>(it->second)] = true;
    } else {
      throw ParseError("unknown model directive " + kw);
    }
  }
  for (const auto& [name, i] : source_names)
    if (!have_source[static_cast<std::size_t>(i)]) throw ParseError("missing source " + name);
  for (const auto& [name, i] : table_names)
    if (!have_table[static_cast<std::size_t>(i)]) throw ParseError("missing table " + name);
  return m;
}

// ---------------------------------------------------------------------------
// Symmetric classical models: one source table and one response for all.

inline constexpr int kMaxSymmetricAlphabet = 6;

/// Every source sends a message pair (left, right) with joint probability
/// source[left][right]; the left message goes to the node before the source
/// and the right one to the node after it. Each node answers +1 with
/// probability response_plus[from_prev][from_next].
struct SymmetricClassicalModel {
  int alphabet = 0;
  std::vector<std::vector<Rational>> source;
  std::vector<std::vector<Rational>> response_plus;

  void validate() const {
    if (alphabet < 1 || alphabet > kMaxSymmetricAlphabet) throw std::invalid_argument("alphabet size out of range");
    Rational total = 0;
    for (int l = 0; l < alphabet; ++l)
      for (int r = 0; r < alphabet; ++r) {
        const auto& s = source[static_cast<std::size_t>(l)][static_cast<std::size_t>(r)];
        const auto& q = response_plus[static_cast<std::size_t>(l)][static_cast<std::size_t>(r)];
        if (s < 0) throw std::invalid_argument("negative source probability");
        if (q < 0 || q > 1) throw std::invalid_argument("response probability outside [0, 1]");
        total += s;
      }
    if (total != 1) throw std::invalid_argument("source table does not sum to 1");
  }

  Rational response(Outcome o, int from_prev, int from_next) const {
    const auto& q = response_plus[static_cast<std::size_t>(from_prev)][static_cast<std::size_t>(from_next)];
    return o == Outcome::plus() ? q : Rational(1 - q);
  }
};

/// p over ring words via the transfer matrices
///   T_o[r_prev][r] = sum_l R(o | r_prev, l) P(l, r),  p(w) = Tr prod_i T_{w_i}.
inline std::vector<Rational> simulate_symmetric_ring(const SymmetricClassicalModel& model, int m) {
  model.validate();
  if (m < kMinRingSize || m > kMaxRingSize) throw std::out_of_range("ring size out of range");
  const auto d = static_cast<std::size_t>(model.alphabet);
  using Mat = std::vector<Rational>;
  std::array<Mat, 2> t{Mat(d * d), Mat(d * d)};
  for (Outcome o : kOutcomes)
    for (std::size_t rp = 0; rp < d; ++rp)
      for (std::size_t r = 0; r < d; ++r) {
        Rational s = 0;
        for (std::size_t l = 0; l < d; ++l)
          s += model.response(o, static_cast<int>(rp), static_cast<int>(l)) * model.source[l][r];
        t[o.bit()][rp * d + r] = s;
      }
  auto mul = [d](const Mat& a, const Mat& b) {
    Mat c(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        if (sgn(a[i * d + k]) == 0) continue;
        for (std::size_t j = 0; j < d; ++j) c[i * d + j] += a[i * d + k] * b[k * d + j];
      }
    return c;
  };
  std::vector<Rational> p(std::size_t{1} << m);
  // Depth-first over node outcomes with shared prefixes.
  std::vector<Mat> prefix(static_cast<std::size_t>(m) + 1);
  Mat id(d * d);
  for (std::size_t i = 0; i < d; ++i) id[i * d + i] = 1;
  prefix[0] = id;
  for (Word w = 0; w < (Word{1} << m); ++w) {
    // Recompute from the first node whose bit changed.
    int start = 0;
    if (w > 0) {
      const Word changed = w ^ (w - 1);
      int top = 31 - __builtin_clz(changed);  // highest changed bit
      start = m - 1 - top;
    }
    for (int i = start; i < m; ++i)
      prefix[static_cast<std::size_t>(i) + 1] = mul(prefix[static_cast<std::size_t>(i)], t[node_bit(w, m, i)]);
    Rational tr = 0;
    for (std::size_t i = 0; i < d; ++i) tr += prefix[static_cast<std::size_t>(m)][i * d + i];
    p[w] = tr;
  }
  return p;
}

/// Reference enumeration over every tuple of source messages; exponential in
/// m and used to cross-check the transfer-matrix path.
inline std::vector<Rational> simulate_symmetric_ring_bruteforce(const SymmetricClassicalModel& model, int m) {
  model.validate();
  const int d = model.alphabet;
  std::vector<Rational> p(std::size_t{1} << m);
  const int pairs = d * d;
  std::vector<int> msg(static_cast<std::size_t>(m), 0);  // source i between nodes i and i+1
  while (true) {
    Rational weight = 1;
    for (int i = 0; i < m && sgn(weight) != 0; ++i) {
      const int v = msg[static_cast<std::size_t>(i)];
      weight *= model.source[static_cast<std::size_t>(v / d)][static_cast<std::size_t>(v % d)];
    }
    if (sgn(weight) != 0) {
      // Node i hears the right message of source i-1 and the left message of source i.
      std::vector<Rational> acc{weight};
      std::vector<Word> words{0};
      for (int i = 0; i < m; ++i) {
        const int prev = msg[static_cast<std::size_t>((i + m - 1) % m)] % d;
        const int next = msg[static_cast<std::size_t>(i)] / d;
        std::vector<Rational> acc2;
        std::vector<Word> words2;
        for (std::size_t k = 0; k < acc.size(); ++k)
          for (Outcome o : kOutcomes) {
            Rational q = model.response(o, prev, next);
            if (sgn(q) == 0) continue;
            acc2.push_back(acc[k] * q);
            words2.push_back(with_node(words[k], m, i, o.bit()));
          }
        acc = std::move(acc2);
        words = std::move(words2);
      }
      for (std::size_t k = 0; k < acc.size(); ++k) p[words[k]] += acc[k];
    }
    int pos = 0;
    while (pos < m && ++msg[static_cast<std::size_t>(pos)] == pairs) msg[static_cast<std::size_t>(pos++)] = 0;
    if (pos == m) break;
  }
  return p;
}

/// The triangle distribution of a symmetric model is its ring of three.
inline SymmetricDist symmetric_model_correlators(const SymmetricClassicalModel& model) {
  const auto p = simulate_symmetric_ring(model, 3);
  Rational e1 = 0, e2 = 0, e3 = 0;
  for (Word w = 0; w < 8; ++w) {
    const int a = Outcome::from_bit(node_bit(w, 3, 0)).value();
    const int b = Outcome::from_bit(node_bit(w, 3, 1)).value();
    const int c = Outcome::from_bit(node_bit(w, 3, 2)).value();
    e1 += p[w] * a;
    e2 += p[w] * (a * b);
    e3 += p[w] * (a * b * c);
  }
  return SymmetricDist(e1, e2, e3);
}

/// Random model with small-denominator rational entries; deterministic
/// responses with probability 1/3 per entry.
inline SymmetricClassicalModel random_symmetric_model(std::mt19937_64& rng, int alphabet) {
  SymmetricClassicalModel m;
  m.alphabet = alphabet;
  const auto d = static_cast<std::size_t>(alphabet);
  m.source.assign(d, std::vector<Rational>(d));
  m.response_plus.assign(d, std::vector<Rational>(d));
  long total = 0;
  std::vector<long> w(d * d);
  while (total == 0) {
    total = 0;
    for (auto& v : w) {
      v = static_cast<long>(rng() % 6);
      total += v;
    }
  }
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t r = 0; r < d; ++r) {
      m.source[l][r] = make_rational(w[l * d + r], total);
      const auto kind = rng() % 3;
      m.response_plus[l][r] = kind == 0 ? Rational(static_cast<long>(rng() % 2)) : make_rational(static_cast<long>(rng() % 5), 4);
    }
  return m;
}

}  // namespace symtri
