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


#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "symtri/symmetry.hpp"

using namespace symtri;

TEST_CASE("necklace counts match enumeration") {
  // Distinct binary necklaces of length 3..16, counted by brute force.
  const std::vector<std::uint64_t> expected{4, 6, 8, 14, 20, 36, 60, 108, 188, 352, 632, 1182, 2192, 4116};
  for (int m = 3; m <= 16; ++m) {
    CHECK(necklace_count(m) == expected[static_cast<std::size_t>(m - 3)]);
    CHECK(orbit_table(m).size() == expected[static_cast<std::size_t>(m - 3)]);
  }
  CHECK(necklace_count(18) == 14602);
  CHECK(necklace_count(24) == 699252);
}

TEST_CASE("Booth agrees with the brute-force minimum rotation") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3000; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 22);
    const RingAssignment w(m, static_cast<Word>(rng()) & word_mask(m));
    const auto c = canonical_rotation(w);
    CHECK(c == canonical_rotation_bruteforce(w));
    CHECK(canonical_rotation(w.rotated(static_cast<int>(rng() % 40))) == c);
  }
  for (Word w = 0; w < (Word{1} << 10); ++w)
    CHECK(canonical_rotation(RingAssignment(10, w)) == canonical_rotation_bruteforce(RingAssignment(10, w)));
}

TEST_CASE("string form lists node 0 first") {
  const auto w = RingAssignment::from_string("0010111");
  CHECK(w.m == 7);
  CHECK(w.node(2) == 1);
  CHECK(w.node(0) == 0);
  CHECK(w.to_string() == "0010111");
  CHECK(w.rotated(1).to_string() == "0101110");
  CHECK(canonical_rotation(RingAssignment::from_string("1100")).to_string() == "0011");
  CHECK_THROWS(RingAssignment::from_string("0120"));
  CHECK_THROWS(RingAssignment::from_string("01"));
}

TEST_CASE("orbit tables partition the words") {
  for (int m = 3; m <= 14; ++m) {
    const auto& t = orbit_table(m);
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < t.size(); ++r) {
      const Word rep = t.rep(r);
      CHECK(t.index_of(rep) == r);
      CHECK(canonical_rotation(RingAssignment(m, rep)).bits == rep);
      CHECK(m % t.orbit_size(r) == 0);
      CHECK(t.orbit_size(r) == rotation_period(rep, m));
      total += static_cast<std::uint64_t>(t.orbit_size(r));
    }
    CHECK(total == (std::uint64_t{1} << m));
    for (Word w = 0; w < (Word{1} << m); ++w) CHECK(t.index_of(rotate_word(w, m, 1)) == t.index_of(w));
  }
  CHECK_THROWS(build_orbit_table(2));
  CHECK_THROWS(build_orbit_table(12, 10));
}

TEST_CASE("symmetrized rows evaluate the same on symmetric vectors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 4 + static_cast<int>(trial % 6);
    const auto& t = orbit_table(m);
    std::vector<Rational> orbit_value(t.size());
    for (auto& v : orbit_value) v = make_rational(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 5));
    std::vector<std::pair<Word, Rational>> coeffs;
    Rational direct = 0;
    for (int k = 0; k < 12; ++k) {
      const Word w = static_cast<Word>(rng()) & word_mask(m);
      const Rational c = make_rational(static_cast<long>(rng() % 11) - 5, 3);
      coeffs.emplace_back(w, c);
      direct += c * orbit_value[t.index_of(w)];
    }
    const SparseVec row = symmetrize_row(t, coeffs);
    CHECK(row.dot(orbit_value) == direct);
    // A shifted copy of the row projects identically.
    auto shifted = coeffs;
    for (auto& [w, c] : shifted) w = rotate_word(w, m, 3);
    CHECK(symmetrize_row(t, shifted) == row);
  }
}

TEST_CASE("euler phi") {
  const std::vector<std::uint64_t> phi{1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
  for (std::uint64_t n = 1; n <= phi.size(); ++n) CHECK(euler_phi(n) == phi[n - 1]);
}
