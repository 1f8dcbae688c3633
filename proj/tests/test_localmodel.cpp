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
#include <sstream>

#include "symtri/localmodel.hpp"

using namespace symtri;

namespace {

TriangleLocalModel<Rational> rational_model(std::array<Rational, 3> source, ResponseTable table) {
  TriangleLocalModel<Rational> m;
  m.sources = {source, source, source};
  m.responses = {table, table, table};
  return m;
}

}  // namespace

TEST_CASE("deterministic sources give a point mass") {
  auto m = rational_model({1, 0, 0}, ResponseTable{});
  const auto d = simulate_triangle(m);
  CHECK(d.p[0] == 1);
  CHECK(d.e1 == 1);
  CHECK(d.e2 == 1);
  CHECK(d.e3 == 1);
  m.wiring.sign_map = 1;
  CHECK(simulate_triangle(m).p[7] == 1);
}

TEST_CASE("parity responses give a permutation-symmetric distribution") {
  ResponseTable parity{};
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) parity[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = (u + v) % 2;
  const Rational third(1, 3);
  for (const Wiring& w : all_wirings()) {
    auto m = rational_model({third, third, third}, parity);
    m.wiring = w;
    const auto d = simulate_triangle(m);
    Rational total = 0;
    for (const auto& v : d.p) total += v;
    CHECK(total == 1);
    CHECK(permutation_asymmetry(d) == 0);
  }
}

TEST_CASE("the wiring search space has 96 conventions") {
  const auto all = all_wirings();
  CHECK(all.size() == 96);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(all[i] == all[j]);
}

TEST_CASE("the published model resolves to one convention") {
  const auto r = resolve_wiring();
  CHECK(r.conventions_searched == 96);
  CHECK(r.distinct_matches == 1);
  CHECK(r.residual_e1 < 1e-10);
  CHECK(r.residual_e2 < 1e-10);
  CHECK(r.residual_e3 < 1e-10);
  CHECK(permutation_asymmetry(r.dist).to_double() < 1e-50);
  // Frozen outcome of the exhaustive search.
  CHECK(r.model.wiring.source_on_edge == std::array<int, 3>{0, 1, 2});
  CHECK(r.model.wiring.order[0] == 0);
  CHECK(r.model.wiring.order[1] == 1);
  CHECK(r.model.wiring.sign_map == 1);
  BigFloat total(0L, 200);
  for (const auto& v : r.dist.p) total += v;
  CHECK(abs(total - BigFloat(1L, 200)).to_double() < 1e-55);
}

TEST_CASE("perturbing y breaks every convention") {
  PublishedModelParams params;
  params.y_offset = make_rational(1, 1000);
  CHECK_THROWS_AS(resolve_wiring(params), WiringError);
}

TEST_CASE("swapped response tables match only under relabeling") {
  auto m = published_model();
  std::swap(m.responses[1], m.responses[2]);
  try {
    const auto r = resolve_wiring(m, 200, 1e-8);
    CHECK(r.residual_e1 < 1e-8);
    CHECK(r.residual_e3 < 1e-8);
  } catch (const WiringError&) {
    SUCCEED("no convention reproduces the target");
  }
}

TEST_CASE("low precision still resolves within a relaxed tolerance") {
  PublishedModelParams params;
  params.precision_bits = 64;
  const auto r = resolve_wiring(params, 1e-6);
  CHECK(r.distinct_matches == 1);
}

TEST_CASE("model files") {
  const std::string good =
      "# published tables\n"
      "source alpha x 1-x 0\nsource beta y (1-y)/2 (1-y)/2\nsource gamma 1-x x 0\n"
      "table f_a\n1 0 1\n0 0 0\n1 1 1\n"
      "table f_b\n1 1 0\n0 1 0\n0 0 0\n"
      "table f_c\n0 1 0\n1 1 0\n0 0 0\n";
  std::istringstream in(good);
  const auto m = read_triangle_model(in, 200);
  CHECK(resolve_wiring(m, 200, 1e-8).distinct_matches == 1);

  auto corrupt = good;
  corrupt.replace(corrupt.find("table f_b\n1 1 0"), 15, "table f_b\n1 2 0");
  std::istringstream bad(corrupt);
  try {
    read_triangle_model(bad, 200);
    FAIL("corrupt table accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("f_b") != std::string::npos);
  }
  std::istringstream missing("source alpha 1 0 0\n");
  CHECK_THROWS_AS(read_triangle_model(missing, 200), ParseError);
  std::istringstream unnormalized("source alpha 1/2 0 0\n");
  CHECK_THROWS_AS(read_triangle_model(unnormalized, 200), ParseError);
}

TEST_CASE("constant symmetric models give a point mass") {
  SymmetricClassicalModel m;
  m.alphabet = 1;
  m.source = {{Rational(1)}};
  m.response_plus = {{Rational(1)}};
  const auto p = simulate_symmetric_ring(m, 6);
  CHECK(p[0] == 1);
  for (std::size_t w = 1; w < p.size(); ++w) CHECK(p[w] == 0);
}

TEST_CASE("transfer matrices agree with enumeration") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const auto model = random_symmetric_model(rng, 2 + trial % 2);
    for (int m = 3; m <= 6; ++m) {
      const auto a = simulate_symmetric_ring(model, m);
      CHECK(a == simulate_symmetric_ring_bruteforce(model, m));
      Rational total = 0;
      for (const auto& v : a) total += v;
      CHECK(total == 1);
      for (Word w = 0; w < (Word{1} << m); ++w) CHECK(a[rotate_word(w, m, 1)] == a[w]);
    }
  }
}

TEST_CASE("ring marginals equal the triangle marginals") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto model = random_symmetric_model(rng, 2 + trial % 3);
    const auto d = symmetric_model_correlators(model);
    for (int m = 4; m <= 7; ++m) {
      const auto p = simulate_symmetric_ring(model, m);
      for (Outcome a : kOutcomes) {
        Rational s1 = 0;
        for (Word w = 0; w < p.size(); ++w)
          if (Outcome::from_bit(node_bit(w, m, 0)) == a) s1 += p[w];
        CHECK(s1 == marginal1(d, a));
        for (Outcome b : kOutcomes) {
          Rational s2 = 0;
          for (Word w = 0; w < p.size(); ++w)
            if (Outcome::from_bit(node_bit(w, m, 0)) == a && Outcome::from_bit(node_bit(w, m, 1)) == b) s2 += p[w];
          CHECK(s2 == marginal2(d, a, b));
        }
      }
    }
  }
}

TEST_CASE("symmetric model guards") {
  SymmetricClassicalModel m;
  m.alphabet = 7;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.alphabet = 2;
  m.source = {{make_rational(1, 2), Rational(0)}, {Rational(0), make_rational(1, 4)}};
  m.response_plus = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.source[1][1] = make_rational(1, 2);
  CHECK_NOTHROW(m.validate());
  CHECK_THROWS_AS(simulate_symmetric_ring(m, 2), std::out_of_range);
}
