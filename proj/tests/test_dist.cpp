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

#include "symtri/constants.hpp"
#include "symtri/dist.hpp"

using namespace symtri;

TEST_CASE("probabilities of a symmetric distribution") {
  const auto u = SymmetricDist::uniform();
  for (Outcome a : kOutcomes)
    for (Outcome b : kOutcomes)
      for (Outcome c : kOutcomes) CHECK(prob(u, a, b, c) == make_rational(1, 8));
  const SymmetricDist det(1, 1, Rational(1));
  CHECK(prob(det, Outcome::plus(), Outcome::plus(), Outcome::plus()) == 1);
  CHECK(prob(det, Outcome::minus(), Outcome::plus(), Outcome::plus()) == 0);
}

TEST_CASE("marginals of the closed form") {
  CHECK(marginal1(make_rational(1, 5), Outcome::plus()) == make_rational(3, 5));
  CHECK(marginal1(make_rational(1, 5), Outcome::minus()) == make_rational(2, 5));
  CHECK(marginal2(make_rational(1, 5), make_rational(-1, 3), Outcome::plus(), Outcome::minus()) == make_rational(1, 3));
  CHECK(marginal2(make_rational(1, 5), make_rational(-1, 3), Outcome::plus(), Outcome::plus()) == make_rational(4, 15));
}

TEST_CASE("invalid correlators are rejected") {
  CHECK_THROWS_AS(SymmetricDist(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricDist(0, 0, make_rational(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricDist(make_rational(1, 2), make_rational(-1, 2), Rational(0)), std::invalid_argument);
}

TEST_CASE("e3 interval at frozen points") {
  struct Case {
    Rational e1, e2, lo, hi;
  };
  const std::vector<Case> cases{
      {0, 0, -1, 1},
      {make_rational(1753, 10000), make_rational(-1, 3), make_rational(-5259, 10000), make_rational(-5259, 10000)},
      {make_rational(1, 5), make_rational(-1, 3), make_rational(-3, 5), make_rational(-3, 5)},
      {0, make_rational(1, 2), make_rational(-1, 2), make_rational(1, 2)},
      {make_rational(99, 100), make_rational(99, 100), make_rational(49, 50), 1},
      {1, 1, 1, 1},
  };
  for (const auto& c : cases) {
    const auto iv = e3_interval(c.e1, c.e2);
    CHECK_FALSE(iv.empty());
    CHECK(iv.lo == c.lo);
    CHECK(iv.hi == c.hi);
  }
  CHECK(e3_interval(make_rational(1, 2), make_rational(-1, 2)).empty());
  CHECK(e3_interval(0, make_rational(-1, 2)).empty());
}

TEST_CASE("every E3 inside the interval yields a valid distribution") {
  std::mt19937_64 rng(11);
  int nonempty = 0;
  for (int i = 0; i < 400; ++i) {
    const Rational e1 = make_rational(static_cast<long>(rng() % 41) - 20, 20);
    const Rational e2 = make_rational(static_cast<long>(rng() % 41) - 20, 20);
    const auto iv = e3_interval(e1, e2);
    if (iv.empty()) continue;
    ++nonempty;
    for (const Rational& e3 : {iv.lo, iv.hi, iv.midpoint()}) {
      const SymmetricDist d(e1, e2, e3);
      Rational total = 0;
      for (Outcome a : kOutcomes)
        for (Outcome b : kOutcomes)
          for (Outcome c : kOutcomes) {
            CHECK(prob(d, a, b, c) >= 0);
            total += prob(d, a, b, c);
          }
      CHECK(total == 1);
    }
    // Just outside the interval some probability is negative.
    if (iv.lo > -1) CHECK_THROWS(SymmetricDist(e1, e2, Rational(iv.lo - make_rational(1, 1000))));
    if (iv.hi < 1) CHECK_THROWS(SymmetricDist(e1, e2, Rational(iv.hi + make_rational(1, 1000))));
  }
  CHECK(nonempty > 50);
}

TEST_CASE("the target point pins E3") {
  const Rational e1 = constant(ConstantTag::kE1c).rational_approx;
  const Rational e3 = constant(ConstantTag::kE3c).rational_approx;
  const auto iv = e3_interval(e1, make_rational(-1, 3));
  CHECK_FALSE(iv.empty());
  CHECK(iv.width() < make_rational(1, 100000000));
  CHECK(abs(iv.midpoint() - e3) < make_rational(1, 100000000));
}
