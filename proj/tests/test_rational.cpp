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

#include "symtri/bigfloat.hpp"
#include "symtri/constants.hpp"
#include "symtri/rational.hpp"

using namespace symtri;

TEST_CASE("decimal literals convert exactly") {
  CHECK(parse_rational("0.1753") == make_rational(1753, 10000));
  CHECK(parse_rational("-1/3") == make_rational(-1, 3));
  CHECK(parse_rational("  6/4 ") == make_rational(3, 2));
  CHECK(parse_rational("-0.5") == make_rational(-1, 2));
  CHECK(parse_rational("1.5e-3") == make_rational(3, 2000));
  CHECK(parse_rational("2E2") == Rational(200));
  CHECK(parse_rational(".25") == make_rational(1, 4));
  CHECK(parse_rational("+7") == Rational(7));
}

TEST_CASE("malformed literals are rejected") {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "--1", "1e", "0x10"})
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
}

TEST_CASE("to_string round-trips through parse_rational") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const long n = static_cast<long>(rng() % 20001) - 10000;
    const long d = static_cast<long>(rng() % 997) + 1;
    const Rational q = make_rational(n, d);
    CHECK(parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("equal rationals hash equally") {
  CHECK(hash_value(parse_rational("2/4")) == hash_value(make_rational(1, 2)));
  CHECK(from_double(0.375) == make_rational(3, 8));
}

TEST_CASE("limit_denominator finds best approximations") {
  CHECK(limit_denominator(make_rational(314159, 100000), 7) == make_rational(22, 7));
  CHECK(limit_denominator(make_rational(314159, 100000), 113) == make_rational(355, 113));
  CHECK(limit_denominator(make_rational(1, 3), 1000) == make_rational(1, 3));
}

namespace {

/// Bisection on the quartic over (0, 1), independent of the radical chain.
BigFloat bisect_quartic(mpfr_prec_t bits) {
  auto f = [&](const BigFloat& x) { return ((3 * x - 9) * x + 9) * x * x - 5 * x + 1; };
  BigFloat lo(0L, bits), hi(make_rational(1, 2), bits);
  for (int i = 0; i < bits + 8; ++i) {
    BigFloat mid = (lo + hi) / 2L;
    if (f(lo).sign() * f(mid).sign() <= 0) hi = mid;
    else lo = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("constants match their frozen decimal expansions") {
  CHECK(std::abs(constant(ConstantTag::kE1c).value.to_double() - 0.17533849588809) < 1e-13);
  CHECK(std::abs(constant(ConstantTag::kE3c).value.to_double() + 0.52601548766428) < 1e-13);
  CHECK(std::abs(constant(ConstantTag::kXRoot).value.to_double() - 0.357870143930409) < 1e-14);
  CHECK(std::abs(constant(ConstantTag::kYValue).value.to_double() - 0.616824996298600) < 1e-14);
}

TEST_CASE("E3c is minus three times E1c") {
  const auto a = constant(ConstantTag::kE1c).value;
  const auto b = constant(ConstantTag::kE3c).value;
  CHECK(abs(b + 3 * a).to_double() < 1e-55);
}

TEST_CASE("x root agrees with bisection of the quartic") {
  for (unsigned bits : {64U, 128U, 200U, 320U}) {
    const auto x = constant(ConstantTag::kXRoot, bits).value;
    const auto ref = bisect_quartic(static_cast<mpfr_prec_t>(bits));
    CHECK(abs(x - ref).to_double() < std::ldexp(1.0, -static_cast<int>(bits) + 8));
    const BigFloat res = ((3 * x - 9) * x + 9) * x * x - 5 * x + 1;
    CHECK(abs(res).to_double() < std::ldexp(1.0, -static_cast<int>(bits) + 8));
  }
}

TEST_CASE("rational approximations stay within their bound") {
  for (ConstantTag t : {ConstantTag::kE1c, ConstantTag::kE3c, ConstantTag::kXRoot, ConstantTag::kYValue}) {
    const auto c = constant(t);
    CHECK(c.rational_approx.get_den() <= default_max_denominator());
    CHECK(abs(c.value - BigFloat(c.rational_approx, 256)).to_rational() <= c.approx_bound);
  }
  CHECK_THROWS_AS(constant(ConstantTag::kE1c, 32), std::invalid_argument);
}
