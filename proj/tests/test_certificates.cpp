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

#include "symtri/certificates.hpp"
#include "symtri/localmodel.hpp"

using namespace symtri;

TEST_CASE("published witness at frozen points") {
  const auto w = paper_witness();
  CHECK(w.poly.size() == 37);
  CHECK(w.poly.total_degree() == 9);
  CHECK(w.eval(0, 0) == make_rational(-165823, 10000));
  CHECK(w.eval(1, 1) == make_rational(-4379211, 1000));
  CHECK(w.eval(make_rational(1656, 10000), make_rational(-1, 3)) ==
        Rational(Integer("18179576513028788461444700647043"), Integer("18104910850524902343750000000000000")));
  CHECK(w.eval(make_rational(1753, 10000), make_rational(-1, 3)) ==
        Rational(Integer("56504989462740751996057487395919365454539"),
                 Integer("810000000000000000000000000000000000000000")));
  CHECK(w.refutes(make_rational(1656, 10000), make_rational(-1, 3)));
  CHECK_FALSE(w.refutes(0, 0));
}

TEST_CASE("published witness is nonpositive on symmetric models") {
  std::mt19937_64 rng(83);
  const auto w = paper_witness();
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = symmetric_model_correlators(random_symmetric_model(rng, 2 + trial % 3));
    CHECK(sgn(w.eval(d.e1(), d.e2())) <= 0);
  }
}

TEST_CASE("witness files round-trip with provenance") {
  std::stringstream ss;
  write_witness(ss, paper_witness());
  const auto back = read_witness(ss);
  CHECK(back.poly == paper_witness().poly);
  CHECK(std::holds_alternative<PaperProvenance>(back.provenance));

  WitnessPolynomial w{Poly2::e1() - Poly2::constant(make_rational(1, 7)),
                      SelfDerivedProvenance{{4, 5}, FamilySet::witness(), make_rational(1, 5), make_rational(-1, 3)}};
  std::stringstream s2;
  write_witness(s2, w);
  const auto b2 = read_witness(s2);
  CHECK(b2.poly == w.poly);
  CHECK(b2.provenance == w.provenance);

  std::istringstream none("1/2 0 0\n");
  CHECK_THROWS_AS(read_witness(none), ParseError);
}

TEST_CASE("gray points skip the LP") {
  const auto c = classify_point(make_rational(1, 2), make_rational(-1, 2), {7}, FamilySet::lpi());
  CHECK(c.verdict == Verdict::kInvalidGray);
  CHECK_FALSE(c.outcome);
  const auto u = classify_point(0, 0, level_rings(3), FamilySet::all());
  CHECK(u.verdict == Verdict::kUndecided);
  REQUIRE(u.outcome);
  CHECK(is_feasible(*u.outcome));
}

TEST_CASE("the heptagon refutes the target point") {
  const auto c = classify_point(make_rational(1753, 10000), make_rational(-1, 3), {7}, FamilySet({Family::kL1, Family::kL2}));
  CHECK(c.verdict == Verdict::kInfeasibleSymmetric);
  const auto lp = assemble({7}, make_rational(1753, 10000), make_rational(-1, 3), FamilySet({Family::kL1, Family::kL2})).lp();
  CHECK(verify_certificate(lp, *c.outcome));
}

TEST_CASE("derived witnesses are positive at their anchor") {
  const Rational e1(1, 5), e2(-1, 3);
  const auto w = derive_witness(e1, e2, {4}, FamilySet::witness());
  REQUIRE(w);
  CHECK(w->refutes(e1, e2));
  const auto& prov = std::get<SelfDerivedProvenance>(w->provenance);
  CHECK(prov.anchor_e1 == e1);
  CHECK(prov.rings == std::vector<int>{4});
  CHECK_FALSE(derive_witness(0, 0, {4}, FamilySet::witness()));
}

TEST_CASE("extraction refuses a dual that is not a certificate") {
  const auto sys = assemble_symbolic({4}, FamilySet::witness());
  std::vector<Rational> y(sys.rows().size());
  CHECK_THROWS_AS(extract_witness(sys, y, make_rational(1, 5), make_rational(-1, 3)), CertificateError);
  const auto with_l1 = assemble({7}, Rational(0), Rational(0), FamilySet::lpi());
  CHECK_THROWS_AS(extract_witness(with_l1, std::vector<Rational>(with_l1.rows().size()), 0, 0), std::invalid_argument);
}

TEST_CASE("verdict names") {
  CHECK(verdict_name(Verdict::kInvalidGray) == "INVALID_GRAY");
  CHECK(verdict_name(Verdict::kInfeasibleSymmetric) == "INFEASIBLE_SYMMETRIC");
  CHECK(verdict_name(Verdict::kUndecided) == "UNDECIDED");
}
