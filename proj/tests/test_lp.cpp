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

#include "symtri/lp/exact_simplex.hpp"
#include "symtri/lp/float_simplex.hpp"
#include "symtri/lp/interior.hpp"
#include "symtri/lp/modular.hpp"
#include "symtri/lp/solver.hpp"
#include "symtri/lp/standard_lp.hpp"
#include "symtri/lp/verify.hpp"

using namespace symtri;

namespace {

StandardLp make_lp(std::size_t cols, const std::vector<std::vector<Rational>>& rows, std::vector<Rational> b) {
  SparseMatrix a(cols);
  for (const auto& r : rows) a.add_row(SparseVec::from_dense(r));
  return StandardLp(std::move(a), std::move(b));
}

/// Random LP with a planted nonnegative solution.
StandardLp planted_lp(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::vector<Rational> x(c);
  for (auto& v : x) v = rng() % 3 == 0 ? Rational(0) : make_rational(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 4));
  SparseMatrix a(c);
  std::vector<Rational> b;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> row(c);
    for (auto& v : row)
      if (rng() % 2) v = static_cast<long>(rng() % 9) - 4;
    auto s = SparseVec::from_dense(row);
    b.push_back(s.dot(x));
    a.add_row(std::move(s));
  }
  return StandardLp(std::move(a), std::move(b));
}

/// Random LP with a planted Farkas certificate: every row combination with y
/// gives a nonpositive column and a positive right-hand side.
StandardLp planted_infeasible(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::vector<Rational> y(r);
  for (auto& v : y) v = static_cast<long>(rng() % 5) - 2;
  y[0] = 1;
  std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(c));
  for (std::size_t i = 1; i < r; ++i)
    for (auto& v : rows[i]) v = static_cast<long>(rng() % 7) - 3;
  // Choose row 0 so that A^T y <= 0 column by column.
  for (std::size_t j = 0; j < c; ++j) {
    Rational rest = 0;
    for (std::size_t i = 1; i < r; ++i) rest += y[i] * rows[i][j];
    rows[0][j] = -rest - static_cast<long>(rng() % 3);
  }
  std::vector<Rational> b(r);
  Rational rest = 0;
  for (std::size_t i = 1; i < r; ++i) {
    b[i] = static_cast<long>(rng() % 9) - 4;
    rest += y[i] * b[i];
  }
  b[0] = 1 - rest;
  return make_lp(c, rows, b);
}

}  // namespace

TEST_CASE("hand-built systems") {
  auto feas = make_lp(2, {{1, 1}}, {1});
  auto out = solve_feasibility(feas);
  REQUIRE(is_feasible(out));
  CHECK(verify_certificate(feas, out));

  auto infeas = make_lp(2, {{1, 1}, {1, 1}}, {1, 2});
  out = solve_feasibility(infeas);
  REQUIRE(is_infeasible(out));
  CHECK(verify_certificate(infeas, out));

  auto negative = make_lp(2, {{1, 2}}, {-1});
  out = solve_feasibility(negative);
  REQUIRE(is_infeasible(out));
  CHECK(verify_certificate(negative, out));

  auto zero_row = make_lp(2, {{0, 0}}, {3});
  out = solve_feasibility(zero_row);
  REQUIRE(is_infeasible(out));
  CHECK(verify_certificate(zero_row, out));

  auto empty = make_lp(3, {}, {});
  CHECK(is_feasible(solve_feasibility(empty)));
}

TEST_CASE("verify_certificate rejects wrong claims") {
  auto lp = make_lp(2, {{1, 1}, {1, -1}}, {2, 0});
  CHECK(verify_certificate(lp, Feasible{{1, 1}}));
  CHECK_FALSE(verify_certificate(lp, Feasible{{2, 0}}));
  CHECK_FALSE(verify_certificate(lp, Feasible{{3, 3}}));
  CHECK_FALSE(verify_certificate(lp, Feasible{{1}}));
  CHECK_FALSE(verify_certificate(lp, Feasible{{Rational(-1), Rational(3)}}));
  CHECK_FALSE(verify_certificate(lp, Infeasible{{1, 0}}));
  CHECK_FALSE(verify_certificate(lp, Infeasible{{-1, 0}}));
  CHECK_FALSE(verify_certificate(lp, Infeasible{{0, 0}}));
}

TEST_CASE("planted feasible systems are solved by every method") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 2 + rng() % 12, c = r + rng() % 10;
    const auto lp = planted_lp(rng, r, c);
    for (SolveMethod m : {SolveMethod::kExact, SolveMethod::kHybrid, SolveMethod::kAuto}) {
      SolveOptions opt;
      opt.method = m;
      const auto out = solve_feasibility(lp, opt);
      CHECK(is_feasible(out));
      CHECK(verify_certificate(lp, out));
    }
  }
}

TEST_CASE("planted infeasible systems yield verified certificates") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 2 + rng() % 10, c = 2 + rng() % 15;
    const auto lp = planted_infeasible(rng, r, c);
    for (SolveMethod m : {SolveMethod::kExact, SolveMethod::kHybrid}) {
      SolveOptions opt;
      opt.method = m;
      const auto out = solve_feasibility(lp, opt);
      CHECK(is_infeasible(out));
      CHECK(verify_certificate(lp, out));
    }
  }
}

TEST_CASE("exact and hybrid agree on random systems") {
  std::mt19937_64 rng(47);
  int infeasible = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t r = 2 + rng() % 8, c = 2 + rng() % 8;
    std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(c));
    std::vector<Rational> b(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (auto& v : rows[i]) v = static_cast<long>(rng() % 7) - 3;
      b[i] = static_cast<long>(rng() % 7) - 3;
    }
    const auto lp = make_lp(c, rows, b);
    SolveOptions ex, hy;
    ex.method = SolveMethod::kExact;
    hy.method = SolveMethod::kHybrid;
    const auto a = solve_feasibility(lp, ex), h = solve_feasibility(lp, hy);
    CHECK(is_infeasible(a) == is_infeasible(h));
    CHECK(verify_certificate(lp, a));
    CHECK(verify_certificate(lp, h));
    infeasible += is_infeasible(a);
  }
  CHECK(infeasible > 10);
}

TEST_CASE("presolve merges proportional rows") {
  auto lp = make_lp(3, {{2, 4, 0}, {1, 2, 0}, {0, 1, 1}}, {2, 1, 5});
  const auto ps = presolve(lp);
  CHECK(ps.rows.size() == 2);
  CHECK_FALSE(ps.certificate);
  auto bad = make_lp(3, {{2, 4, 0}, {1, 2, 0}}, {2, 3});
  const auto ps2 = presolve(bad);
  REQUIRE(ps2.certificate);
  CHECK(verify_certificate(bad, *ps2.certificate));
}

TEST_CASE("pivot budget is enforced") {
  std::mt19937_64 rng(53);
  const auto lp = planted_lp(rng, 20, 40);
  SolveOptions opt;
  opt.method = SolveMethod::kExact;
  opt.max_pivots = 1;
  CHECK_THROWS_AS(solve_feasibility(lp, opt), ResourceLimit);
}

TEST_CASE("the exact tableau runs directly on rows") {
  const auto a = SparseVec::from_dense({1, 1, 0}), c = SparseVec::from_dense({0, 1, 1});
  std::uint64_t pivots = 0;
  const auto out = exact_phase1({&a, &c}, {Rational(1), Rational(1)}, 3, 100, &pivots);
  REQUIRE(is_feasible(out));
  const auto& x = std::get<Feasible>(out).x;
  CHECK(x[0] + x[1] == 1);
  CHECK(x[1] + x[2] == 1);
  CHECK(pivots > 0);
}

TEST_CASE("float phase one reaches zero on feasible input") {
  Eigen::MatrixXd a(2, 3);
  a << 1, 1, 0, 0, 1, 1;
  Eigen::VectorXd b(2);
  b << 1, 1;
  const auto r = float_phase1(a, b);
  CHECK(r.objective < 1e-12);
  Eigen::MatrixXd a2(2, 2);
  a2 << 1, 1, 1, 1;
  Eigen::VectorXd b2(2);
  b2 << 1, 2;
  CHECK(float_phase1(a2, b2).objective > 0.1);
}

TEST_CASE("Devex and Dantzig pricing agree on feasibility") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index m = 3 + static_cast<Eigen::Index>(rng() % 15), n = 2 + static_cast<Eigen::Index>(rng() % 25);
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = std::round(4 * u(rng));
      b(i) = std::round(4 * u(rng));
    }
    FloatSimplexOptions dz, dv;
    dz.pricing = Pricing::kDantzig;
    dv.pricing = Pricing::kDevex;
    const auto rz = float_phase1(a, b, dz), rv = float_phase1(a, b, dv);
    CHECK((rz.objective > 1e-9) == (rv.objective > 1e-9));
    for (const auto* r : {&rz, &rv}) {
      if (r->objective <= 1e-9) continue;
      CHECK((a.transpose() * r->y).maxCoeff() < 1e-9);
      CHECK(b.dot(r->y) == Catch::Approx(r->objective).margin(1e-9));
    }
  }
}

TEST_CASE("interior point dual bound agrees with the simplex") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1, 1);
  int positive = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index m = 3 + static_cast<Eigen::Index>(rng() % 20), n = 2 + static_cast<Eigen::Index>(rng() % 30);
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = std::round(4 * u(rng));
      b(i) = std::round(4 * u(rng));
    }
    const auto ip = interior_phase1(a, b);
    const auto sx = float_phase1(a, b);
    CHECK(ip.converged);
    CHECK((ip.objective > 1e-6) == (sx.objective > 1e-9));
    // Any primal value bounds the dual objective from above.
    CHECK(ip.objective <= sx.objective + 1e-6);
    // Farkas shape: A^T y <= 0, and y <= 1 once rows are signed so b >= 0.
    CHECK((a.transpose() * ip.y).maxCoeff() < 1e-7);
    for (Eigen::Index i = 0; i < m; ++i) CHECK((b(i) < 0 ? -ip.y(i) : ip.y(i)) < 1 + 1e-7);
    positive += ip.objective > 1e-6;
  }
  CHECK(positive > 5);
}

TEST_CASE("the interior point path certifies planted systems") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    SolveOptions opt;
    opt.method = SolveMethod::kHybrid;
    opt.interior_min_rows = 1;
    const std::size_t r = 3 + rng() % 10, c = 3 + rng() % 15;
    SolveStats st;
    const auto bad = planted_infeasible(rng, r, c);
    const auto out = solve_feasibility(bad, opt, &st);
    CHECK(is_infeasible(out));
    CHECK(verify_certificate(bad, out));
    const auto good = planted_lp(rng, r, c + 2);
    const auto ok = solve_feasibility(good, opt, &st);
    CHECK(is_feasible(ok));
    CHECK(verify_certificate(good, ok));
    CHECK(st.interior_iterations > 0);
  }
}

TEST_CASE("LP text dump round-trips") {
  std::mt19937_64 rng(59);
  const auto lp = planted_lp(rng, 5, 7);
  std::stringstream ss;
  dump_lp(ss, lp);
  const auto back = parse_lp(ss);
  REQUIRE(back.rows() == lp.rows());
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    CHECK(back.a.row(i) == lp.a.row(i));
    CHECK(back.b[i] == lp.b[i]);
  }
  std::istringstream bad("2 2\n0 5 1\n");
  CHECK_THROWS(parse_lp(bad));
}

TEST_CASE("modular helpers") {
  using namespace symtri::modp;
  const u32 p = kPrimes[0];
  for (u32 a : {1U, 2U, 12345U, p - 1}) CHECK(mul(a, inv(a, p), p) == 1);
  // 2/3 mod p reconstructs to 2/3.
  const Integer m = p;
  const Integer enc = Integer(2) * Integer(inv(3, p)) % m;
  const auto rr = rational_reconstruct(enc, m, Integer(100), Integer(100));
  REQUIRE(rr);
  CHECK(Rational(rr->first, rr->second) == make_rational(2, 3));
}

TEST_CASE("Dixon lifting solves random integer systems exactly") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 25;
    modp::IntSystem sys;
    sys.n = n;
    sys.small.resize(n * n);
    for (auto& v : sys.small) v = static_cast<std::int64_t>(rng() % 2001) - 1000;
    for (std::size_t i = 0; i < n; ++i) sys.rhs.emplace_back(static_cast<long>(rng() % 2001) - 1000);
    const auto x = modp::dixon_solve(sys);
    if (!x) continue;  // singular
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += Rational(static_cast<long>(sys.small[i * n + j])) * (*x)[j];
      CHECK(s == Rational(sys.rhs[i]));
    }
  }
}
