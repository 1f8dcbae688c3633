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

#include <cstdlib>
#include <sstream>

#include "symtri/scan.hpp"

using namespace symtri;

namespace {

ScanConfig small_config() {
  ScanConfig cfg;
  std::istringstream in(
      "# row through the target\n"
      "e1_range = 0:1/5\n"
      "e2_range = -1/3:-1/3\n"
      "e1_step = 1/10\n"
      "level = 2\n"
      "families = L1,L2,C\n");
  cfg.read(in);
  return cfg;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("config files set the grid") {
  const auto cfg = small_config();
  CHECK(cfg.e1_max == make_rational(1, 5));
  CHECK(cfg.e2_min == make_rational(-1, 3));
  CHECK(cfg.level == 2);
  const auto grid = scan_grid(cfg);
  REQUIRE(grid.size() == 3);
  CHECK(grid[1].e1 == make_rational(1, 10));
  CHECK(grid[2].e2 == make_rational(-1, 3));
  ScanConfig bad;
  std::istringstream unknown("colour = red\n");
  CHECK_THROWS_AS(bad.read(unknown), ParseError);
  bad.e1_step = 0;
  CHECK_THROWS(bad.validate());
  ScanConfig wide;
  wide.e1_max = 2;
  CHECK_THROWS(wide.validate());
}

TEST_CASE("grids run row by row in E2") {
  ScanConfig cfg;
  cfg.e1_min = 0;
  cfg.e1_max = make_rational(1, 2);
  cfg.e2_min = 0;
  cfg.e2_max = make_rational(1, 2);
  cfg.e1_step = cfg.e2_step = make_rational(1, 4);
  const auto g = scan_grid(cfg);
  REQUIRE(g.size() == 9);
  CHECK(g[3].e2 == make_rational(1, 4));
  CHECK(g[3].e1 == 0);
  CHECK(std::is_sorted(g.begin(), g.end()));
  cfg.max_denominator = 2;
  CHECK(scan_grid(cfg).size() == 4);  // 1/4 rounds onto its neighbors
  cfg.e1_min = 1;
  CHECK(scan_grid(cfg).empty());
}

TEST_CASE("CSV rows round-trip and torn lines are dropped") {
  ScanResult a;
  a.point = {make_rational(1753, 10000), make_rational(-1, 3)};
  a.verdict = Verdict::kInfeasibleSymmetric;
  a.min_level = 4;
  a.pivots = 12;
  a.ms = 5;
  ScanResult b;
  b.point = {Rational(0), Rational(0)};
  CHECK(csv_row(a) == "1753,10000,-1,3,INFEASIBLE_SYMMETRIC,4,12,5");
  CHECK(csv_row(b) == "0,1,0,1,UNDECIDED,,0,0");
  std::istringstream in(std::string(kScanCsvHeader) + "\n" + csv_row(a) + "\n" + csv_row(b) + "\n1,2,3");
  const auto rows = read_scan_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].point == a.point);
  CHECK(rows[0].min_level == 4);
  CHECK_FALSE(rows[1].min_level);
  std::istringstream wrong("a,b\n");
  CHECK_THROWS_AS(read_scan_csv(wrong), ParseError);
}

TEST_CASE("threaded scans emit rows in grid order") {
  auto cfg = small_config();
  cfg.e1_step = make_rational(1, 20);
  const auto grid = scan_grid(cfg);
  std::vector<std::string> one, four;
  cfg.threads = 1;
  run_scan(grid, cfg, [&](const ScanResult& r) { one.push_back(csv_row(r).substr(0, csv_row(r).rfind(','))); });
  cfg.threads = 4;
  run_scan(grid, cfg, [&](const ScanResult& r) { four.push_back(csv_row(r).substr(0, csv_row(r).rfind(','))); });
  CHECK(one == four);
  CHECK(one.size() == grid.size());
}

TEST_CASE("scan levels stop at the first refutation") {
  ScanConfig cfg;
  cfg.level = 5;
  const auto r = scan_point({make_rational(1753, 10000), make_rational(-1, 3)}, cfg);
  CHECK(r.verdict == Verdict::kInfeasibleSymmetric);
  CHECK(r.min_level == 4);
  const auto g = scan_point({make_rational(1, 2), make_rational(-1, 2)}, cfg);
  CHECK(g.verdict == Verdict::kInvalidGray);
  CHECK_FALSE(g.min_level);
}

TEST_CASE("SVG has one rect per cell") {
  auto cfg = small_config();
  std::vector<ScanResult> results;
  for (const auto& p : scan_grid(cfg)) {
    ScanResult r;
    r.point = p;
    results.push_back(r);
  }
  results[0].verdict = Verdict::kInvalidGray;
  std::ostringstream os;
  write_scan_svg(os, results, cfg);
  const std::string svg = os.str();
  CHECK(count(svg, "<rect") == results.size());
  CHECK(count(svg, "<svg") == 1);
  CHECK(count(svg, "</svg>") == 1);
  CHECK(svg.find("#9a9a9a") != std::string::npos);
}

TEST_CASE("thread count comes from the environment") {
  ::setenv(kThreadsEnv, "3", 1);
  CHECK(default_thread_count() == 3);
  ::setenv(kThreadsEnv, "zero", 1);
  CHECK(default_thread_count() == 1);
  ::unsetenv(kThreadsEnv);
  CHECK(default_thread_count() == 1);
}
