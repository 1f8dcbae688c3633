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
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "symtri/certificates.hpp"
#include "symtri/constants.hpp"
#include "symtri/dist.hpp"
#include "symtri/inflation.hpp"
#include "symtri/lp/solver.hpp"
#include "symtri/rational.hpp"

namespace symtri {

inline constexpr const char* kScanCsvHeader = "e1_num,e1_den,e2_num,e2_den,verdict,min_level,pivots,ms";
inline constexpr const char* kThreadsEnv = "SYMTRI_THREADS";

struct ScanConfig {
  Rational e1_min = -1, e1_max = 1, e1_step = make_rational(1, 100);
  Rational e2_min = -1, e2_max = 1, e2_step = make_rational(1, 100);
  int level = 1;                  // levels 1..level are tried in order
  std::optional<int> ring;        // single ring instead of a level scan
  FamilySet families = FamilySet::lpi();
  unsigned threads = 1;
  unsigned precision_bits = 200;
  std::optional<long> max_denominator;  // grid points are rounded to this denominator
  std::uint64_t pivot_limit = 10'000'000;
  std::string csv_path = "scan.csv";
  std::string svg_path;

  void validate() const {
    if (sgn(e1_step) <= 0 || sgn(e2_step) <= 0) throw std::invalid_argument("scan steps must be positive");
    for (const Rational* v : {&e1_min, &e1_max, &e2_min, &e2_max})
      if (*v < -1 || *v > 1) throw std::invalid_argument("scan ranges must lie in [-1, 1]");
    if (ring ? *ring < 4 : level < 1) throw std::invalid_argument("ring must be >= 4 and level >= 1");
    if (threads == 0) throw std::invalid_argument("thread count must be positive");
  }

  /// key=value lines; `#` starts a comment.
  void apply(const std::string& key, const std::string& value) {
    auto range = [&](Rational& lo, Rational& hi) {
      auto colon = value.find(':');
      if (colon == std::string::npos) throw ParseError("range needs lo:hi, got " + value);
      lo = parse_rational(value.substr(0, colon));
      hi = parse_rational(value.substr(colon + 1));
    };
    if (key == "e1_range") range(e1_min, e1_max);
    else if (key == "e2_range") range(e2_min, e2_max);
    else if (key == "e1_min") e1_min = parse_rational(value);
    else if (key == "e1_max") e1_max = parse_rational(value);
    else if (key == "e2_min") e2_min = parse_rational(value);
    else if (key == "e2_max") e2_max = parse_rational(value);
    else if (key == "step") e1_step = e2_step = parse_rational(value);
    else if (key == "e1_step") e1_step = parse_rational(value);
    else if (key == "e2_step") e2_step = parse_rational(value);
    else if (key == "level") level = std::stoi(value);
    else if (key == "ring") ring = std::stoi(value);
    else if (key == "families") families = FamilySet::parse(value);
    else if (key == "threads") threads = static_cast<unsigned>(std::stoul(value));
    else if (key == "precision_bits") precision_bits = static_cast<unsigned>(std::stoul(value));
    else if (key == "max_denominator") max_denominator = std::stol(value);
    else if (key == "pivot_limit") pivot_limit = std::stoull(value);
    else if (key == "csv") csv_path = value;
    else if (key == "svg") svg_path = value;
    else throw ParseError("unknown config key: " + key);
  }

  void read(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto eq = line.find('=');
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos) throw ParseError("config line without '=': " + line);
      apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }
};

/// Thread count from the environment, or 1.
inline unsigned default_thread_count() {
  if (const char* v = std::getenv(kThreadsEnv)) {
    try {
      const unsigned long n = std::stoul(v);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

inline std::vector<Rational> axis_values(const Rational& lo, const Rational& hi, const Rational& step,
                                         std::optional<long> max_den) {
  std::vector<Rational> out;
  for (Rational v = lo; v <= hi; v += step) {
    Rational p = v;
    if (max_den) p = limit_denominator(p, *max_den);
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  return out;
}

struct GridPoint {
  Rational e1, e2;
  friend bool operator<(const GridPoint& a, const GridPoint& b) {
    return a.e2 != b.e2 ? a.e2 < b.e2 : a.e1 < b.e1;
  }
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Row-major over E2, then E1, both increasing.
inline std::vector<GridPoint> scan_grid(const ScanConfig& cfg) {
  std::vector<GridPoint> out;
  const auto xs = axis_values(cfg.e1_min, cfg.e1_max, cfg.e1_step, cfg.max_denominator);
  const auto ys = axis_values(cfg.e2_min, cfg.e2_max, cfg.e2_step, cfg.max_denominator);
  for (const auto& y : ys)
    for (const auto& x : xs) out.push_back({x, y});
  return out;
}

struct ScanResult {
  GridPoint point;
  Verdict verdict = Verdict::kUndecided;
  std::optional<int> min_level;  // level (or ring) that refuted the point
  std::uint64_t pivots = 0;
  long long ms = 0;
};

/// Classifies one point, raising the level until refuted or exhausted.
inline ScanResult scan_point(const GridPoint& pt, const ScanConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanResult r;
  r.point = pt;
  SolveOptions opt;
  opt.max_pivots = cfg.pivot_limit;
  std::vector<std::pair<int, std::vector<int>>> stages;
  if (cfg.ring) {
    stages.push_back({*cfg.ring, {*cfg.ring}});
  } else {
    for (int n = 1; n <= cfg.level; ++n) stages.push_back({n, level_rings(n)});
  }
  for (const auto& [tag, rings] : stages) {
    Classification c = classify_point(pt.e1, pt.e2, rings, cfg.families, opt);
    r.verdict = c.verdict;
    r.pivots += c.stats.pivots;
    if (c.verdict == Verdict::kInvalidGray) break;
    if (c.verdict == Verdict::kInfeasibleSymmetric) {
      r.min_level = tag;
      break;
    }
  }
  r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string csv_row(const ScanResult& r) {
  std::ostringstream os;
  os << r.point.e1.get_num() << ',' << r.point.e1.get_den() << ',' << r.point.e2.get_num() << ','
     << r.point.e2.get_den() << ',' << verdict_name(r.verdict) << ',' << (r.min_level ? std::to_string(*r.min_level) : "")
     << ',' << r.pivots << ',' << r.ms;
  return os.str();
}

inline Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::kInvalidGray, Verdict::kInfeasibleSymmetric, Verdict::kUndecided})
    if (verdict_name(v) == s) return v;
  throw ParseError("unknown verdict: " + s);
}

/// Completed rows of an existing scan CSV; an unterminated last line is
/// treated as incomplete.
inline std::vector<ScanResult> read_scan_csv(std::istream& is) {
  std::vector<ScanResult> out;
  std::string content((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  std::istringstream ls(content);
  std::string line;
  bool header = true;
  std::size_t consumed = 0;
  while (std::getline(ls, line)) {
    consumed += line.size() + 1;
    if (consumed > content.size()) break;  // no trailing newline
    if (header) {
      if (line != kScanCsvHeader) throw ParseError("not a scan CSV: unexpected header");
      header = false;
      continue;
    }
    std::vector<std::string> f;
    std::istringstream fs(line);
    for (std::string cell; std::getline(fs, cell, ',');) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 8) throw ParseError("malformed scan row: " + line);
    ScanResult r;
    r.point.e1 = Rational(Integer(f[0]), Integer(f[1]));
    r.point.e2 = Rational(Integer(f[2]), Integer(f[3]));
    r.point.e1.canonicalize();
    r.point.e2.canonicalize();
    r.verdict = parse_verdict(f[4]);
    if (!f[5].empty()) r.min_level = std::stoi(f[5]);
    r.pivots = std::stoull(f[6]);
    r.ms = std::stoll(f[7]);
    out.push_back(std::move(r));
  }
  return out;
}

/// Runs the grid with `cfg.threads` workers. Rows reach `emit` in grid order.
inline void run_scan(const std::vector<GridPoint>& points, const ScanConfig& cfg,
                     const std::function<void(const ScanResult&)>& emit) {
  std::vector<std::optional<ScanResult>> done(points.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      std::optional<ScanResult> r;
      try {
        r = scan_point(points[i], cfg);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!failure) failure = std::current_exception();
        next = points.size();
      }
      std::lock_guard<std::mutex> lk(mu);
      done[i] = std::move(r);
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(points.size())));
  for (unsigned t = 0; t + 1 < n; ++t) pool.emplace_back(worker);
  std::thread writer([&]() {
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::unique_lock<std::mutex> lk(mu);
      cv.wait(lk, [&] { return done[i].has_value() || failure; });
      if (!done[i]) return;
      ScanResult r = *done[i];
      lk.unlock();
      emit(r);
    }
  });
  worker();
  for (auto& t : pool) t.join();
  {
    std::lock_guard<std::mutex> lk(mu);
    cv.notify_all();
  }
  writer.join();
  if (failure) std::rethrow_exception(failure);
}

/// Region plot: E1 horizontal, E2 vertical, one rect per grid cell.
inline void write_scan_svg(std::ostream& os, const std::vector<ScanResult>& results, const ScanConfig& cfg) {
  const double cell = 6.0, margin = 40.0;
  const auto xs = axis_values(cfg.e1_min, cfg.e1_max, cfg.e1_step, cfg.max_denominator);
  const auto ys = axis_values(cfg.e2_min, cfg.e2_max, cfg.e2_step, cfg.max_denominator);
  const double w = static_cast<double>(xs.size()) * cell, h = static_cast<double>(ys.size()) * cell;
  std::map<Rational, std::size_t> xi, yi;
  for (std::size_t i = 0; i < xs.size(); ++i) xi[xs[i]] = i;
  for (std::size_t i = 0; i < ys.size(); ++i) yi[ys[i]] = i;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * margin << "\" height=\"" << h + 2 * margin
     << "\">\n";
  for (const auto& r : results) {
    auto ix = xi.find(r.point.e1), iy = yi.find(r.point.e2);
    if (ix == xi.end() || iy == yi.end()) continue;
    const char* fill = r.verdict == Verdict::kInvalidGray           ? "#9a9a9a"
                       : r.verdict == Verdict::kInfeasibleSymmetric ? "#f28c28"
                                                                     : "#ffffff";
    const double x = margin + static_cast<double>(ix->second) * cell;
    const double y = margin + h - static_cast<double>(iy->second + 1) * cell;
    os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
       << fill << "\"/>\n";
  }
  os << "<line x1=\"" << margin << "\" y1=\"" << margin + h << "\" x2=\"" << margin + w << "\" y2=\"" << margin + h
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << margin + h
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << margin + w / 2 << "\" y=\"" << margin + h + 28 << "\" text-anchor=\"middle\">E1 ["
     << to_string(cfg.e1_min) << ", " << to_string(cfg.e1_max) << "]</text>\n";
  os << "<text x=\"12\" y=\"" << margin + h / 2 << "\" transform=\"rotate(-90 12 " << margin + h / 2
     << ")\" text-anchor=\"middle\">E2 [" << to_string(cfg.e2_min) << ", " << to_string(cfg.e2_max) << "]</text>\n";
  os << "</svg>\n";
}

}  // namespace symtri
