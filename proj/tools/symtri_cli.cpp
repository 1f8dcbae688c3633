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


// symtri command-line front end.
//
// Exit codes for `check`: 0 undecided, 2 infeasible-symmetric, 3 gray,
// 4 bad input, 5 resource limit, 6 internal error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>

#include "symtri/symtri.hpp"

namespace {

using namespace symtri;

constexpr int kExitUndecided = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitGray = 3;
constexpr int kExitInput = 4;
constexpr int kExitResource = 5;
constexpr int kExitInternal = 6;

struct RingChoice {
  std::optional<int> ring;
  std::optional<int> level;

  std::vector<int> rings() const {
    if (ring && level) throw std::invalid_argument("use either --ring or --level");
    if (ring) return {*ring};
    if (level) return level_rings(*level);
    throw std::invalid_argument("one of --ring or --level is required");
  }
  std::string describe() const { return ring ? "ring " + std::to_string(*ring) : "level " + std::to_string(*level); }
};

void add_ring_options(CLI::App* cmd, RingChoice& rc) {
  cmd->add_option("--ring", rc.ring, "Single ring size");
  cmd->add_option("--level", rc.level, "Hierarchy level n (rings 4..n+3)");
}

SolveMethod parse_method(const std::string& s) {
  if (s == "auto") return SolveMethod::kAuto;
  if (s == "exact") return SolveMethod::kExact;
  if (s == "hybrid") return SolveMethod::kHybrid;
  throw ParseError("unknown solve method: " + s);
}

std::pair<Rational, Rational> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("expected e1,e2 but got " + s);
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

void print_sizes(const AssembledSystem& sys) {
  std::cout << "rings:";
  for (int m : sys.layout().rings()) std::cout << ' ' << m;
  std::cout << "\nfamilies: " << sys.families().to_string() << "\nrows: " << sys.rows().size()
            << " (generated " << sys.raw_row_count() << ")\ncolumns: " << sys.cols() << '\n';
}

int cmd_check(const std::string& e1s, const std::string& e2s, const RingChoice& rc, const std::string& fams,
              const std::string& method, std::uint64_t max_pivots, const std::string& cert_path) {
  const Rational e1 = parse_rational(e1s), e2 = parse_rational(e2s);
  if (abs(e1) > 1 || abs(e2) > 1) throw std::invalid_argument("correlators must lie in [-1, 1]");
  const FamilySet families = FamilySet::parse(fams);
  const auto rings = rc.rings();
  std::cout << "point: E1 = " << to_string(e1) << ", E2 = " << to_string(e2) << '\n';
  const E3Interval iv = e3_interval(e1, e2);
  if (iv.empty()) {
    std::cout << "E3 interval: empty\nverdict: " << verdict_name(Verdict::kInvalidGray) << '\n';
    return kExitGray;
  }
  std::cout << "E3 interval: [" << to_string(iv.lo) << ", " << to_string(iv.hi) << "]\n";
  SolveOptions opt;
  opt.max_pivots = max_pivots;
  opt.method = parse_method(method);
  const auto t0 = std::chrono::steady_clock::now();
  AssembledSystem sys = assemble(rings, e1, e2, families);
  print_sizes(sys);
  const StandardLp lp = sys.lp();
  SolveStats st;
  const LpOutcome out = solve_feasibility(lp, opt, &st);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool verified = verify_certificate(lp, out);
  std::cout << "rows after presolve: " << st.rows_after_presolve << "\npivots: " << st.pivots
            << "\nmethod: " << st.method << "\ncertificate verified: " << (verified ? "yes" : "no")
            << "\nseconds: " << std::fixed << std::setprecision(3) << secs << '\n';
  if (!verified) throw std::logic_error("solver returned an unverifiable certificate");
  if (!cert_path.empty()) {
    std::ofstream f(cert_path);
    if (is_infeasible(out)) {
      f << "# farkas y over " << lp.rows() << " rows\n";
      for (const auto& v : std::get<Infeasible>(out).y) f << to_string(v) << '\n';
    } else {
      f << "# feasible x over " << lp.cols() << " columns\n";
      for (const auto& v : std::get<Feasible>(out).x) f << to_string(v) << '\n';
    }
    std::cout << "certificate written: " << cert_path << '\n';
  }
  const Verdict v = is_infeasible(out) ? Verdict::kInfeasibleSymmetric : Verdict::kUndecided;
  std::cout << "verdict: " << verdict_name(v) << '\n';
  return v == Verdict::kInfeasibleSymmetric ? kExitInfeasible : kExitUndecided;
}

int cmd_scan(ScanConfig cfg, bool resume) {
  cfg.validate();
  const auto points = scan_grid(cfg);
  std::vector<ScanResult> results;
  std::set<GridPoint> completed;
  if (resume && std::filesystem::exists(cfg.csv_path)) {
    std::ifstream in(cfg.csv_path);
    results = read_scan_csv(in);
    for (const auto& r : results) completed.insert(r.point);
    // Rewrite the completed prefix so a torn last line is dropped.
    std::ofstream out(cfg.csv_path, std::ios::trunc);
    out << kScanCsvHeader << '\n';
    for (const auto& r : results) out << csv_row(r) << '\n';
  } else {
    std::ofstream out(cfg.csv_path, std::ios::trunc);
    out << kScanCsvHeader << '\n';
  }
  std::vector<GridPoint> todo;
  for (const auto& p : points)
    if (!completed.count(p)) todo.push_back(p);
  std::cerr << "scan: " << points.size() << " points, " << completed.size() << " already done, " << cfg.threads
            << " thread(s)\n";
  std::ofstream out(cfg.csv_path, std::ios::app);
  run_scan(todo, cfg, [&](const ScanResult& r) {
    out << csv_row(r) << '\n' << std::flush;
    results.push_back(r);
  });
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : results) ++counts[static_cast<int>(r.verdict)];
  std::cout << "gray: " << counts[0] << "\ninfeasible: " << counts[1] << "\nundecided: " << counts[2] << '\n';
  if (!cfg.svg_path.empty()) {
    std::ofstream svg(cfg.svg_path);
    write_scan_svg(svg, results, cfg);
    std::cout << "svg written: " << cfg.svg_path << '\n';
  }
  return 0;
}

int cmd_witness_eval(bool paper, const std::string& file, const std::string& e1s, const std::string& e2s) {
  if (paper == !file.empty()) throw std::invalid_argument("choose exactly one of --paper or --file");
  WitnessPolynomial w;
  if (paper) {
    w = paper_witness();
  } else {
    std::ifstream f(file);
    if (!f) throw ParseError("cannot open witness file " + file);
    w = read_witness(f);
  }
  const Rational e1 = parse_rational(e1s), e2 = parse_rational(e2s);
  const Rational v = w.eval(e1, e2);
  std::cout << provenance_line(w.provenance) << "\nvalue: " << to_string(v) << "\napprox: " << std::setprecision(12)
            << to_double(v) << "\nsign: " << (sgn(v) > 0 ? "positive" : sgn(v) < 0 ? "negative" : "zero")
            << "\nrefutes: " << (w.refutes(e1, e2) ? "yes" : "no") << '\n';
  return 0;
}

int cmd_witness_derive(const std::string& anchor, const RingChoice& rc, const std::string& fams,
                       const std::string& out_path) {
  const auto [e1, e2] = parse_pair(anchor);
  const FamilySet families = FamilySet::parse(fams);
  if (!families.matrix_is_constant())
    throw std::invalid_argument("witness derivation accepts FACTORIZED, DIRECT_MARGINAL, COUPLING only");
  auto w = derive_witness(e1, e2, rc.rings(), families);
  if (!w) {
    std::cout << "anchor not refuted at " << rc.describe() << "; no witness written\n";
    return kExitMismatch;
  }
  std::ofstream f(out_path);
  write_witness(f, *w);
  std::cout << "terms: " << w->poly.terms().size() << "\nvalue at anchor: " << to_string(w->eval(e1, e2))
            << "\nwitness written: " << out_path << '\n';
  return 0;
}

int cmd_verify_model(unsigned precision, const std::string& model_path, std::optional<double> tolerance) {
  if (precision < kMinPrecisionBits)
    throw std::invalid_argument("precision must be at least " + std::to_string(kMinPrecisionBits) + " bits");
  double tol = tolerance.value_or(precision < 128 ? 1e-6 : 1e-8);
  if (!tolerance && precision < 128) std::cout << "note: precision below 128 bits, tolerance relaxed to 1e-6\n";
  WiringResolution res;
  try {
    if (model_path.empty()) {
      PublishedModelParams params;
      params.precision_bits = precision;
      res = resolve_wiring(params, tol);
    } else {
      std::ifstream f(model_path);
      if (!f) throw ParseError("cannot open model file " + model_path);
      res = resolve_wiring(read_triangle_model(f, precision), precision, tol);
    }
  } catch (const WiringError& e) {
    std::cout << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  const auto& w = res.model.wiring;
  const char* src[] = {"alpha", "beta", "gamma"};
  std::cout << "conventions searched: " << res.conventions_searched << "\nmatches: " << res.raw_matches
            << " (distinct " << res.distinct_matches << ")\nwiring: BC=" << src[w.source_on_edge[0]]
            << " CA=" << src[w.source_on_edge[1]] << " AB=" << src[w.source_on_edge[2]] << " order=" << w.order[0]
            << w.order[1] << w.order[2] << " bit0=" << (w.sign_map == 0 ? "+1" : "-1") << '\n';
  std::cout << std::setprecision(20) << "E1: " << res.dist.e1.to_string(24)
            << "\nE2: " << res.dist.e2.to_string(24) << "\nE3: " << res.dist.e3.to_string(24)
            << std::setprecision(3) << std::scientific << "\nresidual E1: " << res.residual_e1
            << "\nresidual E2: " << res.residual_e2 << "\nresidual E3: " << res.residual_e3
            << "\ntolerance: " << tol << "\npermutation asymmetry: " << permutation_asymmetry(res.dist).to_double()
            << '\n';
  if (res.distinct_matches != 1) {
    std::cout << "error: expected a unique convention\n";
    return kExitMismatch;
  }
  std::cout << "match: yes\n";
  return 0;
}

int cmd_dump(const std::string& e1s, const std::string& e2s, const RingChoice& rc, const std::string& fams,
             const std::string& out_path) {
  const Rational e1 = parse_rational(e1s), e2 = parse_rational(e2s);
  AssembledSystem sys = assemble(rc.rings(), e1, e2, FamilySet::parse(fams));
  std::ofstream f(out_path);
  dump_lp(f, sys.lp());
  std::ofstream m(out_path + ".manifest");
  sys.write_manifest(m);
  print_sizes(sys);
  std::cout << "lp written: " << out_path << "\nmanifest written: " << out_path << ".manifest\n";
  return 0;
}

int cmd_stats(const RingChoice& rc, const std::string& fams) {
  const FamilySet families = FamilySet::parse(fams);
  const auto rings = rc.rings();
  AssembledSystem sys = families.matrix_is_constant() ? assemble_symbolic(rings, families)
                                                      : assemble(rings, Rational(0), Rational(0), families);
  print_sizes(sys);
  std::size_t expected = 0;
  for (int m : rings) expected += static_cast<std::size_t>(necklace_count(m));
  std::cout << "necklace columns: " << expected << '\n';
  return sys.cols() == expected ? 0 : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inflation tests for symmetric triangle-network distributions"};
  app.require_subcommand(1);

  std::string e1s, e2s, fams = "L1,L2,C", method = "auto", cert_path, out_path, anchor, model_path, config_path;
  std::uint64_t max_pivots = 10'000'000;
  RingChoice rc;

  auto* check = app.add_subcommand("check", "Classify one (E1, E2) point");
  check->add_option("--e1", e1s, "E1 as num/den or decimal")->required();
  check->add_option("--e2", e2s, "E2 as num/den or decimal")->required();
  add_ring_options(check, rc);
  check->add_option("--families", fams, "Constraint families")->capture_default_str();
  check->add_option("--method", method, "auto, exact or hybrid")->capture_default_str();
  check->add_option("--max-pivots", max_pivots, "Pivot limit")->capture_default_str();
  check->add_option("--certificate", cert_path, "Write the certificate vector here");

  ScanConfig cfg;
  cfg.threads = default_thread_count();
  std::string e1_range, e2_range, step;
  std::optional<int> scan_level, scan_ring;
  std::optional<unsigned> threads;
  std::optional<std::string> scan_fams, csv, svg;
  bool resume = false;
  auto* scan = app.add_subcommand("scan", "Classify a grid of points");
  scan->add_option("--config", config_path, "key=value configuration file");
  scan->add_option("--e1-range", e1_range, "lo:hi");
  scan->add_option("--e2-range", e2_range, "lo:hi");
  scan->add_option("--step", step, "Grid step for both axes");
  scan->add_option("--level", scan_level, "Highest hierarchy level");
  scan->add_option("--ring", scan_ring, "Single ring size");
  scan->add_option("--families", scan_fams, "Constraint families");
  scan->add_option("--threads", threads, "Worker threads (default from SYMTRI_THREADS)");
  scan->add_option("--csv", csv, "CSV output path");
  scan->add_option("--svg", svg, "SVG output path");
  scan->add_flag("--resume", resume, "Skip points already in the CSV");

  auto* witness = app.add_subcommand("witness", "Witness polynomials");
  witness->require_subcommand(1);
  bool paper = false;
  std::string witness_file;
  auto* weval = witness->add_subcommand("eval", "Evaluate a witness at a point");
  weval->add_flag("--paper", paper, "Use the published witness");
  weval->add_option("--file", witness_file, "Witness file");
  weval->add_option("--e1", e1s)->required();
  weval->add_option("--e2", e2s)->required();
  std::string wfams = "F,D,C";
  auto* wderive = witness->add_subcommand("derive", "Derive a witness from an infeasible anchor");
  wderive->add_option("--anchor", anchor, "e1,e2")->required();
  add_ring_options(wderive, rc);
  wderive->add_option("--families", wfams, "Constant-matrix families")->capture_default_str();
  wderive->add_option("--out", out_path, "Witness output path")->required();

  unsigned precision = kDefaultPrecisionBits;
  std::optional<double> tolerance;
  auto* verify = app.add_subcommand("verify-model", "Reproduce the target correlators with the local model");
  verify->add_option("--precision", precision, "Working precision in bits")->capture_default_str();
  verify->add_option("--model", model_path, "Model file instead of the built-in tables");
  verify->add_option("--tolerance", tolerance, "Match tolerance");

  auto* dump = app.add_subcommand("dump", "Write an assembled LP and its manifest");
  dump->add_option("--e1", e1s)->required();
  dump->add_option("--e2", e2s)->required();
  add_ring_options(dump, rc);
  dump->add_option("--families", fams, "Constraint families")->capture_default_str();
  dump->add_option("--out", out_path, "LP output path")->required();

  auto* stats = app.add_subcommand("stats", "Assemble without solving and report sizes");
  add_ring_options(stats, rc);
  stats->add_option("--families", fams, "Constraint families")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check) return cmd_check(e1s, e2s, rc, fams, method, max_pivots, cert_path);
    if (*scan) {
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw ParseError("cannot open config " + config_path);
        cfg.read(f);
      }
      if (!e1_range.empty()) cfg.apply("e1_range", e1_range);
      if (!e2_range.empty()) cfg.apply("e2_range", e2_range);
      if (!step.empty()) cfg.apply("step", step);
      if (scan_level) cfg.level = *scan_level;
      if (scan_ring) cfg.ring = *scan_ring;
      if (scan_fams) cfg.families = FamilySet::parse(*scan_fams);
      if (threads) cfg.threads = *threads;
      if (csv) cfg.csv_path = *csv;
      if (svg) cfg.svg_path = *svg;
      return cmd_scan(cfg, resume);
    }
    if (*weval) return cmd_witness_eval(paper, witness_file, e1s, e2s);
    if (*wderive) return cmd_witness_derive(anchor, rc, wfams, out_path);
    if (*verify) return cmd_verify_model(precision, model_path, tolerance);
    if (*dump) return cmd_dump(e1s, e2s, rc, fams, out_path);
    if (*stats) return cmd_stats(rc, fams);
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
