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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "symtri/lp/exact_simplex.hpp"
#include "symtri/lp/float_simplex.hpp"
#include "symtri/lp/interior.hpp"
#include "symtri/lp/modular.hpp"
#include "symtri/lp/standard_lp.hpp"
#include "symtri/lp/verify.hpp"

namespace symtri {

enum class SolveMethod { kAuto, kExact, kHybrid };

struct SolveOptions {
  std::uint64_t max_pivots = 10'000'000;
  std::uint64_t seed = 0x5eed;
  SolveMethod method = SolveMethod::kAuto;
  /// kAuto uses the exact tableau when rows * cols after row selection stays
  /// below this.
  std::size_t exact_cells_limit = 40'000;
  /// Hard ceiling for the exact tableau when the hybrid path cannot certify.
  std::size_t exact_fallback_cells = 4'000'000;
  /// Compressed systems with at least this many rows try an interior-point
  /// refutation before the simplex hint.
  std::size_t interior_min_rows = 1000;
};

struct SolveStats {
  std::uint64_t pivots = 0;
  std::size_t rows_after_presolve = 0;
  std::size_t dixon_steps = 0;
  std::size_t interior_iterations = 0;
  std::string method;
};

/// Exact duplicate and zero-row screening. Each kept row is scaled so its
/// first nonzero coefficient is 1.
struct Presolved {
  std::vector<SparseVec> rows;
  std::vector<Rational> b;
  std::vector<std::size_t> origin;  // original row index
  std::vector<Rational> scale;      // reduced row = original row / scale
  std::optional<Infeasible> certificate;
};

inline Presolved presolve(const StandardLp& lp) {
  Presolved ps;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    const SparseVec& row = lp.a.row(i);
    if (row.empty()) {
      if (sgn(lp.b[i]) != 0) {
        std::vector<Rational> y(lp.rows());
        y[i] = sgn(lp.b[i]);
        ps.certificate = Infeasible{std::move(y)};
        return ps;
      }
      continue;
    }
    const Rational lead = row.entries().front().second;
    SparseVec norm = row.scaled(1 / lead);
    Rational nb = lp.b[i] / lead;
    std::size_t h = norm.nnz();
    for (const auto& [j, c] : norm) h = h * 1000003u ^ (j * 2654435761u) ^ hash_value(c);
    auto& bucket = buckets[h];
    bool dup = false;
    for (std::size_t k : bucket) {
      if (!(ps.rows[k] == norm)) continue;
      dup = true;
      if (ps.b[k] != nb) {
        // row_i / lead - row_k / scale_k = 0 with nonzero right-hand side.
        std::vector<Rational> y(lp.rows());
        const int s = ps.b[k] > nb ? 1 : -1;
        y[ps.origin[k]] = s / ps.scale[k];
        y[i] = -s / lead;
        ps.certificate = Infeasible{std::move(y)};
        return ps;
      }
      break;
    }
    if (dup) continue;
    bucket.push_back(ps.rows.size());
    ps.rows.push_back(std::move(norm));
    ps.b.push_back(std::move(nb));
    ps.origin.push_back(i);
    ps.scale.push_back(lead);
  }
  return ps;
}

namespace detail {

inline std::vector<Rational> lift_dual(const StandardLp& lp, const Presolved& ps, const std::vector<Rational>& y_red) {
  std::vector<Rational> y(lp.rows());
  for (std::size_t k = 0; k < ps.rows.size(); ++k)
    if (sgn(y_red[k]) != 0) y[ps.origin[k]] = y_red[k] / ps.scale[k];
  return y;
}

inline bool satisfies(const SparseVec& row, const Rational& b, const std::vector<Rational>& x) {
  return row.dot(x) == b;
}

/// Exact path: tableau over rows independent mod p, re-solving with any
/// dropped rows the candidate point violates.
inline std::vector<Rational> exact_solve_reduced(const Presolved& ps, std::size_t n, const SolveOptions& opt,
                                                 SolveStats& stats, bool& infeasible) {
  std::vector<const SparseVec*> all;
  all.reserve(ps.rows.size());
  for (const auto& r : ps.rows) all.push_back(&r);
  std::optional<std::vector<std::size_t>> sel;
  for (auto p : modp::kPrimes)
    if ((sel = modp::independent_rows(all, n, p))) break;
  std::vector<std::size_t> chosen;
  if (sel) {
    chosen = *sel;
  } else {
    for (std::size_t k = 0; k < all.size(); ++k) chosen.push_back(k);
  }
  std::vector<char> in(ps.rows.size(), 0);
  for (auto k : chosen) in[k] = 1;
  while (true) {
    std::vector<const SparseVec*> rows;
    std::vector<Rational> b;
    for (auto k : chosen) {
      rows.push_back(&ps.rows[k]);
      b.push_back(ps.b[k]);
    }
    LpOutcome out = exact_phase1(rows, b, n, opt.max_pivots - std::min(opt.max_pivots, stats.pivots), &stats.pivots);
    if (auto* inf = std::get_if<Infeasible>(&out)) {
      std::vector<Rational> y(ps.rows.size());
      for (std::size_t t = 0; t < chosen.size(); ++t) y[chosen[t]] = inf->y[t];
      infeasible = true;
      return y;
    }
    auto& x = std::get<Feasible>(out).x;
    bool added = false;
    for (std::size_t k = 0; k < ps.rows.size(); ++k)
      if (!in[k] && !satisfies(ps.rows[k], ps.b[k], x)) {
        in[k] = 1;
        chosen.push_back(k);
        added = true;
      }
    if (!added) {
      infeasible = false;
      return x;
    }
  }
}

inline double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53 * 2.0 - 1.0; }

/// Deterministic column k of the dense row-compression matrix.
inline void compression_column(std::uint64_t seed, std::size_t k, Eigen::VectorXd& out) {
  std::mt19937_64 gen(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = to_unit(gen());
}

/// Rounds a double to a dyadic rational with `bits` fractional bits relative
/// to `scale`.
inline Rational round_dyadic(double v, double scale, int bits) {
  const double q = std::ldexp(1.0, bits) / scale;
  double r = std::nearbyint(v * q);
  if (r == 0) return Rational(0);
  Rational out = from_double(r);
  out /= from_double(q);
  return out;
}

/// Turns an approximate Farkas dual into an exact one by pushing every
/// positive entry of A^T y below zero with rows whose coefficients and right
/// hand sides are all positive.
inline std::optional<std::vector<Rational>> repair_dual(const Presolved& ps, std::size_t n,
                                                        std::vector<Rational> y) {
  std::vector<std::ptrdiff_t> cover(n, -1);
  for (std::size_t k = 0; k < ps.rows.size(); ++k) {
    if (sgn(ps.b[k]) <= 0) continue;
    bool positive = true;
    for (const auto& [j, c] : ps.rows[k])
      if (sgn(c) <= 0) {
        positive = false;
        break;
      }
    if (!positive) continue;
    for (const auto& [j, c] : ps.rows[k])
      if (cover[j] < 0) cover[j] = static_cast<std::ptrdiff_t>(k);
  }
  std::vector<Rational> g(n);
  for (std::size_t k = 0; k < ps.rows.size(); ++k) {
    if (sgn(y[k]) == 0) continue;
    for (const auto& [j, c] : ps.rows[k]) g[j] += c * y[k];
  }
  std::unordered_map<std::size_t, Rational> shift;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(g[j]) <= 0) continue;
    if (cover[j] < 0) return std::nullopt;
    const auto k = static_cast<std::size_t>(cover[j]);
    Rational t = g[j] / ps.rows[k].at(j);
    auto [it, inserted] = shift.try_emplace(k, t);
    if (!inserted && t > it->second) it->second = t;
  }
  for (auto& [k, t] : shift) y[k] -= t;
  Rational by = 0;
  for (std::size_t k = 0; k < ps.rows.size(); ++k) by += ps.b[k] * y[k];
  if (sgn(by) <= 0) return std::nullopt;
  return y;
}

/// Exact point on the columns `cols` via a random square integer compression
/// and Dixon lifting.
inline std::optional<std::vector<Rational>> reconstruct_point(const Presolved& ps, std::size_t n,
                                                              const std::vector<std::size_t>& cols, std::uint64_t seed,
                                                              SolveStats& stats) {
  const std::size_t k = cols.size();
  std::vector<Rational> x(n);
  if (k == 0) {
    for (std::size_t r = 0; r < ps.rows.size(); ++r)
      if (sgn(ps.b[r]) != 0) return std::nullopt;
    return x;
  }
  std::vector<std::ptrdiff_t> pos(n, -1);
  for (std::size_t t = 0; t < k; ++t) pos[cols[t]] = static_cast<std::ptrdiff_t>(t);

  // Integer scaling of each restricted row together with its right-hand side.
  struct IntRow {
    std::vector<std::pair<std::size_t, Integer>> entries;  // (position in cols, value)
    Integer rhs;
  };
  std::vector<IntRow> irows;
  bool fits = true;
  const Integer limit = Integer(1) << 40;
  for (std::size_t r = 0; r < ps.rows.size(); ++r) {
    Integer l = ps.b[r].get_den();
    bool touches = false;
    for (const auto& [j, c] : ps.rows[r])
      if (pos[j] >= 0) {
        touches = true;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
      }
    if (!touches && sgn(ps.b[r]) == 0) continue;
    IntRow ir;
    ir.rhs = ps.b[r].get_num() * (l / ps.b[r].get_den());
    for (const auto& [j, c] : ps.rows[r]) {
      if (pos[j] < 0) continue;
      Integer v = c.get_num() * (l / c.get_den());
      if (abs(v) >= limit) fits = false;
      ir.entries.emplace_back(static_cast<std::size_t>(pos[j]), std::move(v));
    }
    irows.push_back(std::move(ir));
  }

  for (int attempt = 0; attempt < 3; ++attempt) {
    modp::IntSystem sys;
    sys.n = k;
    sys.rhs.assign(k, 0);
    std::mt19937_64 gen(seed + 7919ULL * static_cast<std::uint64_t>(attempt + 1));
    std::vector<long> s(k);
    // Compression weights are drawn from [-1000, 1000].
    if (fits && irows.size() < (std::size_t{1} << 20)) {
      std::vector<modp::i128> acc(k * k, 0);
      for (const auto& ir : irows) {
        for (auto& v : s) v = static_cast<long>(gen() % 2001) - 1000;
        for (std::size_t t = 0; t < k; ++t)
          if (s[t]) sys.rhs[t] += ir.rhs * s[t];
        for (const auto& [col, v] : ir.entries) {
          const modp::i128 a = v.get_si();
          for (std::size_t t = 0; t < k; ++t) acc[t * k + col] += a * s[t];
        }
      }
      sys.small.resize(k * k);
      for (std::size_t q = 0; q < k * k; ++q) sys.small[q] = static_cast<modp::i64>(acc[q]);
    } else {
      sys.big.assign(k * k, 0);
      for (const auto& ir : irows) {
        for (auto& v : s) v = static_cast<long>(gen() % 2001) - 1000;
        for (std::size_t t = 0; t < k; ++t)
          if (s[t]) sys.rhs[t] += ir.rhs * s[t];
        for (const auto& [col, v] : ir.entries)
          for (std::size_t t = 0; t < k; ++t)
            if (s[t]) sys.big[t * k + col] += v * s[t];
      }
    }
    modp::DixonStats ds;
    auto sol = modp::dixon_solve(sys, &ds);
    stats.dixon_steps += ds.lift_steps;
    if (!sol) continue;
    for (std::size_t t = 0; t < k; ++t) x[cols[t]] = (*sol)[t];
    for (const auto& v : x)
      if (sgn(v) < 0) return std::nullopt;
    for (std::size_t r = 0; r < ps.rows.size(); ++r)
      if (!satisfies(ps.rows[r], ps.b[r], x)) return std::nullopt;
    return x;
  }
  return std::nullopt;
}

}  // namespace detail

/// Decides { x >= 0 : A x = b } exactly. The result is checked with
/// verify_certificate before it is returned.
inline LpOutcome solve_feasibility(const StandardLp& lp, const SolveOptions& opt = {}, SolveStats* stats_out = nullptr) {
  SolveStats stats;
  auto finish = [&](LpOutcome out) {
    if (!verify_certificate(lp, out)) throw std::logic_error("solver produced an unverifiable outcome");
    if (stats_out) *stats_out = stats;
    return out;
  };

  Presolved ps = presolve(lp);
  stats.rows_after_presolve = ps.rows.size();
  if (ps.certificate) {
    stats.method = "presolve";
    return finish(std::move(*ps.certificate));
  }
  const std::size_t n = lp.cols();
  if (ps.rows.empty()) {
    stats.method = "presolve";
    return finish(Feasible{std::vector<Rational>(n)});
  }

  auto run_exact = [&]() {
    bool infeasible = false;
    auto v = detail::exact_solve_reduced(ps, n, opt, stats, infeasible);
    stats.method += stats.method.empty() ? "exact" : "+exact";
    if (infeasible) return finish(Infeasible{detail::lift_dual(lp, ps, v)});
    return finish(Feasible{std::move(v)});
  };

  const std::size_t est_rows = std::min(ps.rows.size(), n);
  const bool small = est_rows * (n + est_rows) <= opt.exact_cells_limit;
  if (opt.method == SolveMethod::kExact || (opt.method == SolveMethod::kAuto && small)) return run_exact();

  // Float hint on a random row compression of the normalized system.
  const std::size_t r = ps.rows.size();
  const std::size_t mc = std::min(r, n + 8);
  const bool compress = mc < r;
  Eigen::MatrixXd ac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(mc), static_cast<Eigen::Index>(n));
  Eigen::VectorXd bc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mc));
  std::vector<double> row_scale(r);
  Eigen::VectorXd scol(static_cast<Eigen::Index>(mc));
  for (std::size_t k = 0; k < r; ++k) {
    double mx = 0;
    for (const auto& [j, c] : ps.rows[k]) mx = std::max(mx, std::abs(c.get_d()));
    row_scale[k] = 1.0 / mx;
    if (compress) {
      detail::compression_column(opt.seed, k, scol);
      for (const auto& [j, c] : ps.rows[k]) ac.col(static_cast<Eigen::Index>(j)) += scol * (c.get_d() * row_scale[k]);
      bc += scol * (ps.b[k].get_d() * row_scale[k]);
    } else {
      for (const auto& [j, c] : ps.rows[k])
        ac(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = c.get_d() * row_scale[k];
      bc(static_cast<Eigen::Index>(k)) = ps.b[k].get_d() * row_scale[k];
    }
  }
  auto try_infeasible = [&](const Eigen::VectorXd& yc) -> std::optional<LpOutcome> {
    std::vector<double> yd(r);
    double ymax = 0;
    for (std::size_t k = 0; k < r; ++k) {
      double v;
      if (compress) {
        detail::compression_column(opt.seed, k, scol);
        v = scol.dot(yc);
      } else {
        v = yc(static_cast<Eigen::Index>(k));
      }
      yd[k] = v * row_scale[k];
      ymax = std::max(ymax, std::abs(yd[k]));
    }
    if (ymax == 0) return std::nullopt;
    std::vector<Rational> y(r);
    for (std::size_t k = 0; k < r; ++k) y[k] = detail::round_dyadic(yd[k], ymax, 48);
    auto fixed = detail::repair_dual(ps, n, std::move(y));
    if (!fixed) return std::nullopt;
    stats.method += "+repair";
    return LpOutcome(Infeasible{detail::lift_dual(lp, ps, *fixed)});
  };

  if (mc >= opt.interior_min_rows) {
    const InteriorPhase1 ip = interior_phase1(ac, bc);
    stats.interior_iterations += static_cast<std::size_t>(ip.iterations);
    if (ip.objective > 1e-10 * (1.0 + bc.lpNorm<Eigen::Infinity>())) {
      stats.method = "interior";
      auto out = try_infeasible(ip.y);
      if (out && verify_certificate(lp, *out)) return finish(std::move(*out));
      stats.method += "-failed+";
    }
  }

  FloatSimplexOptions fopt;
  fopt.max_pivots = opt.max_pivots;
  FloatPhase1 hint = float_phase1(ac, bc, fopt);
  stats.pivots += hint.pivots;
  stats.method += compress ? "float-compressed" : "float";

  auto try_feasible = [&]() -> std::optional<LpOutcome> {
    std::vector<std::size_t> cols;
    for (auto j : hint.basis)
      if (j < static_cast<Eigen::Index>(n)) cols.push_back(static_cast<std::size_t>(j));
    std::sort(cols.begin(), cols.end());
    auto x = detail::reconstruct_point(ps, n, cols, opt.seed, stats);
    if (!x) return std::nullopt;
    stats.method += "+dixon";
    return LpOutcome(Feasible{std::move(*x)});
  };

  std::optional<LpOutcome> out;
  if (hint.objective > 1e-11) {
    out = try_infeasible(hint.y);
    if (!out) out = try_feasible();
  } else {
    out = try_feasible();
    if (!out) out = try_infeasible(hint.y);
  }
  if (out && verify_certificate(lp, *out)) return finish(std::move(*out));
  if (est_rows * (n + est_rows) <= opt.exact_fallback_cells) return run_exact();
  throw ResourceLimit("could not certify the floating-point hint and the exact fallback exceeds its size limit");
}

}  // namespace symtri
