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

#include <cstdint>
#include <string>
#include <vector>

#include "symtri/lp/standard_lp.hpp"

namespace symtri {

/// Phase-I simplex on a dense rational tableau with Bland's rule. Rows are
/// taken as given; the returned dual has one entry per row.
inline LpOutcome exact_phase1(const std::vector<const SparseVec*>& rows, const std::vector<Rational>& b,
                              std::size_t n, std::uint64_t max_pivots, std::uint64_t* pivot_count = nullptr) {
  const std::size_t r = rows.size();
  const std::size_t width = n + r;
  std::vector<std::vector<Rational>> t(r, std::vector<Rational>(width));
  std::vector<Rational> rhs(r);
  std::vector<int> flip(r, 1);
  std::vector<std::size_t> basis(r);
  for (std::size_t i = 0; i < r; ++i) {
    flip[i] = sgn(b[i]) < 0 ? -1 : 1;
    for (const auto& [j, c] : *rows[i]) t[i][j] = flip[i] < 0 ? Rational(-c) : c;
    t[i][n + i] = 1;
    rhs[i] = flip[i] < 0 ? Rational(-b[i]) : b[i];
    basis[i] = n + i;
  }
  std::vector<Rational> d(width);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(t[i][j]) != 0) d[j] -= t[i][j];
  Rational obj = 0;
  for (const auto& v : rhs) obj += v;

  std::uint64_t pivots = 0;
  std::vector<std::size_t> nz;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j)
      if (sgn(d[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;

    std::size_t leave = r;
    Rational best;
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rational ratio = rhs[i] / t[i][enter];
      if (leave == r || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    // Phase I is bounded below, so a pivot row always exists.
    if (leave == r) throw std::logic_error("phase-I simplex found an unbounded ray");
    if (++pivots > max_pivots) throw ResourceLimit("pivot limit " + std::to_string(max_pivots) + " exceeded");

    auto& prow = t[leave];
    const Rational piv = prow[enter];
    nz.clear();
    for (std::size_t j = 0; j < width; ++j)
      if (sgn(prow[j]) != 0) {
        prow[j] /= piv;
        nz.push_back(j);
      }
    rhs[leave] /= piv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j : nz) t[i][j] -= f * prow[j];
      rhs[i] -= f * rhs[leave];
    }
    if (sgn(d[enter]) != 0) {
      const Rational f = d[enter];
      for (std::size_t j : nz) d[j] -= f * prow[j];
      obj += f * rhs[leave];
    }
    basis[leave] = enter;
  }
  if (pivot_count) *pivot_count += pivots;

  if (sgn(obj) > 0) {
    std::vector<Rational> y(r);
    for (std::size_t i = 0; i < r; ++i) {
      y[i] = 1 - d[n + i];
      if (flip[i] < 0) y[i] = -y[i];
    }
    return Infeasible{std::move(y)};
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < r; ++i)
    if (basis[i] < n) x[basis[i]] = rhs[i];
  return Feasible{std::move(x)};
}

}  // namespace symtri
