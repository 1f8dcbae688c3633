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

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "symtri/lp/standard_lp.hpp"

namespace symtri {

/// Outcome of the double-precision phase-I pass. Only ever used as a hint:
/// the basis and duals are re-derived or re-checked in exact arithmetic.
struct FloatPhase1 {
  double objective = 0;
  std::vector<Eigen::Index> basis;  // column per row; >= n marks an artificial
  Eigen::VectorXd x_basic;
  Eigen::VectorXd y;  // duals for the rows as given (not sign-flipped)
  std::uint64_t pivots = 0;
};

enum class Pricing { kDantzig, kDevex };

struct FloatSimplexOptions {
  Pricing pricing = Pricing::kDevex;
  std::uint64_t max_pivots = 10'000'000;
  double pricing_tol = 1e-9;
  double pivot_tol = 1e-9;
  double harris_tol = 1e-10;
  int refactor_every = 64;
  double drift_tol = 1e-9;
  int stall_window = 200;
};

/// Revised phase-I simplex with an explicit dense basis inverse, Devex or
/// Dantzig pricing with a Bland fallback on stalls, and a Harris ratio test.
inline FloatPhase1 float_phase1(const Eigen::MatrixXd& a_in, const Eigen::VectorXd& b_in,
                                const FloatSimplexOptions& opt = {}) {
  using Eigen::Index;
  const Index m = a_in.rows();
  const Index n = a_in.cols();
  Eigen::MatrixXd a = a_in;
  Eigen::VectorXd b = b_in;
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(m);
  for (Index i = 0; i < m; ++i)
    if (b(i) < 0) {
      flip(i) = -1;
      a.row(i) *= -1;
      b(i) = -b(i);
    }

  FloatPhase1 res;
  res.basis.resize(static_cast<std::size_t>(m));
  std::vector<char> basic(static_cast<std::size_t>(n + m), 0);
  for (Index i = 0; i < m; ++i) {
    res.basis[static_cast<std::size_t>(i)] = n + i;
    basic[static_cast<std::size_t>(n + i)] = 1;
  }
  Eigen::MatrixXd binv = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd xb = b;
  Eigen::VectorXd cb = Eigen::VectorXd::Ones(m);

  auto column = [&](Index j) -> Eigen::VectorXd {
    if (j < n) return a.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e(j - n) = 1;
    return e;
  };
  auto refactor = [&]() {
    Eigen::MatrixXd bm(m, m);
    for (Index i = 0; i < m; ++i) bm.col(i) = column(res.basis[static_cast<std::size_t>(i)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
    binv = lu.inverse();
    xb = binv * b;
    for (Index i = 0; i < m; ++i)
      if (xb(i) < 0) xb(i) = 0;
  };
  // Re-inverts only when B * binv has drifted away from the identity.
  Eigen::VectorXd probe = Eigen::VectorXd::LinSpaced(m, 1.0, 2.0);
  auto checkpoint = [&]() {
    const Eigen::VectorXd w = binv * probe;
    Eigen::VectorXd r = -probe;
    for (Index i = 0; i < m; ++i) {
      const Index j = res.basis[static_cast<std::size_t>(i)];
      if (j < n)
        r.noalias() += w(i) * a.col(j);
      else
        r(j - n) += w(i);
    }
    if (r.lpNorm<Eigen::Infinity>() > opt.drift_tol * (1.0 + w.lpNorm<Eigen::Infinity>())) {
      refactor();
      return;
    }
    xb = binv * b;
    for (Index i = 0; i < m; ++i)
      if (xb(i) < 0) xb(i) = 0;
  };

  // Artificials that leave the basis never re-enter, so pricing covers only
  // structural columns.
  Eigen::VectorXd colscale(n);
  for (Index j = 0; j < n; ++j) colscale(j) = 1.0 + a.col(j).lpNorm<Eigen::Infinity>();
  const bool devex = opt.pricing == Pricing::kDevex;
  Eigen::VectorXd y(m), d(n), alpha(m), weight = Eigen::VectorXd::Ones(n);
  Eigen::RowVectorXd arow(n);
  auto reprice = [&]() {
    y.noalias() = binv.transpose() * cb;
    d.noalias() = -(a.transpose() * y);
  };
  reprice();
  double best_obj = std::numeric_limits<double>::infinity();
  int since_improve = 0;
  bool bland = false;
  while (true) {
    if (!devex) reprice();

    Index enter = -1;
    double most = 0;
    for (Index j = 0; j < n; ++j) {
      if (basic[static_cast<std::size_t>(j)]) continue;
      const double scale = colscale(j);
      if (d(j) < -opt.pricing_tol * scale) {
        if (bland) {
          enter = j;
          break;
        }
        const double score = devex ? d(j) * d(j) / weight(j) : -d(j) / scale;
        if (score > most) {
          most = score;
          enter = j;
        }
      }
    }
    if (enter < 0 && devex) {
      // Confirm optimality against freshly computed reduced costs.
      reprice();
      for (Index j = 0; j < n; ++j)
        if (!basic[static_cast<std::size_t>(j)] && d(j) < -opt.pricing_tol * colscale(j) &&
            (enter < 0 || d(j) * d(j) / weight(j) > most)) {
          most = d(j) * d(j) / weight(j);
          enter = j;
        }
    }
    if (enter < 0) break;
    if (res.pivots >= opt.max_pivots)
      throw ResourceLimit("pivot limit " + std::to_string(opt.max_pivots) + " exceeded");

    alpha.noalias() = binv * a.col(enter);
    double theta_max = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i)
      if (alpha(i) > opt.pivot_tol) theta_max = std::min(theta_max, (xb(i) + opt.harris_tol) / alpha(i));
    if (!std::isfinite(theta_max)) break;  // numerically unbounded; give up on this hint
    Index leave = -1;
    double best_alpha = 0;
    for (Index i = 0; i < m; ++i) {
      if (alpha(i) <= opt.pivot_tol || xb(i) / alpha(i) > theta_max) continue;
      const bool art = res.basis[static_cast<std::size_t>(i)] >= n;
      // Prefer evicting artificials, then the largest pivot.
      double score = alpha(i) * (art ? 4.0 : 1.0);
      if (leave < 0 || score > best_alpha) {
        leave = i;
        best_alpha = score;
      }
    }
    const double pivot = alpha(leave);
    if (devex) arow.noalias() = binv.row(leave) * a;
    const double theta = std::max(xb(leave), 0.0) / alpha(leave);
    xb -= theta * alpha;
    xb(leave) = theta;
    for (Index i = 0; i < m; ++i)
      if (xb(i) < 0) xb(i) = 0;

    Eigen::RowVectorXd prow = binv.row(leave) / alpha(leave);
    alpha(leave) = 0;
    binv.noalias() -= alpha * prow;
    binv.row(leave) = prow;

    const Index out = res.basis[static_cast<std::size_t>(leave)];
    basic[static_cast<std::size_t>(out)] = 0;
    res.basis[static_cast<std::size_t>(leave)] = enter;
    basic[static_cast<std::size_t>(enter)] = 1;
    cb(leave) = 0;
    if (devex) {
      const double ratio = d(enter) / pivot;
      const double wq = weight(enter);
      d.noalias() -= ratio * arow.transpose();
      for (Index j = 0; j < n; ++j) {
        const double t = arow(j) / pivot;
        weight(j) = std::max(weight(j), t * t * wq);
      }
      d(enter) = 0;
      if (out < n) weight(out) = std::max(wq / (pivot * pivot), 1.0);
    }
    ++res.pivots;
    if (res.pivots % static_cast<std::uint64_t>(opt.refactor_every) == 0) {
      checkpoint();
      if (devex) reprice();
    }

    double obj = cb.dot(xb);
    if (obj < best_obj - 1e-12) {
      best_obj = obj;
      since_improve = 0;
      bland = false;
    } else if (++since_improve > opt.stall_window) {
      bland = true;
    }
  }
  refactor();
  y.noalias() = binv.transpose() * cb;
  res.objective = cb.dot(xb);
  res.x_basic = xb;
  res.y = y.cwiseProduct(flip);
  return res;
}

}  // namespace symtri
