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
#include <limits>

namespace symtri {

/// Dense primal-dual interior-point solution of the phase-I problem
/// min 1^T s subject to A x + s = b, x, s >= 0. `objective` is the dual
/// bound b^T y, a positive value suggesting infeasibility.
struct InteriorPhase1 {
  double objective = 0;
  Eigen::VectorXd y;  // duals for the rows as given
  int iterations = 0;
  bool converged = false;
};

struct InteriorOptions {
  int max_iterations = 100;
  double dual_tol = 1e-9;
  double primal_tol = 1e-6;
  double gap_tol = 1e-6;
  double step_fraction = 0.995;
};

/// Mehrotra predictor-corrector on the normal equations A D A^T + S^-1 Z.
inline InteriorPhase1 interior_phase1(const Eigen::MatrixXd& a_in, const Eigen::VectorXd& b_in,
                                      const InteriorOptions& opt = {}) {
  using Eigen::Index;
  using Eigen::VectorXd;
  const Index m = a_in.rows();
  const Index n = a_in.cols();
  Eigen::MatrixXd a = a_in;
  VectorXd b = b_in;
  VectorXd flip = VectorXd::Ones(m);
  for (Index i = 0; i < m; ++i)
    if (b(i) < 0) {
      flip(i) = -1;
      a.row(i) *= -1;
      b(i) = -b(i);
    }

  // Variables: x (n structural) and t (m artificials, cost 1).
  VectorXd x = VectorXd::Ones(n), t = VectorXd::Ones(m);
  VectorXd sx = VectorXd::Ones(n), st = VectorXd::Ones(m);
  VectorXd y = VectorXd::Zero(m);
  {
    const double scale = std::max(1.0, b.lpNorm<Eigen::Infinity>());
    x *= scale;
    t *= scale;
  }
  const double bnorm = 1.0 + b.norm();
  const double total = static_cast<double>(n + m);

  InteriorPhase1 res;
  Eigen::MatrixXd scaled(m, n), k(m, m);
  VectorXd dx(n), dt(m), dsx(n), dst(m), dy(m);

  auto max_step = [](const VectorXd& v, const VectorXd& dv) {
    double alpha = 1.0;
    for (Index i = 0; i < v.size(); ++i)
      if (dv(i) < 0) alpha = std::min(alpha, -v(i) / dv(i));
    return alpha;
  };

  for (int it = 0; it < opt.max_iterations; ++it) {
    res.iterations = it + 1;
    const VectorXd rp = b - a * x - t;
    const VectorXd rdx = -(a.transpose() * y) - sx;
    const VectorXd rdt = VectorXd::Ones(m) - y - st;
    const double gap = x.dot(sx) + t.dot(st);
    const double mu = gap / total;
    const double dual_obj = b.dot(y);
    const double dual_res = std::max(rdx.lpNorm<Eigen::Infinity>(), rdt.lpNorm<Eigen::Infinity>());
    if (dual_res < opt.dual_tol && rp.norm() / bnorm < opt.primal_tol &&
        (gap < opt.gap_tol * std::abs(dual_obj) || (t.sum() < opt.primal_tol && gap < opt.primal_tol))) {
      res.converged = true;
      break;
    }

    const VectorXd dxs = x.cwiseQuotient(sx), dts = t.cwiseQuotient(st);
    scaled = a * dxs.cwiseSqrt().asDiagonal();
    k.setZero();
    k.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
    k.diagonal() += dts;
    k.diagonal().array() += 1e-14 * (1.0 + k.diagonal().array().abs().maxCoeff());
    Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> chol(k);
    if (chol.info() != Eigen::Success) break;

    // Solves the Newton system for complementarity targets (cx, ct).
    auto direction = [&](const VectorXd& cx, const VectorXd& ct) {
      const VectorXd rhs = rp + a * (dxs.cwiseProduct(rdx) - cx.cwiseQuotient(sx)) + dts.cwiseProduct(rdt) -
                           ct.cwiseQuotient(st);
      dy = chol.solve(rhs);
      dsx = rdx - a.transpose() * dy;
      dst = rdt - dy;
      dx = cx.cwiseQuotient(sx) - dxs.cwiseProduct(dsx);
      dt = ct.cwiseQuotient(st) - dts.cwiseProduct(dst);
    };

    direction(-x.cwiseProduct(sx), -t.cwiseProduct(st));
    double ap = std::min(max_step(x, dx), max_step(t, dt));
    double ad = std::min(max_step(sx, dsx), max_step(st, dst));
    const double mu_aff =
        ((x + ap * dx).dot(sx + ad * dsx) + (t + ap * dt).dot(st + ad * dst)) / total;
    const double sigma = std::pow(mu_aff / mu, 3);

    const VectorXd cx = -x.cwiseProduct(sx) - dx.cwiseProduct(dsx) + VectorXd::Constant(n, sigma * mu);
    const VectorXd ct = -t.cwiseProduct(st) - dt.cwiseProduct(dst) + VectorXd::Constant(m, sigma * mu);
    direction(cx, ct);
    ap = std::min(1.0, opt.step_fraction * std::min(max_step(x, dx), max_step(t, dt)));
    ad = std::min(1.0, opt.step_fraction * std::min(max_step(sx, dsx), max_step(st, dst)));
    x += ap * dx;
    t += ap * dt;
    y += ad * dy;
    sx += ad * dsx;
    st += ad * dst;
  }
  res.objective = b.dot(y);
  res.y = y.cwiseProduct(flip);
  return res;
}

}  // namespace symtri
