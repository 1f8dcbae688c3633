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

#include <vector>

#include "symtri/lp/standard_lp.hpp"

namespace symtri {

namespace detail {

// Unreduced fraction accumulator on raw mpz values, kept apart from the mpq
// arithmetic used by the solvers.
struct Fraction {
  Integer num = 0;
  Integer den = 1;

  void add_product(const Rational& a, const Rational& b) {
    Integer pn = a.get_num() * b.get_num();
    Integer pd = a.get_den() * b.get_den();
    if (pd == den) {
      num += pn;
      return;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), pd.get_mpz_t());
    Integer l = (den / g) * pd;
    num = num * (l / den) + pn * (l / pd);
    den = l;
  }

  int sign() const { return mpz_sgn(num.get_mpz_t()); }
  bool equals(const Rational& q) const { return num * q.get_den() == q.get_num() * den; }
};

}  // namespace detail

/// Checks the invariants of an outcome exactly.
inline bool verify_certificate(const StandardLp& lp, const LpOutcome& out) {
  if (const auto* f = std::get_if<Feasible>(&out)) {
    if (f->x.size() != lp.cols()) return false;
    for (const auto& v : f->x)
      if (mpz_sgn(v.get_num().get_mpz_t()) < 0) return false;
    for (std::size_t i = 0; i < lp.rows(); ++i) {
      detail::Fraction acc;
      for (const auto& [j, c] : lp.a.row(i)) acc.add_product(c, f->x[j]);
      if (!acc.equals(lp.b[i])) return false;
    }
    return true;
  }
  const auto& y = std::get<Infeasible>(out).y;
  if (y.size() != lp.rows()) return false;
  std::vector<detail::Fraction> col(lp.cols());
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    if (mpz_sgn(y[i].get_num().get_mpz_t()) == 0) continue;
    for (const auto& [j, c] : lp.a.row(i)) col[j].add_product(c, y[i]);
  }
  for (const auto& c : col)
    if (c.sign() > 0) return false;
  detail::Fraction by;
  for (std::size_t i = 0; i < lp.rows(); ++i) by.add_product(lp.b[i], y[i]);
  return by.sign() > 0;
}

}  // namespace symtri
