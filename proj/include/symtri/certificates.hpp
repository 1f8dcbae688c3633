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

#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "symtri/dist.hpp"
#include "symtri/inflation.hpp"
#include "symtri/lin/poly2.hpp"
#include "symtri/lp/solver.hpp"
#include "symtri/lp/verify.hpp"

namespace symtri {

struct PaperProvenance {
  friend bool operator==(const PaperProvenance&, const PaperProvenance&) = default;
};

struct SelfDerivedProvenance {
  std::vector<int> rings;
  FamilySet families;
  Rational anchor_e1;
  Rational anchor_e2;
  friend bool operator==(const SelfDerivedProvenance&, const SelfDerivedProvenance&) = default;
};

using Provenance = std::variant<PaperProvenance, SelfDerivedProvenance>;

/// Polynomial in (E1, E2); a positive value certifies that no symmetric
/// triangle realization exists, for any E3.
struct WitnessPolynomial {
  Poly2 poly;
  Provenance provenance;

  Rational eval(const Rational& e1, const Rational& e2) const { return poly_eval(poly, e1, e2); }
  bool refutes(const Rational& e1, const Rational& e2) const { return sgn(eval(e1, e2)) > 0; }
};

/// Refusal to emit a witness from a dual that does not verify.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_i y_i rhs_i for a system with a constant matrix. The dual must be a
/// valid Farkas certificate at the anchor point.
inline WitnessPolynomial extract_witness(const SparseMatrix& a, const std::vector<Poly2>& rhs,
                                         const std::vector<Rational>& y, const Rational& anchor_e1,
                                         const Rational& anchor_e2, Provenance provenance) {
  if (a.rows() != rhs.size() || y.size() != rhs.size()) throw std::invalid_argument("dimension mismatch in witness");
  std::vector<Rational> b;
  b.reserve(rhs.size());
  for (const auto& r : rhs) b.push_back(poly_eval(r, anchor_e1, anchor_e2));
  StandardLp lp(a, std::move(b));
  if (!verify_certificate(lp, Infeasible{y})) throw CertificateError("dual is not a Farkas certificate at the anchor");
  Poly2 w;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (sgn(y[i]) != 0) w += rhs[i].scaled(y[i]);
  return {std::move(w), std::move(provenance)};
}

inline WitnessPolynomial extract_witness(const AssembledSystem& sys, const std::vector<Rational>& y,
                                         const Rational& anchor_e1, const Rational& anchor_e2) {
  if (!sys.families().matrix_is_constant())
    throw std::invalid_argument("witness extraction needs a matrix independent of (E1, E2)");
  SparseMatrix a(sys.cols());
  std::vector<Poly2> rhs;
  for (const auto& r : sys.rows()) {
    a.add_row(r.coeffs);
    rhs.push_back(r.rhs);
  }
  return extract_witness(a, rhs, y, anchor_e1, anchor_e2,
                         SelfDerivedProvenance{sys.layout().rings(), sys.families(), anchor_e1, anchor_e2});
}

/// The published level-15 witness, coefficients exactly as printed (over
/// 10^4).
inline WitnessPolynomial paper_witness() {
  static constexpr std::array<std::tuple<long, int, int>, 37> kTerms{{
      {1843, 9, 0},       {-18290, 8, 0},     {-46758, 7, 1},    {-395446, 7, 0},   {-8972, 6, 2},
      {-740838, 6, 1},    {-1162647, 6, 0},   {105142, 5, 2},    {-2483040, 5, 1},  {-791817, 5, 0},
      {-286167, 4, 3},    {-2383961, 4, 2},   {-5326388, 4, 1},  {-1530877, 4, 0},  {-33372, 3, 4},
      {-434770, 3, 3},    {-4517175, 3, 2},   {-3086530, 3, 1},  {329430, 3, 0},    {185457, 2, 4},
      {-734824, 2, 3},    {-4912832, 2, 2},   {-4505083, 2, 1},  {-1352657, 2, 0},  {13657, 1, 5},
      {-359763, 1, 4},    {-2251462, 1, 3},   {-3101144, 1, 2},  {-758387, 1, 1},   {133812, 1, 0},
      {-2856, 0, 6},      {-46748, 0, 5},     {-340812, 0, 4},   {-754711, 0, 3},   {-1232455, 0, 2},
      {-794846, 0, 1},    {-165823, 0, 0},
  }};
  Poly2 p;
  for (const auto& [c, d1, d2] : kTerms) p.add_term(d1, d2, make_rational(c, 10000));
  return {std::move(p), PaperProvenance{}};
}

enum class Verdict { kInvalidGray, kInfeasibleSymmetric, kUndecided };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kInvalidGray: return "INVALID_GRAY";
    case Verdict::kInfeasibleSymmetric: return "INFEASIBLE_SYMMETRIC";
    case Verdict::kUndecided: return "UNDECIDED";
  }
  return "?";
}

struct Classification {
  Verdict verdict = Verdict::kUndecided;
  std::optional<LpOutcome> outcome;  // absent for gray points
  SolveStats stats;
};

/// Gray when no E3 gives valid probabilities; otherwise infeasible exactly
/// when the assembled LP over `rings` is. Never reports realizability.
inline Classification classify_point(const Rational& e1, const Rational& e2, const std::vector<int>& rings,
                                     FamilySet families, const SolveOptions& opt = {}) {
  Classification c;
  if (e3_interval(e1, e2).empty()) {
    c.verdict = Verdict::kInvalidGray;
    return c;
  }
  AssembledSystem sys = assemble(rings, e1, e2, families);
  c.outcome = solve_feasibility(sys.lp(), opt, &c.stats);
  c.verdict = is_infeasible(*c.outcome) ? Verdict::kInfeasibleSymmetric : Verdict::kUndecided;
  return c;
}

/// Solves the constant-matrix system at the anchor and, when it is
/// infeasible, returns the extracted witness.
inline std::optional<WitnessPolynomial> derive_witness(const Rational& e1, const Rational& e2,
                                                       const std::vector<int>& rings, FamilySet families,
                                                       const SolveOptions& opt = {}) {
  AssembledSystem sys = assemble_symbolic(rings, families);
  LpOutcome out = solve_feasibility(sys.lp_at(e1, e2), opt);
  if (!is_infeasible(out)) return std::nullopt;
  return extract_witness(sys, std::get<Infeasible>(out).y, e1, e2);
}

inline std::string provenance_line(const Provenance& p) {
  if (std::holds_alternative<PaperProvenance>(p)) return "# witness paper-appendix";
  const auto& s = std::get<SelfDerivedProvenance>(p);
  std::ostringstream os;
  os << "# witness self-derived rings=";
  for (std::size_t i = 0; i < s.rings.size(); ++i) os << (i ? "," : "") << s.rings[i];
  os << " families=" << s.families.to_string() << " anchor=" << to_string(s.anchor_e1) << ','
     << to_string(s.anchor_e2);
  return os.str();
}

inline void write_witness(std::ostream& os, const WitnessPolynomial& w) {
  os << provenance_line(w.provenance) << '\n';
  write_poly2(os, w.poly);
}

inline WitnessPolynomial read_witness(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParseError("empty witness file");
  WitnessPolynomial w;
  if (header.rfind("# witness paper-appendix", 0) == 0) {
    w.provenance = PaperProvenance{};
  } else if (header.rfind("# witness self-derived", 0) == 0) {
    SelfDerivedProvenance s;
    std::istringstream hs(header.substr(22));
    for (std::string field; hs >> field;) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw ParseError("malformed witness header field: " + field);
      std::string key = field.substr(0, eq), val = field.substr(eq + 1);
      if (key == "rings") {
        std::istringstream vs(val);
        for (std::string t; std::getline(vs, t, ',');) s.rings.push_back(std::stoi(t));
      } else if (key == "families") {
        s.families = FamilySet::parse(val);
      } else if (key == "anchor") {
        auto comma = val.find(',');
        if (comma == std::string::npos) throw ParseError("malformed anchor: " + val);
        s.anchor_e1 = parse_rational(val.substr(0, comma));
        s.anchor_e2 = parse_rational(val.substr(comma + 1));
      }
    }
    w.provenance = std::move(s);
  } else {
    throw ParseError("missing witness provenance header");
  }
  w.poly = read_poly2(is);
  return w;
}

}  // namespace symtri
