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

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "symtri/rational.hpp"

namespace symtri {

inline constexpr int kDefaultMaxPolyDegree = 40;

class DegreeOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Bivariate polynomial in (E1, E2) with exact rational coefficients.
class Poly2 {
 public:
  using Monomial = std::pair<int, int>;  // (deg E1, deg E2)

  Poly2() = default;
  explicit Poly2(Rational c, int max_degree = kDefaultMaxPolyDegree) : max_degree_(max_degree) {
    add_term(0, 0, std::move(c));
  }

  static Poly2 constant(const Rational& c) { return Poly2(c); }
  static Poly2 e1() { return monomial(1, 0, Rational(1)); }
  static Poly2 e2() { return monomial(0, 1, Rational(1)); }
  static Poly2 monomial(int d1, int d2, Rational c) {
    Poly2 p;
    p.add_term(d1, d2, std::move(c));
    return p;
  }

  int max_degree() const { return max_degree_; }
  void set_max_degree(int d) { max_degree_ = d; }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(int d1, int d2) const {
    auto it = terms_.find({d1, d2});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
    return d;
  }

  void add_term(int d1, int d2, const Rational& c) {
    if (d1 < 0 || d2 < 0) throw std::invalid_argument("negative monomial degree");
    if (d1 + d2 > max_degree_) throw DegreeOverflow("polynomial degree exceeds bound " + std::to_string(max_degree_));
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace({d1, d2}, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Poly2& operator+=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m.first, m.second, c);
    return *this;
  }
  Poly2& operator-=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m.first, m.second, -c);
    return *this;
  }
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }

  Poly2 scaled(const Rational& k) const {
    Poly2 p;
    p.max_degree_ = max_degree_;
    if (sgn(k) == 0) return p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, c * k);
    return p;
  }
  friend Poly2 operator*(const Rational& k, const Poly2& p) { return p.scaled(k); }

  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

 private:
  int max_degree_ = kDefaultMaxPolyDegree;
  std::map<Monomial, Rational> terms_;
};

/// Exact product; throws DegreeOverflow past the smaller of the two bounds.
inline Poly2 poly_mul(const Poly2& p, const Poly2& q) {
  Poly2 r;
  r.set_max_degree(std::min(p.max_degree(), q.max_degree()));
  for (const auto& [mp, cp] : p.terms())
    for (const auto& [mq, cq] : q.terms()) r.add_term(mp.first + mq.first, mp.second + mq.second, cp * cq);
  return r;
}
inline Poly2 operator*(const Poly2& p, const Poly2& q) { return poly_mul(p, q); }

/// Horner evaluation: outer in E1, inner in E2.
inline Rational poly_eval(const Poly2& p, const Rational& e1, const Rational& e2) {
  if (p.is_zero()) return Rational(0);
  // terms() is ordered by (d1, d2); walk it from the top degree in E1.
  std::map<int, std::map<int, Rational>> by_d1;
  for (const auto& [m, c] : p.terms()) by_d1[m.first][m.second] = c;
  Rational acc = 0;
  int prev = by_d1.rbegin()->first;
  for (auto it = by_d1.rbegin(); it != by_d1.rend(); ++it) {
    for (int k = it->first; k < prev; ++k) acc *= e1;
    prev = it->first;
    Rational inner = 0;
    int prev2 = it->second.rbegin()->first;
    for (auto jt = it->second.rbegin(); jt != it->second.rend(); ++jt) {
      for (int k = jt->first; k < prev2; ++k) inner *= e2;
      prev2 = jt->first;
      inner += jt->second;
    }
    for (int k = 0; k < prev2; ++k) inner *= e2;
    acc += inner;
  }
  for (int k = 0; k < prev; ++k) acc *= e1;
  return acc;
}

/// Writes `num/den deg_E1 deg_E2` lines in ascending monomial order.
inline void write_poly2(std::ostream& os, const Poly2& p) {
  for (const auto& [m, c] : p.terms()) os << c.get_num() << '/' << c.get_den() << ' ' << m.first << ' ' << m.second << '\n';
}

/// Reads monomial lines until end of stream; blank lines and `#` comments are
/// skipped.
inline Poly2 read_poly2(std::istream& is, int max_degree = kDefaultMaxPolyDegree) {
  Poly2 p;
  p.set_max_degree(max_degree);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string coeff;
    long d1 = -1, d2 = -1;
    std::string extra;
    if (!(ls >> coeff >> d1 >> d2) || (ls >> extra) || d1 < 0 || d2 < 0)
      throw ParseError("malformed monomial on line " + std::to_string(line_no) + ": " + line);
    p.add_term(static_cast<int>(d1), static_cast<int>(d2), parse_rational(coeff));
  }
  return p;
}

inline std::string to_string(const Poly2& p) {
  std::ostringstream os;
  write_poly2(os, p);
  return os.str();
}

}  // namespace symtri
