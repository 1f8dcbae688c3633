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
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "symtri/lin/sparse.hpp"
#include "symtri/rational.hpp"

namespace symtri {

/// Feasibility problem { x >= 0 : A x = b }.
struct StandardLp {
  SparseMatrix a;
  std::vector<Rational> b;

  StandardLp() = default;
  StandardLp(SparseMatrix matrix, std::vector<Rational> rhs) : a(std::move(matrix)), b(std::move(rhs)) {
    if (a.rows() != b.size()) throw std::invalid_argument("row count of A does not match b");
  }

  std::size_t rows() const { return a.rows(); }
  std::size_t cols() const { return a.cols(); }
};

struct Feasible {
  std::vector<Rational> x;
};

/// Farkas certificate: A^T y <= 0 and b^T y > 0.
struct Infeasible {
  std::vector<Rational> y;
};

using LpOutcome = std::variant<Feasible, Infeasible>;

inline bool is_infeasible(const LpOutcome& o) { return std::holds_alternative<Infeasible>(o); }
inline bool is_feasible(const LpOutcome& o) { return std::holds_alternative<Feasible>(o); }

/// Raised when a solve exceeds its pivot budget or cannot certify a result.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes `m n`, then `row col num/den` triples, then `b` entries one per line.
inline void dump_lp(std::ostream& os, const StandardLp& lp) {
  os << lp.rows() << ' ' << lp.cols() << '\n';
  for (std::size_t i = 0; i < lp.rows(); ++i)
    for (const auto& [j, c] : lp.a.row(i)) os << i << ' ' << j << ' ' << c.get_num() << '/' << c.get_den() << '\n';
  for (const auto& v : lp.b) os << v.get_num() << '/' << v.get_den() << '\n';
}

/// Reads the dump format. The triple block ends at the first line holding a
/// single token.
inline StandardLp parse_lp(std::istream& is) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(is, out)) {
      auto first = out.find_first_not_of(" \t\r");
      if (first != std::string::npos && out[first] != '#') return true;
    }
    return false;
  };
  if (!next_line(line)) throw ParseError("empty LP dump");
  std::istringstream header(line);
  long m = -1, n = -1;
  if (!(header >> m >> n) || m < 0 || n < 0) throw ParseError("malformed LP header: " + line);

  std::vector<std::vector<SparseVec::Entry>> rows(static_cast<std::size_t>(m));
  std::vector<Rational> b;
  b.reserve(static_cast<std::size_t>(m));
  while (next_line(line)) {
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.size() == 3 && b.empty()) {
      long i = std::stol(tok[0]), j = std::stol(tok[1]);
      if (i < 0 || i >= m || j < 0 || j >= n) throw ParseError("LP entry out of range: " + line);
      rows[static_cast<std::size_t>(i)].emplace_back(static_cast<SparseVec::Index>(j), parse_rational(tok[2]));
    } else if (tok.size() == 1) {
      b.push_back(parse_rational(tok[0]));
    } else {
      throw ParseError("malformed LP line: " + line);
    }
  }
  if (b.size() != static_cast<std::size_t>(m)) throw ParseError("LP dump has wrong number of b entries");
  SparseMatrix a(static_cast<std::size_t>(n));
  for (auto& r : rows) a.add_row(SparseVec::from_terms(static_cast<std::size_t>(n), std::move(r)));
  return StandardLp(std::move(a), std::move(b));
}

}  // namespace symtri
