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
#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "symtri/rational.hpp"

namespace symtri {

/// A binary outcome in {-1, +1}. For bit-level work +1 is bit 0 and -1 is
/// bit 1.
class Outcome {
 public:
  static constexpr Outcome plus() { return Outcome(1); }
  static constexpr Outcome minus() { return Outcome(-1); }
  static constexpr Outcome from_bit(unsigned bit) { return Outcome(bit ? -1 : 1); }

  constexpr int value() const { return value_; }
  constexpr unsigned bit() const { return value_ < 0 ? 1U : 0U; }
  constexpr Outcome operator-() const { return Outcome(-value_); }
  friend constexpr bool operator==(Outcome, Outcome) = default;

 private:
  explicit constexpr Outcome(int v) : value_(v) {}
  int value_;
};

inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::plus(), Outcome::minus()};

/// The permutation-symmetric tripartite binary distribution
///   p(a,b,c) = [1 + (a+b+c) E1 + (ab+ac+bc) E2 + abc E3] / 8.
/// E3 may be left open when a statement quantifies over every admissible E3.
class SymmetricDist {
 public:
  SymmetricDist(Rational e1, Rational e2, std::optional<Rational> e3 = std::nullopt)
      : e1_(std::move(e1)), e2_(std::move(e2)), e3_(std::move(e3)) {
    auto in_unit = [](const Rational& v) { return v >= -1 && v <= 1; };
    if (!in_unit(e1_) || !in_unit(e2_)) throw std::invalid_argument("correlators must lie in [-1, 1]");
    if (e3_) {
      if (!in_unit(*e3_)) throw std::invalid_argument("E3 must lie in [-1, 1]");
      for (Outcome a : kOutcomes)
        for (Outcome b : kOutcomes)
          for (Outcome c : kOutcomes)
            if (unnormalized(a, b, c) < 0)
              throw std::invalid_argument("E3 gives a negative probability at these (E1, E2)");
    }
  }

  static SymmetricDist uniform() { return SymmetricDist(0, 0, Rational(0)); }

  const Rational& e1() const { return e1_; }
  const Rational& e2() const { return e2_; }
  const std::optional<Rational>& e3() const { return e3_; }
  bool has_e3() const { return e3_.has_value(); }

 private:
  friend Rational prob(const SymmetricDist&, Outcome, Outcome, Outcome);

  Rational unnormalized(Outcome a, Outcome b, Outcome c) const {
    const int s1 = a.value() + b.value() + c.value();
    const int s2 = a.value() * b.value() + a.value() * c.value() + b.value() * c.value();
    const int s3 = a.value() * b.value() * c.value();
    return 1 + s1 * e1_ + s2 * e2_ + s3 * (*e3_);
  }

  Rational e1_;
  Rational e2_;
  std::optional<Rational> e3_;
};

inline Rational prob(const SymmetricDist& d, Outcome a, Outcome b, Outcome c) {
  if (!d.has_e3()) throw std::invalid_argument("prob requires E3");
  Rational p = d.unnormalized(a, b, c) / 8;
  return p;
}

/// Single-party marginal q1(a) = (1 + a E1) / 2.
inline Rational marginal1(const Rational& e1, Outcome a) {
  Rational q = (1 + a.value() * e1) / 2;
  return q;
}
inline Rational marginal1(const SymmetricDist& d, Outcome a) { return marginal1(d.e1(), a); }

/// Two-party marginal q2(a,b) = (1 + (a+b) E1 + ab E2) / 4.
inline Rational marginal2(const Rational& e1, const Rational& e2, Outcome a, Outcome b) {
  Rational q = (1 + (a.value() + b.value()) * e1 + a.value() * b.value() * e2) / 4;
  return q;
}
inline Rational marginal2(const SymmetricDist& d, Outcome a, Outcome b) {
  return marginal2(d.e1(), d.e2(), a, b);
}

/// Closed interval of admissible E3; empty when lo > hi.
struct E3Interval {
  Rational lo;
  Rational hi;

  bool empty() const { return lo > hi; }
  Rational width() const { return empty() ? Rational(0) : Rational(hi - lo); }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return !empty() && v >= lo && v <= hi; }
};

/// The E3 values that make all eight probabilities nonnegative, clipped to
/// [-1, 1].
inline E3Interval e3_interval(const Rational& e1, const Rational& e2) {
  std::optional<Rational> lower, upper;
  for (Outcome a : kOutcomes)
    for (Outcome b : kOutcomes)
      for (Outcome c : kOutcomes) {
        const int s1 = a.value() + b.value() + c.value();
        const int s2 = a.value() * b.value() + a.value() * c.value() + b.value() * c.value();
        Rational base = 1 + s1 * e1 + s2 * e2;
        if (a.value() * b.value() * c.value() > 0) {
          Rational bound = -base;
          if (!lower || bound > *lower) lower = bound;
        } else {
          if (!upper || base < *upper) upper = base;
        }
      }
  E3Interval out{std::max(*lower, Rational(-1)), std::min(*upper, Rational(1))};
  return out;
}

}  // namespace symtri
