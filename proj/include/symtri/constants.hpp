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

#include <stdexcept>
#include <string>
#include <string_view>

#include "symtri/bigfloat.hpp"
#include "symtri/rational.hpp"

namespace symtri {

inline constexpr unsigned kDefaultPrecisionBits = 200;
inline constexpr unsigned kMinPrecisionBits = 64;

inline Integer default_max_denominator() { return pow10(12); }

/// Best rational approximation of `v` with denominator at most
/// `max_denominator` (continued fractions plus the semiconvergent check).
inline Rational limit_denominator(const Rational& v, const Integer& max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");
  if (v.get_den() <= max_denominator) return v;

  // Convergents p0/q0, p1/q1 of v = n/d.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = v.get_num(), d = v.get_den();
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Integer q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Integer r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  Integer k;
  mpz_fdiv_q(k.get_mpz_t(), Integer(max_denominator - q0).get_mpz_t(), q1.get_mpz_t());
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  Rational e1 = abs(bound2 - v), e2 = abs(bound1 - v);
  return e1 <= e2 ? bound2 : bound1;
}

/// Best rational approximation of a high-precision real (the MPFR value is
/// itself an exact dyadic rational).
inline Rational rationalize(const BigFloat& v, const Integer& max_denominator) {
  return limit_denominator(v.to_rational(), max_denominator);
}

enum class ConstantTag { kE1c, kE3c, kXRoot, kYValue };

inline std::string_view constant_name(ConstantTag tag) {
  switch (tag) {
    case ConstantTag::kE1c: return "E1C";
    case ConstantTag::kE3c: return "E3C";
    case ConstantTag::kXRoot: return "X_ROOT";
    case ConstantTag::kYValue: return "Y_VALUE";
  }
  return "?";
}

struct ExactConstant {
  ConstantTag tag;
  BigFloat value;
  Rational rational_approx;
  /// Upper bound on |value - rational_approx| (and on the error of `value`
  /// against the true constant).
  Rational approx_bound;
};

namespace detail {

struct RadicalTerms {
  BigFloat two_five_thirds;  // 2^(5/3)
  BigFloat c1;               // cbrt(3 sqrt(41) + 25)
  BigFloat c2;               // cbrt(21600 - 2592 sqrt(41))
  BigFloat r41;
};

inline RadicalTerms radical_terms(mpfr_prec_t bits) {
  BigFloat r41 = sqrt(BigFloat(41, bits));
  BigFloat c1 = cbrt(3 * r41 + 25);
  BigFloat c2 = cbrt(21600 - 2592 * r41);
  BigFloat t = cbrt(BigFloat(32, bits));
  return {t, c1, c2, r41};
}

inline BigFloat e1c(mpfr_prec_t bits) {
  auto t = radical_terms(bits);
  BigFloat r = 3 * t.two_five_thirds * t.c1 + t.c2 - 21;
  BigFloat half(make_rational(1, 2), bits);
  BigFloat inner = 34 / sqrt(3 * r) - t.two_five_thirds * t.c1 / 9 - t.c2 / 27 - BigFloat(make_rational(14, 9), bits);
  return half - 1 / (6 * sqrt(3 / r)) + half * sqrt(inner);
}

inline BigFloat e3c(mpfr_prec_t bits) {
  auto t = radical_terms(bits);
  BigFloat s = t.two_five_thirds * t.c1 + t.c2 / 3 - 7;
  BigFloat half(make_rational(1, 2), bits);
  BigFloat inner = 102 / sqrt(s) - t.two_five_thirds * t.c1 - t.c2 / 3 - 14;
  return BigFloat(make_rational(-3, 2), bits) + half * sqrt(s) - half * sqrt(inner);
}

inline BigFloat x_root(mpfr_prec_t bits) {
  BigFloat r41 = sqrt(BigFloat(41, bits));
  BigFloat k1 = cbrt(2 / (r41 + 3));
  BigFloat k2 = cbrt((r41 + 3) / 2);
  BigFloat d = 3 - 8 * k1 + cbrt(BigFloat(32, bits)) * cbrt(r41 + 3);
  BigFloat half(make_rational(1, 2), bits);
  BigFloat inner = half + 2 * k1 / 3 - k2 / 3 + 13 / (2 * sqrt(3 * d));
  return BigFloat(make_rational(3, 4), bits) - half * sqrt(inner) + 1 / (4 * sqrt(3 / d));
}

inline BigFloat y_value(mpfr_prec_t bits) {
  BigFloat x = x_root(bits);
  return 1 / (3 * (2 * x * x - 2 * x + 1));
}

}  // namespace detail

/// Evaluates the nested-radical closed form of a named constant.
inline ExactConstant constant(ConstantTag tag, unsigned precision_bits = kDefaultPrecisionBits,
                              const Integer& max_denominator = default_max_denominator()) {
  if (precision_bits < kMinPrecisionBits)
    throw std::invalid_argument("precision below " + std::to_string(kMinPrecisionBits) + " bits");
  // Guard bits absorb the rounding of the radical chain.
  const auto work = static_cast<mpfr_prec_t>(precision_bits + 32);
  BigFloat v(work);
  switch (tag) {
    case ConstantTag::kE1c: v = detail::e1c(work); break;
    case ConstantTag::kE3c: v = detail::e3c(work); break;
    case ConstantTag::kXRoot: v = detail::x_root(work); break;
    case ConstantTag::kYValue: v = detail::y_value(work); break;
  }
  BigFloat rounded(static_cast<mpfr_prec_t>(precision_bits));
  mpfr_set(rounded.get(), v.get(), MPFR_RNDN);

  Rational approx = rationalize(rounded, max_denominator);
  Rational bound = Rational(1) / Rational(max_denominator);
  Rational ulp = BigFloat::exp2(-static_cast<long>(precision_bits) + 4, 64).to_rational();
  bound += ulp;
  return ExactConstant{tag, std::move(rounded), std::move(approx), std::move(bound)};
}

}  // namespace symtri
