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

// gmp must precede mpfr for the mpq interfaces.
#include "symtri/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <string>
#include <utility>

namespace symtri {

/// Owning MPFR value with an explicit precision in bits. Binary operations
/// produce a result at the larger operand precision, rounded to nearest.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 200) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(long value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  BigFloat(const Rational& value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// The exact dyadic rational held by this value.
  Rational to_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

  std::string to_string(int digits = 20) const {
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  int sign() const { return mpfr_sgn(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }
  friend BigFloat operator+(const BigFloat& a, long b) { return a + BigFloat(b, a.precision()); }
  friend BigFloat operator-(const BigFloat& a, long b) { return a - BigFloat(b, a.precision()); }
  friend BigFloat operator-(long a, const BigFloat& b) { return BigFloat(a, b.precision()) - b; }
  friend BigFloat operator*(long a, const BigFloat& b) { return BigFloat(a, b.precision()) * b; }
  friend BigFloat operator*(const BigFloat& a, long b) { return a * BigFloat(b, a.precision()); }
  friend BigFloat operator/(const BigFloat& a, long b) { return a / BigFloat(b, a.precision()); }
  friend BigFloat operator/(long a, const BigFloat& b) { return BigFloat(a, b.precision()) / b; }
  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend BigFloat sqrt(const BigFloat& a) { return unary(a, mpfr_sqrt); }
  friend BigFloat cbrt(const BigFloat& a) { return unary(a, mpfr_cbrt); }
  friend BigFloat abs(const BigFloat& a) { return unary(a, mpfr_abs); }

  /// 2^e at the given precision.
  static BigFloat exp2(long e, mpfr_prec_t bits) {
    BigFloat r(1, bits);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

 private:
  using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

  static BigFloat binary(const BigFloat& a, const BigFloat& b, Binary op) {
    BigFloat r(std::max(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat unary(const BigFloat& a, Unary op) {
    BigFloat r(a.precision());
    op(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

}  // namespace symtri
