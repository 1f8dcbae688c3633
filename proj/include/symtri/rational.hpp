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

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symtri {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised for malformed numeric or file input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer pow10(unsigned long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

/// Parses `num/den`, an integer, or a decimal literal such as `-0.1753` or
/// `1.5e-3`. Decimals are converted literally, never through a double.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw ParseError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string num(trim(text.substr(0, slash)));
    std::string den(trim(text.substr(slash + 1)));
    Integer n, d;
    auto is_int = [](const std::string& s) {
      std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (i >= s.size()) return false;
      for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
      return true;
    };
    if (!is_int(num) || !is_int(den)) throw ParseError("malformed rational: " + std::string(text));
    n.set_str(num[0] == '+' ? num.substr(1) : num, 10);
    d.set_str(den[0] == '+' ? den.substr(1) : den, 10);
    if (d == 0) throw ParseError("zero denominator: " + std::string(text));
    Rational q(n, d);
    q.canonicalize();
    return q;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw ParseError("malformed number: " + std::string(text));
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw ParseError("malformed number: " + std::string(text));
    std::string exp(text.substr(i + 1));
    if (exp.empty()) throw ParseError("malformed exponent: " + std::string(text));
    std::size_t used = 0;
    try {
      exponent = std::stol(exp, &used);
    } catch (const std::exception&) {
      throw ParseError("malformed exponent: " + std::string(text));
    }
    if (used != exp.size() || exponent > 10000 || exponent < -10000)
      throw ParseError("malformed exponent: " + std::string(text));
  }
  Integer mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long scale = exponent - frac_digits;
  Rational q;
  if (scale >= 0) {
    q = Rational(mantissa * pow10(static_cast<unsigned long>(scale)));
  } else {
    q = Rational(mantissa, pow10(static_cast<unsigned long>(-scale)));
    q.canonicalize();
  }
  return q;
}

/// `num/den`, or just `num` for integers.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rational from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value");
  return Rational(v);
}

inline std::size_t hash_value(const Rational& q) {
  auto limb_hash = [](const mpz_class& z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    const std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i) {
      h ^= std::hash<mp_limb_t>{}(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
    }
    return h;
  };
  std::size_t h = limb_hash(q.get_num());
  return h ^ (limb_hash(q.get_den()) * 0x100000001b3ULL);
}

}  // namespace symtri
