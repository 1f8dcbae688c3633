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
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "symtri/lin/sparse.hpp"
#include "symtri/rational.hpp"

namespace symtri::modp {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using i128 = __int128;

inline constexpr std::array<u32, 5> kPrimes{2147483647U, 2147483629U, 2147483587U, 2147483579U, 2147483563U};

inline u32 mul(u32 a, u32 b, u32 p) { return static_cast<u32>(static_cast<u64>(a) * b % p); }
inline u32 add(u32 a, u32 b, u32 p) {
  u64 s = static_cast<u64>(a) + b;
  return static_cast<u32>(s >= p ? s - p : s);
}
inline u32 sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + (p - b); }

inline u32 pow(u32 a, u64 e, u32 p) {
  u64 r = 1, x = a % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<u32>(r);
}
inline u32 inv(u32 a, u32 p) { return pow(a, p - 2, p); }

inline u32 reduce(const Integer& z, u32 p) { return static_cast<u32>(mpz_fdiv_ui(z.get_mpz_t(), p)); }
inline u32 reduce(i64 v, u32 p) {
  i64 r = v % static_cast<i64>(p);
  return static_cast<u32>(r < 0 ? r + p : r);
}

/// n/d mod p, or nullopt when p divides d.
inline std::optional<u32> reduce(const Rational& q, u32 p) {
  u32 d = reduce(q.get_den(), p);
  if (d == 0) return std::nullopt;
  return mul(reduce(q.get_num(), p), inv(d, p), p);
}

/// Greedy row selection: indices of rows that are linearly independent mod p,
/// hence independent over Q. Rows dependent mod p may still be independent
/// over Q, so callers verify against the dropped rows.
inline std::optional<std::vector<std::size_t>> independent_rows(const std::vector<const SparseVec*>& rows,
                                                                std::size_t cols, u32 p) {
  std::vector<std::vector<u32>> basis;
  std::vector<std::size_t> pivot_col;
  std::vector<std::size_t> chosen;
  std::vector<u32> v(cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (basis.size() == cols) break;
    std::fill(v.begin(), v.end(), 0);
    for (const auto& [j, c] : *rows[r]) {
      auto m = reduce(c, p);
      if (!m) return std::nullopt;
      v[j] = *m;
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
      u32 f = v[pivot_col[k]];
      if (f == 0) continue;
      const auto& bk = basis[k];
      for (std::size_t j = 0; j < cols; ++j)
        if (bk[j]) v[j] = sub(v[j], mul(f, bk[j], p), p);
    }
    std::size_t pc = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (v[j]) {
        pc = j;
        break;
      }
    if (pc == cols) continue;
    u32 s = inv(v[pc], p);
    for (auto& e : v) e = mul(e, s, p);
    // Keep the basis fully reduced on pivot columns.
    for (auto& bk : basis) {
      u32 f = bk[pc];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (v[j]) bk[j] = sub(bk[j], mul(f, v[j], p), p);
    }
    basis.push_back(v);
    pivot_col.push_back(pc);
    chosen.push_back(r);
  }
  return chosen;
}

/// Dense LU factorization of a square matrix mod p with row pivoting.
class LuModP {
 public:
  /// Returns nullopt when the matrix is singular mod p.
  static std::optional<LuModP> factor(std::vector<u32> a, std::size_t n, u32 p) {
    LuModP lu;
    lu.n_ = n;
    lu.p_ = p;
    lu.perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) lu.perm_[i] = i;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = n;
      for (std::size_t r = c; r < n; ++r)
        if (a[r * n + c]) {
          piv = r;
          break;
        }
      if (piv == n) return std::nullopt;
      if (piv != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
        std::swap(lu.perm_[piv], lu.perm_[c]);
      }
      const u32 s = inv(a[c * n + c], p);
      const u32* prow = &a[c * n];
      for (std::size_t r = c + 1; r < n; ++r) {
        u32* row = &a[r * n];
        if (row[c] == 0) continue;
        const u32 f = mul(row[c], s, p);
        row[c] = f;
        const u64 nf = p - f;
        for (std::size_t j = c + 1; j < n; ++j) row[j] = static_cast<u32>((row[j] + nf * prow[j]) % p);
      }
    }
    lu.lu_ = std::move(a);
    return lu;
  }

  std::size_t size() const { return n_; }
  u32 prime() const { return p_; }

  /// Solves A x = b mod p.
  std::vector<u32> solve(const std::vector<u32>& b) const {
    const std::size_t n = n_;
    std::vector<u32> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
      u64 acc = y[i];
      const u32* row = &lu_[i * n];
      for (std::size_t j = 0; j < i; ++j) acc = (acc + static_cast<u64>(p_ - row[j]) * y[j]) % p_;
      y[i] = static_cast<u32>(acc);
    }
    for (std::size_t i = n; i-- > 0;) {
      u64 acc = y[i];
      const u32* row = &lu_[i * n];
      for (std::size_t j = i + 1; j < n; ++j) acc = (acc + static_cast<u64>(p_ - row[j]) * y[j]) % p_;
      y[i] = mul(static_cast<u32>(acc), inv(row[i], p_), p_);
    }
    return y;
  }

 private:
  std::size_t n_ = 0;
  u32 p_ = 0;
  std::vector<u32> lu_;
  std::vector<std::size_t> perm_;
};

/// Finds n/d = a mod m with |n| <= nbound and 0 < d <= dbound, by the
/// half-extended Euclidean algorithm.
inline std::optional<std::pair<Integer, Integer>> rational_reconstruct(const Integer& a, const Integer& m,
                                                                       const Integer& nbound, const Integer& dbound) {
  Integer r0 = m, r1;
  mpz_fdiv_r(r1.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  Integer t0 = 0, t1 = 1;
  Integer q, tmp;
  while (r1 > nbound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0) return std::nullopt;
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  if (t1 > dbound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return std::make_pair(r1, t1);
}

/// Dense integer square system for p-adic lifting. Entries live in `small`
/// when every one fits comfortably in 64 bits, otherwise in `big`.
struct IntSystem {
  std::size_t n = 0;
  std::vector<i64> small;    // row-major n x n
  std::vector<Integer> big;  // row-major n x n
  std::vector<Integer> rhs;  // n

  bool is_small() const { return !small.empty() || n == 0; }
  Integer entry(std::size_t i, std::size_t j) const {
    return is_small() ? Integer(static_cast<long>(small[i * n + j])) : big[i * n + j];
  }
};

struct DixonStats {
  std::size_t lift_steps = 0;
  u32 prime = 0;
};

/// Solves M x = c over Q by Dixon p-adic lifting with early-terminating
/// rational reconstruction. Returns nullopt when M is singular mod every
/// tried prime.
inline std::optional<std::vector<Rational>> dixon_solve(const IntSystem& sys, DixonStats* stats = nullptr) {
  const std::size_t n = sys.n;
  if (n == 0) return std::vector<Rational>{};
  const bool small = sys.is_small();

  // Hadamard-type bound on the lifting length.
  double log2h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double v = small ? static_cast<double>(sys.small[i * n + j]) : sys.big[i * n + j].get_d();
      s += v * v;
    }
    double bi = sys.rhs[i].get_d();
    s += bi * bi;
    if (s > 0) log2h += 0.5 * std::log2(s);
  }

  for (u32 p : kPrimes) {
    std::vector<u32> mp(n * n);
    for (std::size_t k = 0; k < n * n; ++k) mp[k] = small ? reduce(sys.small[k], p) : reduce(sys.big[k], p);
    auto lu = LuModP::factor(std::move(mp), n, p);
    if (!lu) continue;

    const std::size_t max_steps = static_cast<std::size_t>(std::ceil((2 * log2h + 4) / 30.0)) + 4;
    std::vector<Integer> residual = sys.rhs;
    std::vector<Integer> acc(n, 0);  // sum of digits * p^k
    Integer pk = 1;
    std::vector<u32> rmod(n);
    std::size_t next_check = 8;
    for (std::size_t step = 1; step <= max_steps; ++step) {
      for (std::size_t i = 0; i < n; ++i) rmod[i] = reduce(residual[i], p);
      std::vector<u32> digit = lu->solve(rmod);
      // Symmetric digits keep the residual small.
      std::vector<i64> sd(n);
      for (std::size_t i = 0; i < n; ++i)
        sd[i] = digit[i] > p / 2 ? static_cast<i64>(digit[i]) - static_cast<i64>(p) : static_cast<i64>(digit[i]);
      for (std::size_t i = 0; i < n; ++i) {
        if (small) {
          i128 s = 0;
          const i64* row = &sys.small[i * n];
          for (std::size_t j = 0; j < n; ++j) s += static_cast<i128>(row[j]) * sd[j];
          // Split the 128-bit value into mpz.
          bool neg = s < 0;
          unsigned __int128 u = neg ? static_cast<unsigned __int128>(-s) : static_cast<unsigned __int128>(s);
          Integer z = static_cast<unsigned long>(u >> 64);
          z <<= 64;
          z += static_cast<unsigned long>(static_cast<u64>(u));
          if (neg) z = -z;
          residual[i] -= z;
        } else {
          Integer s = 0;
          for (std::size_t j = 0; j < n; ++j) s += sys.big[i * n + j] * sd[j];
          residual[i] -= s;
        }
        mpz_divexact_ui(residual[i].get_mpz_t(), residual[i].get_mpz_t(), p);
      }
      for (std::size_t i = 0; i < n; ++i) acc[i] += pk * sd[i];
      pk *= p;

      if (step < next_check && step < max_steps) continue;
      next_check = step * 2;

      // Early termination: reconstruct with a running common denominator.
      Integer nb;
      mpz_sqrt(nb.get_mpz_t(), Integer(pk / 2).get_mpz_t());
      Integer den = 1;
      std::vector<Integer> num(n);
      std::vector<Integer> den_at(n);
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        Integer a;
        mpz_mod(a.get_mpz_t(), Integer(acc[i] * den).get_mpz_t(), pk.get_mpz_t());
        if (a > pk / 2) a -= pk;
        if (abs(a) <= nb) {
          num[i] = a;
          den_at[i] = den;
          continue;
        }
        auto rr = rational_reconstruct(a, pk, nb, nb / den);
        if (!rr) {
          ok = false;
          break;
        }
        den *= rr->second;
        num[i] = rr->first;
        den_at[i] = den;
      }
      if (!ok) continue;
      std::vector<Rational> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = Rational(num[i], den_at[i]);
        x[i].canonicalize();
      }
      // Exact check M x = c with integer numerators over the common denominator.
      std::vector<Integer> xn(n);
      for (std::size_t i = 0; i < n; ++i) xn[i] = num[i] * (den / den_at[i]);
      bool exact = true;
      for (std::size_t i = 0; i < n && exact; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(xn[j]) == 0) continue;
          if (small) {
            const i64 v = sys.small[i * n + j];
            if (v >= 0) {
              mpz_addmul_ui(s.get_mpz_t(), xn[j].get_mpz_t(), static_cast<unsigned long>(v));
            } else {
              mpz_submul_ui(s.get_mpz_t(), xn[j].get_mpz_t(), static_cast<unsigned long>(-v));
            }
          } else {
            s += sys.big[i * n + j] * xn[j];
          }
        }
        exact = (s == sys.rhs[i] * den);
      }
      if (exact) {
        if (stats) *stats = {step, p};
        return x;
      }
    }
    // Reconstruction within the bound failed: the matrix is singular over Q
    // despite being invertible mod p, which cannot happen; try the next prime.
  }
  return std::nullopt;
}

}  // namespace symtri::modp
