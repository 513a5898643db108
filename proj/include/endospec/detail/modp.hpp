#pragma once

// Word-sized prime-field kernels backing the exact (CRT-based) polynomial and
// matrix routines. Primes are 31-bit so products fit comfortably in 64 bits;
// reduction uses a Barrett quotient estimate with one correction step.

#include <cstdint>
#include <vector>

#include "endospec/integer.hpp"

namespace endospec::detail {

struct PrimeField {
  std::uint64_t p;
  std::uint64_t barrett;  // floor(2^64 / p)

  explicit PrimeField(std::uint64_t prime)
      : p(prime), barrett(static_cast<std::uint64_t>((static_cast<__uint128_t>(1) << 64) / prime)) {}

  std::uint64_t reduce(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<__uint128_t>(x) * barrett) >> 64);
    std::uint64_t r = x - q * p;
    if (r >= p) r -= p;
    return r >= p ? r - p : r;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(a * b); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Deterministic descending list of 31-bit primes; index 0 is 2^31 - 1.
inline std::uint64_t nth_prime_below_2_31(std::size_t index) {
  static std::vector<std::uint64_t> cache;
  if (cache.empty()) cache.push_back(2147483647ULL);
  while (cache.size() <= index) {
    std::uint64_t n = cache.back() - 2;
    while (!is_prime_u64(n)) n -= 2;
    cache.push_back(n);
  }
  return cache[index];
}

inline std::uint64_t to_residue(const Int& v, const PrimeField& F) {
  Int r = v % Int(F.p);
  if (r < 0) r += Int(F.p);
  return r.convert_to<std::uint64_t>();
}

// --- dense polynomials over GF(p): ascending coefficients, trimmed ---

using ModPoly = std::vector<std::uint64_t>;

inline void trim_mod(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly make_monic(ModPoly a, const PrimeField& F) {
  trim_mod(a);
  if (a.empty()) return a;
  std::uint64_t s = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, s);
  return a;
}

// Remainder of a by b (b nonzero), in place of a copy.
inline ModPoly rem_mod(ModPoly a, const ModPoly& b, const PrimeField& F) {
  trim_mod(a);
  std::uint64_t lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    std::uint64_t f = F.mul(a.back(), lead_inv);
    if (f != 0) {
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i + 1 < b.size(); ++i)
        a[off + i] = F.sub(a[off + i], F.mul(f, b[i]));
    }
    a.pop_back();
    trim_mod(a);
    if (a.empty()) break;
  }
  return a;
}

inline ModPoly gcd_mod(ModPoly a, ModPoly b, const PrimeField& F) {
  trim_mod(a);
  trim_mod(b);
  while (!b.empty()) {
    ModPoly r = rem_mod(std::move(a), b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), F);
}

inline ModPoly mulmod_poly(const ModPoly& a, const ModPoly& b, const PrimeField& F) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
  trim_mod(out);
  return out;
}

// t^e modulo the monic-izable polynomial f (deg f >= 1), by binary powering.
inline ModPoly pow_t_mod(std::uint64_t e, const ModPoly& f, const PrimeField& F) {
  ModPoly base{0, 1};
  ModPoly acc{1};
  while (e) {
    if (e & 1) acc = rem_mod(mulmod_poly(acc, base, F), f, F);
    base = rem_mod(mulmod_poly(base, base, F), f, F);
    e >>= 1;
  }
  return acc;
}

// --- characteristic polynomial over GF(p) via Hessenberg reduction ---

// M is row-major n x n with entries already reduced mod p. Returns the monic
// characteristic polynomial det(tI - M), ascending, length n+1.
inline ModPoly charpoly_mod(std::vector<std::uint64_t> m, std::size_t n, const PrimeField& F) {
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return m[i * n + j]; };

  // Similarity reduction to upper Hessenberg form with column pivoting.
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t pivot = c + 1;
    while (pivot < n && at(pivot, c) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(pivot, j), at(c + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(at(i, pivot), at(i, c + 1));
    }
    std::uint64_t inv = F.inv(at(c + 1, c));
    for (std::size_t r = c + 2; r < n; ++r) {
      std::uint64_t f = F.mul(at(r, c), inv);
      if (f == 0) continue;
      // row_r -= f * row_{c+1}; col_{c+1} += f * col_r  (similarity pair)
      std::uint64_t* rr = &m[r * n];
      std::uint64_t* rp = &m[(c + 1) * n];
      for (std::size_t j = c; j < n; ++j) rr[j] = F.sub(rr[j], F.mul(f, rp[j]));
      for (std::size_t i = 0; i < n; ++i) at(i, c + 1) = F.add(at(i, c + 1), F.mul(f, at(i, r)));
    }
  }

  // Charpolys of leading principal minors of the Hessenberg form, by
  // last-column expansion: p_m = (t - H[m-1][m-1]) p_{m-1}
  //                              - sum_i H[i][m-1] (prod subdiag) p_{i-1}.
  std::vector<ModPoly> p(n + 1);
  p[0] = ModPoly{1};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t mm = k - 1;  // 0-based row/col of the new diagonal entry
    ModPoly cur(k + 1, 0);
    // (t - H[mm][mm]) * p_{k-1}
    const ModPoly& prev = p[k - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      cur[i + 1] = F.add(cur[i + 1], prev[i]);
      cur[i] = F.sub(cur[i], F.mul(at(mm, mm), prev[i]));
    }
    std::uint64_t chain = 1;
    for (std::size_t i = mm; i-- > 0;) {
      chain = F.mul(chain, at(i + 1, i));
      if (chain == 0) break;
      std::uint64_t coef = F.mul(at(i, mm), chain);
      if (coef == 0) continue;
      const ModPoly& pi = p[i];
      for (std::size_t j = 0; j < pi.size(); ++j) cur[j] = F.sub(cur[j], F.mul(coef, pi[j]));
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

// --- Chinese remaindering ---

// Incrementally combines residues into a single symmetric representative.
class CrtAccumulator {
 public:
  void add(std::uint64_t residue, std::uint64_t prime) {
    if (modulus_ == 0) {
      value_ = Int(residue);
      modulus_ = Int(prime);
      return;
    }
    // value' = value + modulus * ((residue - value) * modulus^{-1} mod p)
    PrimeField F(prime);
    std::uint64_t v_mod = to_residue(value_, F);
    std::uint64_t m_mod = to_residue(modulus_, F);
    std::uint64_t delta = F.mul(F.sub(residue, v_mod), F.inv(m_mod));
    value_ += modulus_ * Int(delta);
    modulus_ *= Int(prime);
  }

  // Representative in (-M/2, M/2].
  Int symmetric() const {
    Int half = modulus_ / 2;
    if (value_ > half) return value_ - modulus_;
    return value_;
  }

  const Int& modulus() const { return modulus_; }

 private:
  Int value_ = 0;
  Int modulus_ = 0;
};

}  // namespace endospec::detail
