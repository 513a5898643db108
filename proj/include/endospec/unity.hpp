#pragma once

// Exact decision procedure for "is every root of this polynomial a root of
// unity", plus the non-cyclotomic remainder used as a witness.
//
// If a degree-d squarefree polynomial has a root of unity of order m, then
// EulerPhi(m) <= d, and EulerPhi(m) >= sqrt(m/2) for all m >= 1, so
// m <= 2*d^2 + 1. The candidate orders are therefore finite and small. Each
// candidate m is screened with one word-sized prime (gcd with t^m - 1 mod p;
// a coprime image certifies that Phi_m does not divide), and survivors are
// confirmed by exact division by the cyclotomic polynomial Phi_m.

#include <cstdint>
#include <numeric>
#include <vector>

#include "endospec/detail/modp.hpp"
#include "endospec/errors.hpp"
#include "endospec/intpoly.hpp"

namespace endospec {

namespace detail {

inline std::vector<long> totient_sieve(long n) {
  std::vector<long> phi(static_cast<std::size_t>(n) + 1);
  std::iota(phi.begin(), phi.end(), 0L);
  for (long p = 2; p <= n; ++p)
    if (phi[static_cast<std::size_t>(p)] == p)
      for (long k = p; k <= n; k += p)
        phi[static_cast<std::size_t>(k)] -= phi[static_cast<std::size_t>(k)] / p;
  return phi;
}

// Ascending orders m with EulerPhi(m) <= d (hence m <= 2d^2 + 1).
inline std::vector<long> candidate_orders(int d) {
  if (d <= 0) return {};
  long limit = 2L * d * d + 1;
  auto phi = totient_sieve(limit);
  std::vector<long> out;
  for (long m = 1; m <= limit; ++m)
    if (phi[static_cast<std::size_t>(m)] <= d) out.push_back(m);
  return out;
}

// Exact cyclotomic polynomial by the Moebius product
// Phi_m(t) = prod_{d | m} (t^d - 1)^{mu(m/d)}.
inline IntPoly cyclotomic(long m) {
  std::vector<long> divisors;
  for (long d = 1; d * d <= m; ++d)
    if (m % d == 0) {
      divisors.push_back(d);
      if (d != m / d) divisors.push_back(m / d);
    }
  auto moebius = [](long n) -> int {
    int mu = 1;
    for (long p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
      }
    if (n > 1) mu = -mu;
    return mu;
  };

  auto mul_binomial = [](IntPoly p, long d) {  // p * (t^d - 1)
    std::vector<Int> c(p.coeffs().size() + static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
      c[i + static_cast<std::size_t>(d)] += p.coeffs()[i];
      c[i] -= p.coeffs()[i];
    }
    return IntPoly(std::move(c));
  };
  auto div_binomial = [](const IntPoly& p, long d) {  // p / (t^d - 1), exact
    if (p.is_zero()) return IntPoly();
    std::vector<Int> q(p.coeffs().size() - static_cast<std::size_t>(d), 0);
    std::vector<Int> r(p.coeffs().begin(), p.coeffs().end());
    for (std::size_t i = r.size(); i-- > static_cast<std::size_t>(d);) {
      Int f = r[i];
      q[i - static_cast<std::size_t>(d)] = f;
      r[i] = 0;
      r[i - static_cast<std::size_t>(d)] += f;
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i)
      if (r[i] != 0) throw InternalError("cyclotomic: inexact binomial division");
    return IntPoly(std::move(q));
  };

  IntPoly acc = IntPoly::constant(1);
  for (long d : divisors)
    if (moebius(m / d) == 1) acc = mul_binomial(std::move(acc), d);
  for (long d : divisors)
    if (moebius(m / d) == -1) acc = div_binomial(acc, d);
  return acc;
}

}  // namespace detail

struct UnityDecision {
  bool all_roots_of_unity;
  IntPoly non_unity_part;       // witness: product of non-cyclotomic factors; 1 if none
  std::vector<long> orders;     // cyclotomic orders peeled off
};

inline UnityDecision unity_decision(const SpectrumPoly& s) {
  const IntPoly& p = s.poly();
  const int d = p.degree();
  if (d <= 0) return {true, IntPoly::constant(1), {}};

  auto orders = detail::candidate_orders(d);

  // Screening prime: must not divide the leading coefficient.
  std::size_t pi = 0;
  while (detail::to_residue(p.leading(), detail::PrimeField(detail::nth_prime_below_2_31(pi))) == 0)
    ++pi;
  detail::PrimeField F(detail::nth_prime_below_2_31(pi));
  detail::ModPoly p_mod = detail::to_mod(p, F);

  IntPoly rem = p;  // primitive, positive leading by the SpectrumPoly invariant
  std::vector<long> found;
  for (long m : orders) {
    if (rem.degree() == 0) break;
    // gcd(p, t^m - 1) mod F: computed as gcd(p, (t^m mod p) - 1).
    detail::ModPoly tm = detail::pow_t_mod(static_cast<std::uint64_t>(m), p_mod, F);
    if (tm.empty())
      tm = {F.p - 1};
    else
      tm[0] = F.sub(tm[0], 1);
    detail::trim_mod(tm);
    detail::ModPoly g = tm.empty() ? p_mod : detail::gcd_mod(p_mod, tm, F);
    if (static_cast<int>(g.size()) - 1 == 0) continue;  // coprime mod p => coprime exactly
    IntPoly phi_m = detail::cyclotomic(m);
    if (phi_m.degree() <= rem.degree() && divides(phi_m, rem)) {
      rem = divide_exact(rem, phi_m);
      found.push_back(m);
    }
  }
  rem = rem.with_positive_leading();
  return {rem.degree() == 0, rem, std::move(found)};
}

// True iff every complex root of s is a root of unity; vacuously true for the
// empty spectrum.
inline bool all_roots_of_unity(const SpectrumPoly& s) {
  return unity_decision(s).all_roots_of_unity;
}

}  // namespace endospec
