#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "endospec/detail/modp.hpp"
#include "endospec/errors.hpp"
#include "endospec/integer.hpp"
#include "endospec/intpoly.hpp"
#include "endospec/word.hpp"

namespace endospec {

// Exact square integer matrix. Convention used everywhere: column i is the
// exponent vector of the image of basis element i.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t n) : n_(n), e_(n * n, 0) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t dim() const noexcept { return n_; }
  Int& at(std::size_t row, std::size_t col) { return e_[row * n_ + col]; }
  const Int& at(std::size_t row, std::size_t col) const { return e_[row * n_ + col]; }
  const std::vector<Int>& entries() const noexcept { return e_; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw ShapeMismatchError("matrix product: size mismatch");
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const Int& f = a.at(i, k);
        if (f == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c.at(i, j) += f * b.at(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  Int max_abs_column_sum() const {
    Int best = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      Int s = 0;
      for (std::size_t i = 0; i < n_; ++i) s += int_abs(at(i, j));
      if (s > best) best = s;
    }
    return best;
  }

  Int max_abs_row_sum() const {
    Int best = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < n_; ++j) s += int_abs(at(i, j));
      if (s > best) best = s;
    }
    return best;
  }

 private:
  std::size_t n_;
  std::vector<Int> e_;
};

// Abelianized matrix of an endomorphism: entry (j, i) is the signed exponent
// sum of generator j in the image of generator i.
inline IntMatrix abelianization_matrix(const Endomorphism& phi) {
  const std::size_t n = static_cast<std::size_t>(phi.rank());
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto e = phi.image(static_cast<int>(i)).exponent_vector();
    for (std::size_t j = 0; j < n; ++j) m.at(j, i) = e[j];
  }
  return m;
}

// Fraction-free determinant (Bareiss). Exact; used for the small-degree
// characteristic polynomial path and available to callers directly.
inline Int det_bareiss(IntMatrix m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m.at(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = v / prev;  // exact by the Bareiss identity
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

namespace detail {

// Exact char poly by evaluation at t = 0..n and integer Lagrange
// interpolation (all divisions deferred to one exact division by n!).
inline IntPoly char_poly_interpolation(const IntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<Int> values(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    IntMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) {
      shifted.at(i, i) = Int(k) - shifted.at(i, i);
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) shifted.at(i, j) = -shifted.at(i, j);
    }
    values[k] = det_bareiss(std::move(shifted));
  }

  // T(t) = prod_{j=0..n} (t - j); N_k = T / (t - k) by synthetic division.
  std::vector<Int> T{1};
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<Int> next(T.size() + 1, 0);
    for (std::size_t i = 0; i < T.size(); ++i) {
      next[i + 1] += T[i];
      next[i] -= Int(j) * T[i];
    }
    T = std::move(next);
  }

  Int n_fact = 1;
  for (std::size_t i = 2; i <= n; ++i) n_fact *= Int(i);

  std::vector<Int> sum(n + 1, 0);
  Int binom = 1;  // binom(n, k), updated incrementally
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) binom = binom * Int(n - k + 1) / Int(k);
    // N_k = T / (t - k): synthetic division, quotient ascending.
    std::vector<Int> N(n + 1);
    Int carry = T[n + 1];
    for (std::size_t i = n + 1; i-- > 0;) {
      N[i] = carry;
      if (i > 0) carry = T[i] + Int(k) * carry;
    }
    Int w = values[k] * binom;
    if ((n - k) % 2 == 1) w = -w;
    for (std::size_t i = 0; i <= n; ++i) sum[i] += w * N[i];
  }
  for (Int& c : sum) {
    if (c % n_fact != 0) throw InternalError("char_poly interpolation: non-integer result");
    c /= n_fact;
  }
  return IntPoly(std::move(sum));
}

// Exact char poly by per-prime Hessenberg computation and CRT, with a
// rigorous coefficient bound from |c_{n-i}| <= binom(n,i) * rho^i and
// rho <= min(||M||_1, ||M||_inf).
inline IntPoly char_poly_crt(const IntMatrix& m) {
  const std::size_t n = m.dim();
  Int bnorm = m.max_abs_column_sum();
  Int rnorm = m.max_abs_row_sum();
  if (rnorm < bnorm) bnorm = rnorm;
  double b = bnorm.convert_to<double>();
  double bits = static_cast<double>(n) * std::log2(2.0 + b) + 4.0;

  std::vector<CrtAccumulator> acc(n + 1);
  double have = 0;
  for (std::size_t pi = 0; have < bits; ++pi) {
    PrimeField F(nth_prime_below_2_31(pi));
    std::vector<std::uint64_t> entries(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = to_residue(m.at(i, j), F);
    ModPoly cp = charpoly_mod(std::move(entries), n, F);
    for (std::size_t i = 0; i <= n; ++i)
      acc[i].add(i < cp.size() ? cp[i] : 0, F.p);
    have += std::log2(static_cast<double>(F.p));
  }
  std::vector<Int> coeffs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) coeffs[i] = acc[i].symmetric();
  IntPoly result{std::move(coeffs)};
  if (result.degree() != static_cast<int>(n) || result.leading() != 1)
    throw InternalError("char_poly_crt: reconstruction not monic");
  return result;
}

}  // namespace detail

// Monic characteristic polynomial det(tI - M), exact.
inline IntPoly char_poly(const IntMatrix& m) {
  if (m.dim() == 0) return IntPoly::constant(1);
  if (m.dim() <= 32) return detail::char_poly_interpolation(m);
  return detail::char_poly_crt(m);
}

}  // namespace endospec
