#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "endospec/detail/modp.hpp"
#include "endospec/errors.hpp"
#include "endospec/integer.hpp"

namespace endospec {

// Exact integer polynomial, coefficients ascending by degree, canonical form
// (no trailing zeros). The zero polynomial has an empty coefficient vector
// and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<Int> ascending) : coeffs_(ascending) { trim(); }
  explicit IntPoly(std::vector<Int> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static IntPoly zero() { return IntPoly(); }
  static IntPoly constant(Int c) { return IntPoly({std::move(c)}); }
  static IntPoly t_power(std::size_t k) {
    std::vector<Int> c(k + 1, 0);
    c[k] = 1;
    return IntPoly(std::move(c));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Int>& coeffs() const noexcept { return coeffs_; }
  const Int& operator[](std::size_t i) const { return coeffs_[i]; }
  Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }
  const Int& leading() const { return coeffs_.back(); }
  Int constant_term() const { return coeffs_.empty() ? Int(0) : coeffs_.front(); }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return IntPoly(std::move(c));
  }

  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return IntPoly(std::move(c));
  }

  friend IntPoly operator-(const IntPoly& a) {
    std::vector<Int> c = a.coeffs_;
    for (Int& x : c) x = -x;
    return IntPoly(std::move(c));
  }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPoly(std::move(c));
  }

  friend IntPoly operator*(const Int& s, const IntPoly& a) {
    if (s == 0) return IntPoly();
    std::vector<Int> c = a.coeffs_;
    for (Int& x : c) x *= s;
    return IntPoly(std::move(c));
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  Int eval(const Int& x) const {
    Int acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  IntPoly derivative() const {
    if (coeffs_.size() <= 1) return IntPoly();
    std::vector<Int> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = Int(i) * coeffs_[i];
    return IntPoly(std::move(c));
  }

  // gcd of all coefficients; 0 for the zero polynomial.
  Int content() const {
    Int g = 0;
    for (const Int& c : coeffs_) {
      g = int_gcd(g, c);
      if (g == 1) break;
    }
    return g;
  }

  IntPoly primitive_part() const {
    if (is_zero()) return IntPoly();
    Int g = content();
    std::vector<Int> c = coeffs_;
    for (Int& x : c) x /= g;
    return IntPoly(std::move(c));
  }

  IntPoly with_positive_leading() const {
    if (is_zero() || leading() > 0) return *this;
    return -*this;
  }

  // Multiplicity of the root t = 0.
  std::size_t t_valuation() const {
    std::size_t v = 0;
    while (v < coeffs_.size() && coeffs_[v] == 0) ++v;
    return v;
  }

  // Divide out every factor of t.
  IntPoly strip_t_factors() const {
    std::size_t v = t_valuation();
    if (v == 0 || is_zero()) return *this;
    return IntPoly(std::vector<Int>(coeffs_.begin() + static_cast<std::ptrdiff_t>(v), coeffs_.end()));
  }

  // Canonical representative of the class "p up to units +-t^s": nonzero
  // constant term, positive leading coefficient.
  IntPoly unit_normalized() const {
    if (is_zero()) return *this;
    return strip_t_factors().with_positive_leading();
  }

  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Int& c = coeffs_[i];
      if (c == 0) continue;
      Int a = c < 0 ? Int(-c) : c;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      bool unit = (a == 1) && i > 0;
      if (!unit) out += a.str();
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Int> coeffs_;
};

// Pseudo-remainder: the remainder of lc(b)^(deg a - deg b + 1) * a divided by
// b, computed fraction-free. Requires b nonzero.
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw ZeroDivisorError("pseudo_rem: zero divisor");
  if (a.degree() < b.degree()) return a;
  std::vector<Int> r = a.coeffs();
  const Int& d = b.leading();
  int steps = a.degree() - b.degree() + 1;
  while (static_cast<int>(r.size()) >= b.degree() + 1) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (static_cast<int>(r.size()) < b.degree() + 1) break;
    Int s = r.back();
    std::size_t off = r.size() - static_cast<std::size_t>(b.degree()) - 1;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) r[i] *= d;
    for (int i = 0; i <= b.degree(); ++i)
      r[off + static_cast<std::size_t>(i)] -= s * b.coeffs()[static_cast<std::size_t>(i)];
    r.pop_back();
    --steps;
  }
  IntPoly rem{std::vector<Int>(std::move(r))};
  // Account for early termination: multiply the remainder by lc(b)^steps.
  if (steps > 0 && !rem.is_zero()) {
    Int s = 1;
    for (int i = 0; i < steps; ++i) s *= d;
    rem = s * rem;
  }
  return rem;
}

// Exact division: requires b | a over the integers (used only where theory
// guarantees it); throws InternalError otherwise.
inline IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw ZeroDivisorError("divide_exact: zero divisor");
  if (a.is_zero()) return IntPoly();
  if (a.degree() < b.degree()) throw InternalError("divide_exact: not divisible (degree)");
  std::vector<Int> r = a.coeffs();
  std::vector<Int> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    Int top = r[k + static_cast<std::size_t>(b.degree())];
    if (top % b.leading() != 0) throw InternalError("divide_exact: not divisible");
    Int f = top / b.leading();
    q[k] = f;
    if (f != 0)
      for (int i = 0; i <= b.degree(); ++i) r[k + static_cast<std::size_t>(i)] -= f * b.coeffs()[static_cast<std::size_t>(i)];
  }
  for (const Int& c : r)
    if (c != 0) throw InternalError("divide_exact: nonzero remainder");
  return IntPoly(std::move(q));
}

// True iff q = p * c for some rational-coefficient polynomial c.
inline bool divides(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero()) throw ZeroDivisorError("divides: zero divisor");
  if (q.is_zero()) return true;
  if (p.degree() == 0) return true;
  if (q.degree() < p.degree()) return false;
  return pseudo_rem(q, p).is_zero();
}

namespace detail {

inline ModPoly to_mod(const IntPoly& a, const PrimeField& F) {
  ModPoly out(a.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = to_residue(a.coeffs()[i], F);
  trim_mod(out);
  return out;
}

// Primitive pseudo-remainder sequence; classical and division-free. Fine for
// the small degrees where it is used.
inline IntPoly gcd_prs(IntPoly a, IntPoly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_rem(a, b);
    a = std::move(b);
    b = r.is_zero() ? IntPoly() : r.primitive_part();
  }
  return a.primitive_part().with_positive_leading();
}

// Modular gcd (small-prime images + CRT + division check). Keeps large-degree
// radicals cheap: a single prime certifies coprimality.
inline IntPoly gcd_modular(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = a0.primitive_part().with_positive_leading();
  IntPoly b = b0.primitive_part().with_positive_leading();
  if (a.degree() == 0 || b.degree() == 0) return IntPoly::constant(1);
  Int gamma = int_gcd(a.leading(), b.leading());

  int best_deg = std::min(a.degree(), b.degree()) + 1;
  std::vector<CrtAccumulator> acc;
  for (std::size_t pi = 0; pi < 200; ++pi) {
    PrimeField F(nth_prime_below_2_31(pi));
    if (to_residue(a.leading(), F) == 0 || to_residue(b.leading(), F) == 0) continue;
    ModPoly gp = gcd_mod(to_mod(a, F), to_mod(b, F), F);
    int d = static_cast<int>(gp.size()) - 1;
    if (d == 0) return IntPoly::constant(1);
    if (d > best_deg) continue;  // unlucky prime
    if (d < best_deg) {
      best_deg = d;
      acc.assign(static_cast<std::size_t>(d) + 1, {});
    }
    std::uint64_t scale = to_residue(gamma, F);
    for (std::size_t i = 0; i < gp.size(); ++i) acc[i].add(F.mul(gp[i], scale), F.p);
    std::vector<Int> lifted(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) lifted[i] = acc[i].symmetric();
    IntPoly candidate = IntPoly(std::move(lifted));
    if (candidate.is_zero()) continue;
    candidate = candidate.primitive_part().with_positive_leading();
    if (candidate.degree() == best_deg && pseudo_rem(a, candidate).is_zero() &&
        pseudo_rem(b, candidate).is_zero())
      return candidate;
  }
  return gcd_prs(a, b);  // unreachable in practice
}

}  // namespace detail

// Primitive gcd over the rationals, positive leading coefficient.
inline IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() && b.is_zero())
    throw ZeroPolynomialError("poly_gcd: both polynomials are zero");
  if (a.is_zero()) return b.primitive_part().with_positive_leading();
  if (b.is_zero()) return a.primitive_part().with_positive_leading();
  if (a.degree() <= 24 && b.degree() <= 24) return detail::gcd_prs(a, b);
  return detail::gcd_modular(a, b);
}

// Squarefree part p / gcd(p, p'), primitive with positive leading
// coefficient; has the same complex root set as p.
inline IntPoly radical(const IntPoly& p) {
  if (p.is_zero()) throw ZeroPolynomialError("radical: zero polynomial");
  if (p.degree() == 0) return IntPoly::constant(1);
  IntPoly g = poly_gcd(p, p.derivative());
  IntPoly pp = p.primitive_part().with_positive_leading();
  if (g.degree() == 0) return pp;
  return divide_exact(pp, g);
}

// Canonical squarefree integer polynomial with nonzero constant term whose
// complex roots are exactly the nonzero roots of the source polynomial. The
// constant polynomial 1 encodes the empty spectrum.
class SpectrumPoly {
 public:
  SpectrumPoly() : poly_(IntPoly::constant(1)) {}  // empty spectrum
  explicit SpectrumPoly(IntPoly validated) : poly_(std::move(validated)) {}

  const IntPoly& poly() const noexcept { return poly_; }
  bool empty() const noexcept { return poly_.degree() == 0; }
  int size_bound() const noexcept { return poly_.degree(); }  // number of distinct roots

  friend bool operator==(const SpectrumPoly&, const SpectrumPoly&) = default;

 private:
  IntPoly poly_;
};

inline SpectrumPoly spectrum_poly(const IntPoly& p) {
  if (p.is_zero()) throw ZeroPolynomialError("spectrum_poly: zero polynomial");
  IntPoly stripped = p.strip_t_factors();
  if (stripped.degree() == 0) return SpectrumPoly(IntPoly::constant(1));
  return SpectrumPoly(radical(stripped));
}

// Root-set containment of squarefree polynomials is exact divisibility.
inline bool spectrum_subset(const SpectrumPoly& s1, const SpectrumPoly& s2) {
  return divides(s1.poly(), s2.poly());
}

}  // namespace endospec
