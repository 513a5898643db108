#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "endospec/errors.hpp"
#include "endospec/intpoly.hpp"
#include "endospec/spectra.hpp"
#include "endospec/word.hpp"

namespace endospec {

// Integer Laurent polynomial with finite support; canonical form drops zero
// coefficients (the zero polynomial has empty support).
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(Int c, long e) {
    LaurentPoly p;
    if (c != 0) p.terms_[e] = std::move(c);
    return p;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<long, Int>& terms() const noexcept { return terms_; }

  void add_term(long e, const Int& c) {
    if (c == 0) return;
    Int& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // Ordinary polynomial after clearing the common monomial t^min; zero maps
  // to zero.
  IntPoly cleared() const {
    if (terms_.empty()) return IntPoly();
    long min_e = terms_.begin()->first;
    long max_e = terms_.rbegin()->first;
    std::vector<Int> c(static_cast<std::size_t>(max_e - min_e) + 1, 0);
    for (const auto& [e, v] : terms_) c[static_cast<std::size_t>(e - min_e)] = v;
    return IntPoly(std::move(c));
  }

  // Ordinary polynomial view with exponents taken literally; requires a
  // nonnegative support.
  IntPoly as_polynomial() const {
    if (terms_.empty()) return IntPoly();
    if (terms_.begin()->first < 0)
      throw InternalError("LaurentPoly::as_polynomial: negative exponent");
    std::vector<Int> c(static_cast<std::size_t>(terms_.rbegin()->first) + 1, 0);
    for (const auto& [e, v] : terms_) c[static_cast<std::size_t>(e)] = v;
    return IntPoly(std::move(c));
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Int a = c < 0 ? Int(-c) : c;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      bool unit = (a == 1) && e != 0;
      if (!unit) out += a.str();
      if (e != 0) {
        if (!unit) out += "*";
        out += "t";
        if (e != 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }

 private:
  std::map<long, Int> terms_;
};

// Presentation of the algebraic mapping torus of an endomorphism of the
// fiber group: one relator x^-1 g x phi(g)^-1 per fiber generator, over the
// extended alphabet whose last letter is the stable letter x.
struct TorusPresentation {
  int fiber_rank = 0;
  bool injective = true;  // ascending HNN presentation iff the map injects
  std::vector<Word> relators;

  int stable_index() const noexcept { return fiber_rank; }
};

inline TorusPresentation mapping_torus(const Endomorphism& phi) {
  const int r = phi.rank();
  const int ext = r + 1;
  TorusPresentation pres;
  pres.fiber_rank = r;
  pres.injective = is_injective(phi);
  pres.relators.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    std::vector<Letter> letters;
    letters.push_back(Letter(r, -1));
    letters.push_back(Letter(i, +1));
    letters.push_back(Letter(r, +1));
    const Word& img = phi.image(i);
    auto ls = img.letters();
    for (std::size_t j = ls.size(); j-- > 0;) letters.push_back(ls[j].inverse());
    pres.relators.push_back(Word::reduced(ext, letters));
  }
  return pres;
}

// Fox derivative of a word over the extended alphabet with respect to
// generator z, evaluated under fiber generators -> 1, stable letter -> t^-1.
// Rules: d(uv) = du + eval(u) dv, dz/dz = 1, d(z^-1)/dz = -eval(z)^-1,
// dy/dz = 0 otherwise.
inline LaurentPoly fox_derivative(const Word& w, int z, int stable_index) {
  LaurentPoly out;
  long stable_sum = 0;  // exponent of the stable letter in the prefix
  for (Letter l : w.letters()) {
    long next_sum = stable_sum + (l.generator() == stable_index ? l.sign() : 0);
    if (l.generator() == z) {
      if (l.sign() > 0)
        out.add_term(-stable_sum, 1);
      else
        out.add_term(-next_sum, -1);
    }
    stable_sum = next_sum;
  }
  return out;
}

inline LaurentPoly fox_derivative(const TorusPresentation& pres, int relator, int z) {
  return fox_derivative(pres.relators[static_cast<std::size_t>(relator)], z, pres.stable_index());
}

namespace detail {

// Fraction-free determinant over the polynomial ring (Bareiss with exact
// divisions).
inline IntPoly det_bareiss_poly(std::vector<IntPoly> m, std::size_t n) {
  if (n == 0) return IntPoly::constant(1);
  auto at = [&](std::size_t i, std::size_t j) -> IntPoly& { return m[i * n + j]; };
  int sign = 1;
  IntPoly prev = IntPoly::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && at(r, k).is_zero()) ++r;
      if (r == n) return IntPoly();
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        at(i, j) = divide_exact(at(i, j) * at(k, k) - at(i, k) * at(k, j), prev);
    prev = at(k, k);
  }
  IntPoly det = at(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

inline LaurentPoly laurent_det_cofactor(const std::vector<LaurentPoly>& m, std::size_t n,
                                        std::size_t row, unsigned col_mask) {
  if (row == n) return LaurentPoly::monomial(1, 0);
  LaurentPoly det;
  int parity = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (col_mask & (1u << j)) continue;
    const LaurentPoly& e = m[row * n + j];
    if (!e.is_zero()) {
      LaurentPoly sub = laurent_det_cofactor(m, n, row + 1, col_mask | (1u << j));
      LaurentPoly term = e * sub;
      det = (parity % 2 == 0) ? det + term : det - term;
    }
    ++parity;
  }
  return det;
}

}  // namespace detail

// Module order of the presentation: determinant of the Fox matrix over the
// fiber generators, normalized to a representative with nonzero constant
// term and positive leading coefficient (orders are defined up to units
// +-t^s). With the evaluation x -> t^-1, the matrix for these relators is
// exactly tI - A^T with A the abelianized matrix of the fiber map, so the
// result agrees with det(tI - A) on the nose.
inline IntPoly alexander_polynomial(const TorusPresentation& pres) {
  const std::size_t r = static_cast<std::size_t>(pres.fiber_rank);
  if (pres.relators.size() != r)
    throw ShapeMismatchError("alexander_polynomial: one relator per fiber generator required");
  if (r == 0) return IntPoly::constant(1);

  std::vector<LaurentPoly> fox(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      fox[i * r + j] = fox_derivative(pres.relators[i], static_cast<int>(j), pres.stable_index());

  IntPoly det;
  if (r <= 6) {
    det = detail::laurent_det_cofactor(fox, r, 0, 0).cleared();
  } else {
    // Clear each row's common monomial, then work over ordinary polynomials.
    std::vector<IntPoly> rows(r * r);
    for (std::size_t i = 0; i < r; ++i) {
      long min_e = 0;
      bool seen = false;
      for (std::size_t j = 0; j < r; ++j) {
        const auto& terms = fox[i * r + j].terms();
        if (terms.empty()) continue;
        long e = terms.begin()->first;
        if (!seen || e < min_e) min_e = e;
        seen = true;
      }
      if (!seen) return IntPoly();  // zero row
      for (std::size_t j = 0; j < r; ++j)
        rows[i * r + j] = (LaurentPoly::monomial(1, -min_e) * fox[i * r + j]).as_polynomial();
    }
    det = detail::det_bareiss_poly(std::move(rows), r);
  }
  if (det.is_zero()) return det;
  return det.unit_normalized();
}

// Text form of the presentation; fiber generators may be renamed (e.g. to a
// subgroup basis h1, h2, ...).
inline std::string presentation_text(const TorusPresentation& pres,
                                     const std::vector<std::string>& fiber_names = {}) {
  auto name = [&](int idx) -> std::string {
    if (idx == pres.fiber_rank) return "x";
    if (!fiber_names.empty()) return fiber_names[static_cast<std::size_t>(idx)];
    return generator_name(idx, pres.fiber_rank <= 26 ? 26 : pres.fiber_rank + 1);
  };
  auto word_str = [&](const Word& w) -> std::string {
    if (w.empty()) return "1";
    std::string out;
    auto ls = w.letters();
    std::size_t i = 0;
    while (i < ls.size()) {
      std::size_t j = i;
      while (j < ls.size() && ls[j] == ls[i]) ++j;
      long long run = static_cast<long long>(j - i) * ls[i].sign();
      if (!out.empty()) out += ' ';
      out += name(ls[i].generator());
      if (run != 1) out += "^" + std::to_string(run);
      i = j;
    }
    return out;
  };
  std::string out = "< ";
  for (int i = 0; i < pres.fiber_rank; ++i) out += name(i) + ", ";
  out += "x | ";
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    if (i) out += ", ";
    out += word_str(pres.relators[i]);
  }
  out += " >";
  return out;
}

}  // namespace endospec
