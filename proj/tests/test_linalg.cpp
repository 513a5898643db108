#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include "endospec/intmatrix.hpp"
#include "endospec/intpoly.hpp"
#include "endospec/invariant_subgroups.hpp"
#include "endospec/problem.hpp"
#include "endospec/roots.hpp"
#include "endospec/unity.hpp"

using namespace endospec;

namespace {

Word W(int rank, const std::string& text) { return parse_word_text(text, rank); }

IntMatrix matrix2(std::initializer_list<std::initializer_list<int>> rows) {
  IntMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (int v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

// Independent characteristic polynomial oracle: cofactor expansion of tI - M
// over the polynomial ring.
IntPoly cofactor_det(const std::vector<IntPoly>& m, std::size_t n, std::size_t row,
                     unsigned mask) {
  if (row == n) return IntPoly::constant(1);
  IntPoly det;
  int parity = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (mask & (1u << j)) continue;
    const IntPoly& e = m[row * n + j];
    if (!e.is_zero()) {
      IntPoly term = e * cofactor_det(m, n, row + 1, mask | (1u << j));
      det = (parity % 2 == 0) ? det + term : det - term;
    }
    ++parity;
  }
  return det;
}

IntPoly cofactor_char_poly(const IntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<IntPoly> entries(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      entries[i * n + j] =
          i == j ? IntPoly{-m.at(i, j), 1} : IntPoly{-m.at(i, j)};
  return cofactor_det(entries, n, 0, 0);
}

// Rational-coefficient Euclid, the independent gcd oracle.
using Rat = boost::multiprecision::cpp_rational;

std::vector<Rat> to_rat(const IntPoly& p) {
  std::vector<Rat> out;
  for (const Int& c : p.coeffs()) out.emplace_back(c);
  return out;
}

std::vector<Rat> rat_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

IntPoly rat_gcd_oracle(const IntPoly& pa, const IntPoly& pb) {
  std::vector<Rat> a = to_rat(pa), b = to_rat(pb);
  while (!b.empty()) {
    auto r = rat_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  // Clear denominators, make primitive with positive leading coefficient.
  Int lcm_den = 1;
  for (const Rat& c : a) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::lcm;
    lcm_den = lcm(lcm_den, Int(denominator(c)));
  }
  std::vector<Int> scaled;
  for (const Rat& c : a) scaled.push_back(Int(boost::multiprecision::numerator(c) * (lcm_den / boost::multiprecision::denominator(c))));
  return IntPoly(std::move(scaled)).primitive_part().with_positive_leading();
}

IntMatrix random_matrix(SplitMix64& rng, std::size_t n, int span) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = static_cast<long long>(rng.below(2ULL * span + 1)) - span;
  return m;
}

// The literal root-of-unity oracle: t^L mod s for L = lcm of all candidate
// orders, by binary exponentiation over exact integers. Exponential-size
// intermediates make this a small-degree oracle only.
bool unity_oracle(const IntPoly& s) {
  int d = s.degree();
  if (d == 0) return true;
  if (int_abs(s.leading()) != 1 || int_abs(s.constant_term()) != 1) return false;
  IntPoly monic = s.with_positive_leading();
  Int big_l = 1;
  for (long m = 1; m <= 2L * d * d + 1; ++m) {
    long phi = 0;
    for (long k = 1; k <= m; ++k) {
      long a = k, b = m;
      while (b) {
        long t = b;
        b = a % b;
        a = t;
      }
      if (a == 1) ++phi;
    }
    if (phi <= d) big_l = boost::multiprecision::lcm(big_l, Int(m));
  }
  // t^L mod monic by repeated squaring.
  auto mod_reduce = [&](IntPoly p) {
    while (p.degree() >= monic.degree()) {
      Int f = p.leading();
      std::vector<Int> c = p.coeffs();
      std::size_t off = c.size() - monic.coeffs().size();
      for (std::size_t i = 0; i < monic.coeffs().size(); ++i) c[off + i] -= f * monic.coeffs()[i];
      p = IntPoly(std::move(c));
    }
    return p;
  };
  IntPoly acc = IntPoly::constant(1);
  IntPoly base = mod_reduce(IntPoly::t_power(1));
  Int e = big_l;
  while (e > 0) {
    if ((e & 1) != 0) acc = mod_reduce(acc * base);
    base = mod_reduce(base * base);
    e >>= 1;
  }
  return acc == IntPoly::constant(1);  // t^L - 1 divisible by s
}

}  // namespace

TEST_CASE("abelianization matrix") {
  Endomorphism phi(2, {W(2, "b"), W(2, "a b^2")});
  CHECK(abelianization_matrix(phi) == matrix2({{0, 1}, {1, 2}}));
  CHECK(abelianization_matrix(Endomorphism::identity(3)) == IntMatrix::identity(3));
  Endomorphism commutator(2, {W(2, "a b a^-1 b^-1"), W(2, "b")});
  CHECK(abelianization_matrix(commutator) == matrix2({{0, 0}, {0, 1}}));
}

TEST_CASE("abelianization is functorial") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    int rank = 2 + static_cast<int>(rng.below(3));
    Endomorphism f = random_endomorphism({rng.next(), rank, 5, 0});
    Endomorphism g = random_endomorphism({rng.next(), rank, 5, 0});
    CHECK(abelianization_matrix(compose(f, g)) ==
          abelianization_matrix(f) * abelianization_matrix(g));
  }
}

TEST_CASE("char_poly matches the worked example and the oracle") {
  CHECK(char_poly(matrix2({{0, 1}, {1, 2}})) == IntPoly{-1, -2, 1});
  CHECK(char_poly(matrix2({{0, 1, 1}, {1, 2, 2}, {0, 0, -1}})) == IntPoly{-1, -3, -1, 1});
  CHECK(char_poly(IntMatrix(2)) == IntPoly{0, 0, 1});
  CHECK(char_poly(IntMatrix(0)) == IntPoly::constant(1));

  SplitMix64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng.below(4);
    IntMatrix m = random_matrix(rng, n, 5);
    CHECK(char_poly(m) == cofactor_char_poly(m));
  }
}

TEST_CASE("char_poly residue path agrees with the interpolation path") {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 3; ++trial) {
    std::size_t n = 33 + rng.below(6);
    IntMatrix m = random_matrix(rng, n, 3);
    CHECK(detail::char_poly_crt(m) == detail::char_poly_interpolation(m));
  }
}

TEST_CASE("poly_gcd") {
  IntPoly p{-1, -2, 1};                      // t^2 - 2t - 1
  IntPoly q = p * IntPoly{1, 1};             // (t+1)(t^2-2t-1)
  CHECK(poly_gcd(p, q) == p);
  CHECK(poly_gcd(IntPoly{2, 4}, IntPoly()) == IntPoly{1, 2});
  CHECK(poly_gcd(IntPoly{-1, 0, 1}, IntPoly{1, 2, 1}) == IntPoly{1, 1});
  CHECK_THROWS_AS(poly_gcd(IntPoly(), IntPoly()), ZeroPolynomialError);

  SplitMix64 rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    auto small = [&]() {
      std::vector<Int> c;
      std::size_t deg = 1 + rng.below(3);
      for (std::size_t i = 0; i <= deg; ++i)
        c.push_back(static_cast<long long>(rng.below(7)) - 3);
      IntPoly p_{std::vector<Int>(c)};
      return p_.is_zero() ? IntPoly{1, 1} : p_;
    };
    IntPoly a = small() * small();
    IntPoly b = small() * small();
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(poly_gcd(a, b) == rat_gcd_oracle(a, b));
  }
}

TEST_CASE("modular gcd path agrees with the oracle") {
  SplitMix64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    auto factor = [&](std::size_t deg) {
      std::vector<Int> c;
      for (std::size_t i = 0; i <= deg; ++i)
        c.push_back(static_cast<long long>(rng.below(9)) - 4);
      IntPoly p{std::vector<Int>(c)};
      return p.degree() < 1 ? IntPoly{1, 1} : p;
    };
    IntPoly common = factor(4);
    IntPoly a = common * factor(12) * factor(12);
    IntPoly b = common * factor(12) * factor(12);
    REQUIRE(a.degree() > 24);  // forces the modular route
    CHECK(poly_gcd(a, b) == rat_gcd_oracle(a, b));
  }
}

TEST_CASE("radical") {
  CHECK(radical(IntPoly{1, 2, 1}) == IntPoly{1, 1});     // (t+1)^2
  CHECK(radical(IntPoly{-1, -2, 1}) == IntPoly{-1, -2, 1});
  CHECK(radical(IntPoly{0, 0, 0, 1}) == IntPoly{0, 1});  // t^3
  CHECK_THROWS_AS(radical(IntPoly()), ZeroPolynomialError);

  SplitMix64 rng(36);
  for (int trial = 0; trial < 60; ++trial) {
    auto small = [&]() {
      std::vector<Int> c;
      std::size_t deg = 1 + rng.below(2);
      for (std::size_t i = 0; i <= deg; ++i)
        c.push_back(static_cast<long long>(rng.below(5)) - 2);
      IntPoly p{std::vector<Int>(c)};
      return p.degree() < 1 ? IntPoly{1, 1} : p;
    };
    IntPoly p = small() * small() * small();
    IntPoly r = radical(p);
    CHECK(poly_gcd(r, r.derivative()).degree() == 0);  // squarefree
    CHECK(divides(r, p));
    CHECK(r.content() == 1);
    CHECK(r.leading() > 0);
  }
}

TEST_CASE("spectrum_poly") {
  CHECK(spectrum_poly(IntPoly{-1, -2, 1}).poly() == IntPoly{-1, -2, 1});
  CHECK(spectrum_poly(IntPoly{0, 0, -1, 1}).poly() == IntPoly{-1, 1});  // t^2(t-1)
  CHECK(spectrum_poly(IntPoly{0, 0, 0, 0, 1}).poly() == IntPoly::constant(1));
  CHECK(spectrum_poly(IntPoly{0, 0, 0, 0, 1}).empty());
  CHECK_THROWS_AS(spectrum_poly(IntPoly()), ZeroPolynomialError);
}

TEST_CASE("divides") {
  CHECK(divides(IntPoly{-1, -2, 1}, IntPoly{-1, -3, -1, 1}));
  CHECK(divides(IntPoly{-1, -2, 1}, IntPoly{-1, -2, 1}));
  CHECK_FALSE(divides(IntPoly{2, 1}, IntPoly{-1, -2, 1}));
  CHECK(divides(IntPoly{2}, IntPoly{1, 1}));       // constants divide everything
  CHECK(divides(IntPoly{1, 1}, IntPoly()));        // everything divides zero
  CHECK(divides(IntPoly{3, 3}, IntPoly{1, 2, 1})); // rational quotients count
  CHECK_THROWS_AS(divides(IntPoly(), IntPoly{1, 1}), ZeroDivisorError);
}

TEST_CASE("spectrum subset is reflexive and transitive") {
  CHECK(spectrum_subset(spectrum_poly(IntPoly{-1, -2, 1}),
                        spectrum_poly(IntPoly{-1, -3, -1, 1})));
  CHECK_FALSE(spectrum_subset(spectrum_poly(IntPoly{-2, 1}),
                              spectrum_poly(IntPoly{-1, -2, 1})));

  SplitMix64 rng(37);
  std::vector<IntPoly> atoms{IntPoly{1, 1},  IntPoly{-1, 1}, IntPoly{-2, 1},
                             IntPoly{3, 1},  IntPoly{1, 0, 1}, IntPoly{-1, -1, 1}};
  for (int trial = 0; trial < 50; ++trial) {
    auto pick = [&](int count) {
      IntPoly p = IntPoly::constant(1);
      for (int i = 0; i < count; ++i) p = p * atoms[rng.below(atoms.size())];
      return spectrum_poly(p);
    };
    SpectrumPoly s1 = pick(1);
    SpectrumPoly s2 = spectrum_poly(s1.poly() * pick(1).poly());
    SpectrumPoly s3 = spectrum_poly(s2.poly() * pick(2).poly());
    CHECK(spectrum_subset(s1, s1));
    CHECK(spectrum_subset(s1, s2));
    CHECK(spectrum_subset(s2, s3));
    CHECK(spectrum_subset(s1, s3));  // transitivity along the chain
  }
}

TEST_CASE("roots of unity decision") {
  CHECK(all_roots_of_unity(spectrum_poly(IntPoly{1, 1})));
  CHECK(all_roots_of_unity(spectrum_poly(IntPoly{1, 1, 1})));
  CHECK_FALSE(all_roots_of_unity(spectrum_poly(IntPoly{-1, -2, 1})));
  CHECK_FALSE(all_roots_of_unity(spectrum_poly(IntPoly{-1, -1, 1})));
  CHECK(all_roots_of_unity(SpectrumPoly(IntPoly::constant(1))));  // vacuous

  UnityDecision d = unity_decision(spectrum_poly(IntPoly{-1, -3, -1, 1}));
  CHECK_FALSE(d.all_roots_of_unity);
  CHECK(d.non_unity_part == IntPoly{-1, -2, 1});
  CHECK(d.orders == std::vector<long>{2});
}

TEST_CASE("signed permutation spectra are roots of unity") {
  SplitMix64 rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng.below(5);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(perm[i], i) = rng.below(2) ? 1 : -1;
    CHECK(all_roots_of_unity(spectrum_poly(char_poly(m))));
  }
}

TEST_CASE("unity decision agrees with the exponentiation oracle") {
  SplitMix64 rng(39);
  std::vector<IntPoly> cyclo;
  for (long m = 1; m <= 12; ++m) cyclo.push_back(detail::cyclotomic(m));
  for (int trial = 0; trial < 60; ++trial) {
    IntPoly p = IntPoly::constant(1);
    int parts = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < parts; ++i) {
      if (rng.below(2)) {
        p = p * cyclo[rng.below(cyclo.size())];
      } else {
        std::vector<Int> c{static_cast<long long>(rng.below(5)) - 2, 1};
        p = p * IntPoly(std::move(c));
      }
    }
    SpectrumPoly s = spectrum_poly(p);
    if (s.poly().degree() > 6) continue;  // oracle blows up past small degrees
    CHECK(all_roots_of_unity(s) == unity_oracle(s.poly()));
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(detail::cyclotomic(1) == IntPoly{-1, 1});
  CHECK(detail::cyclotomic(2) == IntPoly{1, 1});
  CHECK(detail::cyclotomic(3) == IntPoly{1, 1, 1});
  CHECK(detail::cyclotomic(6) == IntPoly{1, -1, 1});
  CHECK(detail::cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
  CHECK(detail::cyclotomic(105).degree() == 48);  // first order with coefficient 2
}

TEST_CASE("max root modulus") {
  CHECK_THAT(max_root_modulus(IntPoly{-1, -2, 1}),
             Catch::Matchers::WithinAbs(2.4142135623730951, 1e-6));
  CHECK_THAT(max_root_modulus(IntPoly{-1, 1}), Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(max_root_modulus(IntPoly{1, 0, 1}), Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THROWS_AS(max_root_modulus(IntPoly{5}), DegreeZeroError);
  CHECK_THROWS_AS(max_root_modulus(IntPoly()), DegreeZeroError);

  SplitMix64 rng(40);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Int> c;
    std::size_t deg = 1 + rng.below(6);
    for (std::size_t i = 0; i <= deg; ++i)
      c.push_back(static_cast<long long>(rng.below(21)) - 10);
    IntPoly p{std::vector<Int>(c)};
    if (p.degree() < 1) continue;
    CHECK(max_root_modulus(p) <= cauchy_bound(p) + 1e-12);
  }
}

TEST_CASE("pseudo remainder and exact division") {
  IntPoly a{-1, -3, -1, 1};
  IntPoly b{-1, -2, 1};
  CHECK(pseudo_rem(a, b).is_zero());
  CHECK(divide_exact(a, b) == IntPoly{1, 1});
  CHECK_THROWS_AS(divide_exact(IntPoly{1, 1, 1}, IntPoly{1, 1}), InternalError);
  CHECK_THROWS_AS(pseudo_rem(a, IntPoly()), ZeroDivisorError);
}
