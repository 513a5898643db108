#include <catch2/catch_amalgamated.hpp>

#include "endospec/invariant_subgroups.hpp"
#include "endospec/mapping_torus.hpp"
#include "endospec/problem.hpp"

using namespace endospec;

namespace {

Word W(int rank, const std::string& text) { return parse_word_text(text, rank); }

Endomorphism classic_phi() { return Endomorphism(2, {W(2, "b"), W(2, "a b^2")}); }

SubgroupGraph classic_h() {
  return build_graph(2, {W(2, "a^2"), W(2, "b^2"), W(2, "a b")});
}

LaurentPoly eval_word(const Word& w, int stable) {
  long sum = 0;
  for (Letter l : w.letters())
    if (l.generator() == stable) sum += l.sign();
  return LaurentPoly::monomial(1, -sum);
}

// Rule-by-rule oracle: literal recursion on d(uv) = du + eval(u) dv with the
// single-letter base cases.
LaurentPoly fox_oracle(std::span<const Letter> letters, int z, int stable) {
  if (letters.empty()) return LaurentPoly();
  Letter l = letters.front();
  LaurentPoly head;
  if (l.generator() == z) {
    if (l.sign() > 0)
      head = LaurentPoly::monomial(1, 0);
    else
      head = LaurentPoly::monomial(-1, z == stable ? 1 : 0);
  }
  if (letters.size() == 1) return head;
  Word prefix = Word::reduced(stable + 1, letters.subspan(0, 1));
  return head + eval_word(prefix, stable) * fox_oracle(letters.subspan(1), z, stable);
}

LaurentPoly fox_oracle(const Word& w, int z) {
  return fox_oracle(w.letters(), z, w.rank() - 1);
}

}  // namespace

TEST_CASE("mapping torus relators") {
  TorusPresentation pres = mapping_torus(classic_phi());
  REQUIRE(pres.fiber_rank == 2);
  CHECK(pres.injective);
  REQUIRE(pres.relators.size() == 2);
  // x^-1 a x b^-1 and x^-1 b x b^-2 a^-1, over the extended alphabet a,b,x.
  CHECK(pres.relators[0] == W(3, "c^-1 a c b^-1"));
  CHECK(pres.relators[1] == W(3, "c^-1 b c b^-2 a^-1"));

  TorusPresentation ident = mapping_torus(Endomorphism::identity(2));
  CHECK(ident.relators[0] == W(3, "c^-1 a c a^-1"));
  CHECK(ident.relators[1] == W(3, "c^-1 b c b^-1"));

  TorusPresentation noninj =
      mapping_torus(Endomorphism(2, {Word::identity(2), W(2, "b")}));
  CHECK_FALSE(noninj.injective);  // surfaced as a warning at the boundary

  CHECK(presentation_text(pres) == "< a, b, x | x^-1 a x b^-1, x^-1 b x b^-2 a^-1 >");
}

TEST_CASE("fox derivatives") {
  // Derivative of a b b with respect to b: 1 + 1 = 2.
  Word abb = W(3, "a b b");  // extended alphabet with stable letter index 2
  CHECK(fox_derivative(abb, 1, 2) == LaurentPoly::monomial(2, 0));
  CHECK(fox_derivative(W(3, "a"), 0, 2) == LaurentPoly::monomial(1, 0));

  // d(x^-1 a x a^-1)/dx = -t + t = 0.
  Word commutator = W(3, "c^-1 a c a^-1");
  CHECK(fox_derivative(commutator, 2, 2).is_zero());
  CHECK(fox_oracle(commutator, 2).is_zero());
}

TEST_CASE("fox derivative matches the rule-by-rule oracle") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 120; ++trial) {
    int fiber = 2 + static_cast<int>(rng.below(2));
    int ext = fiber + 1;
    Word w = random_reduced_word(rng, ext, static_cast<int>(rng.below(12)));
    for (int z = 0; z < ext; ++z) CHECK(fox_derivative(w, z, fiber) == fox_oracle(w, z));
  }
}

TEST_CASE("fox product rule") {
  SplitMix64 rng(62);
  for (int trial = 0; trial < 80; ++trial) {
    int fiber = 2;
    int ext = fiber + 1;
    Word u = random_reduced_word(rng, ext, static_cast<int>(rng.below(10)));
    Word v = random_reduced_word(rng, ext, static_cast<int>(rng.below(10)));
    Word uv = u * v;
    for (int z = 0; z < ext; ++z) {
      LaurentPoly lhs = fox_derivative(uv, z, fiber);
      LaurentPoly rhs = fox_derivative(u, z, fiber) +
                        eval_word(u, fiber) * fox_derivative(v, z, fiber);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("fox fundamental identity") {
  // sum_z dw/dz (eval(z) - 1) = eval(w) - 1; fiber terms vanish under the
  // evaluation, leaving the stable-letter term.
  SplitMix64 rng(63);
  LaurentPoly one = LaurentPoly::monomial(1, 0);
  for (int trial = 0; trial < 80; ++trial) {
    int fiber = 2;
    Word w = random_reduced_word(rng, fiber + 1, static_cast<int>(rng.below(12)));
    LaurentPoly lhs =
        fox_derivative(w, fiber, fiber) * (LaurentPoly::monomial(1, -1) - one);
    LaurentPoly rhs = eval_word(w, fiber) - one;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("alexander polynomial of the worked example") {
  CHECK(alexander_polynomial(mapping_torus(classic_phi())) == IntPoly{-1, -2, 1});
  CHECK(alexander_polynomial(mapping_torus(Endomorphism::identity(2))) == IntPoly{1, -2, 1});

  // The restriction presentation gives the 3x3 characteristic polynomial.
  Endomorphism restr = restriction_endomorphism(classic_phi(), classic_h());
  TorusPresentation pres_h = mapping_torus(restr);
  REQUIRE(pres_h.relators.size() == 3);
  CHECK(alexander_polynomial(pres_h) == IntPoly{-1, -3, -1, 1});
  CHECK(alexander_polynomial(pres_h) ==
        char_poly(restriction_matrix(classic_phi(), classic_h())).unit_normalized());
}

TEST_CASE("alexander polynomial equals the characteristic polynomial") {
  SplitMix64 rng(64);
  int done = 0;
  while (done < 100) {
    int rank = 2 + static_cast<int>(rng.below(3));
    Endomorphism phi = rng.below(2)
                           ? random_endomorphism({rng.next(), rank, 4, 0})
                           : random_automorphism({rng.next(), rank, 0, 8});
    if (!is_injective(phi)) continue;
    ++done;
    IntPoly alex = alexander_polynomial(mapping_torus(phi));
    IntPoly cp = char_poly(abelianization_matrix(phi)).unit_normalized();
    CHECK(alex == cp);
  }
}

TEST_CASE("alexander polynomial through the fraction-free determinant path") {
  // Fiber rank above six switches to Bareiss elimination over polynomials.
  SplitMix64 rng(65);
  int rank = 7;
  Endomorphism phi = random_automorphism({99, rank, 0, 10});
  REQUIRE(is_injective(phi));
  CHECK(alexander_polynomial(mapping_torus(phi)) ==
        char_poly(abelianization_matrix(phi)).unit_normalized());
  CHECK(alexander_polynomial(mapping_torus(Endomorphism::identity(7))) ==
        IntPoly{-1, 7, -21, 35, -35, 21, -7, 1});

  (void)rng;
}

TEST_CASE("alexander polynomial shape checks") {
  TorusPresentation bad;
  bad.fiber_rank = 2;
  bad.relators.push_back(W(3, "a"));
  CHECK_THROWS_AS(alexander_polynomial(bad), ShapeMismatchError);
}
