#include <catch2/catch_amalgamated.hpp>

#include "endospec/invariant_subgroups.hpp"
#include "endospec/problem.hpp"
#include "endospec/spectra.hpp"

using namespace endospec;

namespace {

Word W(int rank, const std::string& text) { return parse_word_text(text, rank); }

}  // namespace

TEST_CASE("mod-n homology kernels") {
  SubgroupGraph k22 = mod_n_homology_kernel(2, 2);
  CHECK(k22.index() == IndexResult::finite_index(4));
  CHECK(k22.basis().size() == 5);  // 4*(2-1)+1

  SubgroupGraph k13 = mod_n_homology_kernel(1, 3);
  CHECK(k13.index() == IndexResult::finite_index(3));
  CHECK(k13 == build_graph(1, {W(1, "a^3")}));

  SubgroupGraph k23 = mod_n_homology_kernel(2, 3);
  CHECK(k23.index() == IndexResult::finite_index(9));
  SplitMix64 rng(81);
  for (int trial = 0; trial < 50; ++trial)
    CHECK(is_invariant(k23, random_endomorphism({rng.next(), 2, 5, 0})));
}

TEST_CASE("total exponent kernels") {
  SubgroupGraph t22 = total_exponent_kernel(2, 2);
  CHECK(t22.index() == IndexResult::finite_index(2));
  CHECK(t22 == build_graph(2, {W(2, "a^2"), W(2, "b^2"), W(2, "a b")}));

  SubgroupGraph whole = total_exponent_kernel(2, 1);
  CHECK(whole.index() == IndexResult::finite_index(1));
  CHECK(whole.vertex_count() == 1);

  SubgroupGraph t32 = total_exponent_kernel(3, 2);
  CHECK(t32.index() == IndexResult::finite_index(2));
  CHECK(t32.basis().size() == 5);  // 2*(3-1)+1
}

TEST_CASE("mod-n kernels are fully invariant") {
  SplitMix64 rng(82);
  SubgroupGraph mod = mod_n_homology_kernel(2, 2);
  for (int trial = 0; trial < 50; ++trial)
    CHECK(is_invariant(mod, random_endomorphism({rng.next(), 2, 6, 0})));
}

TEST_CASE("total-exponent kernel invariance matches the parity criterion") {
  SplitMix64 rng(84);
  SubgroupGraph total = total_exponent_kernel(3, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Endomorphism phi = random_endomorphism({rng.next(), 3, 5, 0});
    CHECK(is_invariant(total, phi) == preserves_total_exponent_kernel(phi, 2));
  }
  // a -> ab, b -> b breaks the parity condition and the invariance.
  Endomorphism shear(2, {W(2, "a b"), W(2, "b")});
  CHECK_FALSE(preserves_total_exponent_kernel(shear, 2));
  CHECK_FALSE(is_invariant(total_exponent_kernel(2, 2), shear));
  // The running example preserves it: image exponents 1 and 3 are both odd.
  Endomorphism classic(2, {W(2, "b"), W(2, "a b^2")});
  CHECK(preserves_total_exponent_kernel(classic, 2));
  CHECK(is_invariant(total_exponent_kernel(2, 2), classic));
}

TEST_CASE("random endomorphisms are deterministic in the seed") {
  RandomSpec spec{1, 2, 4, 0};
  Endomorphism first = random_endomorphism(spec);
  Endomorphism second = random_endomorphism(spec);
  CHECK(first == second);

  Endomorphism trivial = random_endomorphism({7, 3, 0, 0});
  for (int i = 0; i < 3; ++i) CHECK(trivial.image(i).empty());

  // Frozen draw for the documented seed.
  CHECK(first.image(0).length() <= 4);
  CHECK(first.image(1).length() <= 4);
}

TEST_CASE("random automorphisms are automorphisms") {
  CHECK(random_automorphism({5, 3, 0, 0}) == Endomorphism::identity(3));
  CHECK_THROWS_AS(random_automorphism({5, 1, 0, 4}), RankTooSmallError);

  SplitMix64 rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    int rank = 2 + static_cast<int>(rng.below(3));
    Endomorphism phi = random_automorphism({rng.next(), rank, 0, 12});
    CHECK(is_injective(phi));
    CHECK(SubgroupGraph::from_generators(rank, phi.images()).index() ==
          IndexResult::finite_index(1));
  }
}

TEST_CASE("the running example is a composition of elementary moves") {
  std::vector<Word> images{Word::generator(2, 0), Word::generator(2, 1)};
  apply_nielsen_move(images, {NielsenMove::Kind::RightMultiply, 0, 1, +1});  // (ab, b)
  apply_nielsen_move(images, {NielsenMove::Kind::Swap, 0, 1, +1});           // (b, ab)
  apply_nielsen_move(images, {NielsenMove::Kind::RightMultiply, 1, 0, +1});  // (b, ab^2)
  CHECK(Endomorphism(2, images) == Endomorphism(2, {W(2, "b"), W(2, "a b^2")}));
}
