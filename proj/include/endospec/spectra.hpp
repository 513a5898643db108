#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "endospec/errors.hpp"
#include "endospec/intmatrix.hpp"
#include "endospec/intpoly.hpp"
#include "endospec/stallings.hpp"
#include "endospec/unity.hpp"
#include "endospec/word.hpp"

namespace endospec {

// Abelianization of phi restricted to H, over H's effective basis: column i
// is the exponent vector of the basis rewrite of phi(h_i).
inline IntMatrix restriction_matrix(const Endomorphism& phi, const SubgroupGraph& g) {
  return abelianization_matrix(restriction_endomorphism(phi, g));
}

// The set of nonzero eigenvalues of the abelianized endomorphism, as a
// canonical squarefree polynomial.
inline SpectrumPoly eigen_spectrum(const Endomorphism& phi) {
  return spectrum_poly(char_poly(abelianization_matrix(phi)));
}

// Injectivity via the image subgroup: phi surjects F_r onto a free group of
// rank equal to the folded image graph's rank, and finitely generated free
// groups are Hopfian, so equal rank forces injectivity.
inline bool is_injective(const Endomorphism& phi) {
  return SubgroupGraph::from_generators(phi.rank(), phi.images(), /*track_user_basis=*/false)
             .group_rank() == phi.rank();
}

// Stabilized image data of phi on the subgroup generated by `gens`
// (phi-invariance of that subgroup is the caller's contract). Image ranks
// strictly decrease and then stay constant; once they stop dropping, phi is
// injective on the image (Hopf), so the kernels have stabilized too.
struct EventualKernelData {
  int k = 0;                     // least j with rank(im^j) == rank(im^{j+1})
  SubgroupGraph image_graph;     // graph of the stabilized image subgroup
  int image_rank = 0;
  IntMatrix induced_matrix;      // abelianized action of phi on the image
  std::vector<int> rank_sequence;  // ranks for j = 0 .. k+1
};

inline EventualKernelData eventual_kernel_over(const Endomorphism& phi, std::vector<Word> gens) {
  std::vector<Word> current = std::move(gens);
  SubgroupGraph graph = SubgroupGraph::from_generators(phi.rank(), current);
  std::vector<int> ranks{graph.group_rank()};
  int k = 0;
  for (;;) {
    std::vector<Word> next;
    next.reserve(current.size());
    for (const Word& w : current) next.push_back(apply(phi, w));
    SubgroupGraph next_graph = SubgroupGraph::from_generators(phi.rank(), next);
    ranks.push_back(next_graph.group_rank());
    if (next_graph.group_rank() == graph.group_rank()) break;
    graph = std::move(next_graph);
    current = std::move(next);
    ++k;
  }
  IntMatrix induced = restriction_matrix(phi, graph);
  int image_rank = graph.group_rank();
  return EventualKernelData{k, std::move(graph), image_rank, std::move(induced), std::move(ranks)};
}

inline EventualKernelData eventual_kernel(const Endomorphism& phi) {
  std::vector<Word> basis;
  basis.reserve(static_cast<std::size_t>(phi.rank()));
  for (int i = 0; i < phi.rank(); ++i) basis.push_back(Word::generator(phi.rank(), i));
  return eventual_kernel_over(phi, std::move(basis));
}

// Spectrum equality between phi and its induced injective part: the nonzero
// eigenvalues survive passage to the stabilized image.
inline bool check_lemma(const Endomorphism& phi) {
  EventualKernelData data = eventual_kernel(phi);
  return spectrum_poly(char_poly(data.induced_matrix)) ==
         spectrum_poly(char_poly(abelianization_matrix(phi)));
}

struct ContainmentReport {
  SpectrumPoly spectrum_f;
  SpectrumPoly spectrum_h;
  bool contained = false;
  IntPoly delta_f;  // char poly of the ambient abelianization
  IntPoly delta_h;  // char poly of the restriction
  std::optional<bool> delta_divides;  // only meaningful for injective phi
  bool injective = false;
  IndexResult index_h;
};

// The full containment check. For non-injective phi the spectra are computed
// twice: directly from the abelianizations and through the injective parts;
// the two routes must agree, and containment must hold whenever the
// hypotheses (invariance, finite index) do, so violations are raised as
// internal errors rather than reported.
inline ContainmentReport check_containment(const Endomorphism& phi, const SubgroupGraph& g) {
  if (!is_invariant(g, phi))
    throw NotInvariantError("check_containment: subgroup is not invariant");
  IndexResult idx = g.index();
  if (!idx.finite)
    throw InfiniteIndexError("check_containment: subgroup has infinite index");

  ContainmentReport report;
  report.index_h = idx;
  report.injective = is_injective(phi);
  report.delta_f = char_poly(abelianization_matrix(phi));
  report.delta_h = char_poly(restriction_matrix(phi, g));
  report.spectrum_f = spectrum_poly(report.delta_f);
  report.spectrum_h = spectrum_poly(report.delta_h);

  if (!report.injective) {
    // Route through the injective parts and cross-validate.
    SpectrumPoly f_via_image = spectrum_poly(char_poly(eventual_kernel(phi).induced_matrix));
    SpectrumPoly h_via_image =
        spectrum_poly(char_poly(eventual_kernel_over(phi, g.basis()).induced_matrix));
    if (!(f_via_image == report.spectrum_f) || !(h_via_image == report.spectrum_h))
      throw InternalError("check_containment: direct and injective-part spectra disagree");
  }

  report.contained = spectrum_subset(report.spectrum_f, report.spectrum_h);
  if (!report.contained)
    throw InternalError("check_containment: containment failed under valid hypotheses");
  if (report.injective)
    report.delta_divides =
        divides(report.delta_f.strip_t_factors(), report.delta_h.strip_t_factors());
  return report;
}

enum class UnityVerdict { AllRootsOfUnity, HasNonUnitRoot };

struct UnityReport {
  UnityVerdict verdict;
  SpectrumPoly restriction_spectrum;
  IntPoly witness;              // non-cyclotomic part of the restriction spectrum
  std::vector<long> orders;     // orders of the cyclotomic factors peeled off
};

// Decides whether every eigenvalue of the restriction is a root of unity.
// Consistency guard: when the ambient spectrum already has a non-unit root,
// containment forces the restriction to have one as well.
inline UnityReport casson_check(const Endomorphism& phi, const SubgroupGraph& g) {
  if (!is_invariant(g, phi))
    throw NotInvariantError("casson_check: subgroup is not invariant");
  if (!g.index().finite)
    throw InfiniteIndexError("casson_check: subgroup has infinite index");
  SpectrumPoly spectrum_h = spectrum_poly(char_poly(restriction_matrix(phi, g)));
  UnityDecision decision = unity_decision(spectrum_h);
  UnityDecision ambient = unity_decision(eigen_spectrum(phi));
  if (!ambient.all_roots_of_unity && decision.all_roots_of_unity)
    throw InternalError("casson_check: restriction lost a non-unit eigenvalue");
  return UnityReport{
      decision.all_roots_of_unity ? UnityVerdict::AllRootsOfUnity : UnityVerdict::HasNonUnitRoot,
      std::move(spectrum_h), std::move(decision.non_unity_part), std::move(decision.orders)};
}

}  // namespace endospec
