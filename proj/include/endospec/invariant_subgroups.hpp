#pragma once

#include <cstdint>
#include <vector>

#include "endospec/errors.hpp"
#include "endospec/stallings.hpp"
#include "endospec/word.hpp"

namespace endospec {

// SplitMix64: the fixed, named PRNG behind every randomized suite. Chosen for
// cross-platform reproducibility; seeds are recorded in all reports.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n > 0. Modulo bias is irrelevant at these sizes.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Independent substream (split), for parallel trial drivers.
  SplitMix64 split() { return SplitMix64(next() ^ 0x6a09e667f3bcc909ULL); }

 private:
  std::uint64_t state_;
};

struct RandomSpec {
  std::uint64_t seed = 1;
  int rank = 2;
  int max_image_length = 4;
  int move_count = 8;
};

// Kernel of F_r -> (Z/n)^r sending each generator to its coordinate vector,
// built directly as the covering graph on the quotient group: vertices are
// exponent tuples mod n, generator-i edges add e_i. Characteristic (invariant
// under every endomorphism); index n^r.
inline SubgroupGraph mod_n_homology_kernel(int rank, int n) {
  if (rank < 1 || n < 1) throw Error("mod_n_homology_kernel: need rank >= 1, n >= 1");
  long long vertices = 1;
  for (int i = 0; i < rank; ++i) {
    vertices *= n;
    if (vertices > 2'000'000) throw Error("mod_n_homology_kernel: covering too large");
  }
  std::vector<int> out(static_cast<std::size_t>(vertices) * static_cast<std::size_t>(rank));
  // Mixed-radix labels: digit i is the exponent of generator i mod n.
  long long stride = 1;
  for (int g = 0; g < rank; ++g) {
    for (long long v = 0; v < vertices; ++v) {
      long long digit = (v / stride) % n;
      long long w = v + (digit + 1 == n ? -(n - 1) * stride : stride);
      out[static_cast<std::size_t>(v) * static_cast<std::size_t>(rank) +
          static_cast<std::size_t>(g)] = static_cast<int>(w);
    }
    stride *= n;
  }
  return SubgroupGraph::from_adjacency(rank, static_cast<int>(vertices), 0, std::move(out));
}

// Kernel of the total exponent sum F_r -> Z/n; covering graph on Z/n where
// every generator advances by one. Characteristic; index n.
inline SubgroupGraph total_exponent_kernel(int rank, int n) {
  if (rank < 1 || n < 1) throw Error("total_exponent_kernel: need rank >= 1, n >= 1");
  std::vector<int> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(rank));
  for (int v = 0; v < n; ++v)
    for (int g = 0; g < rank; ++g)
      out[static_cast<std::size_t>(v) * static_cast<std::size_t>(rank) +
          static_cast<std::size_t>(g)] = (v + 1) % n;
  return SubgroupGraph::from_adjacency(rank, n, 0, std::move(out));
}

// The total-exponent kernel is invariant under phi exactly when all generator
// images share the same total exponent mod n (the induced map on Z/n is then
// multiplication by that common value). Unlike the mod-n homology kernel,
// which is fully invariant, this one needs the condition checked per map.
inline bool preserves_total_exponent_kernel(const Endomorphism& phi, int n) {
  bool seen = false;
  long long shared = 0;
  for (const Word& w : phi.images()) {
    long long t = 0;
    for (Letter l : w.letters()) t += l.sign();
    t = ((t % n) + n) % n;
    if (!seen) {
      shared = t;
      seen = true;
    } else if (t != shared) {
      return false;
    }
  }
  return true;
}

// A reduced word of the exact given length: uniform letters with rejection on
// adjacent cancellation.
inline Word random_reduced_word(SplitMix64& rng, int rank, int length) {
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    for (;;) {
      std::uint64_t c = rng.below(2ULL * static_cast<std::uint64_t>(rank));
      Letter l(static_cast<int>(c >> 1), (c & 1) ? -1 : +1);
      if (!letters.empty() && letters.back().cancels(l)) continue;
      letters.push_back(l);
      break;
    }
  }
  return Word::reduced(rank, letters);
}

// Generator images drawn independently: length uniform in
// [0, max_image_length], then uniform non-cancelling letters. Deterministic
// in the seed.
inline Endomorphism random_endomorphism(const RandomSpec& spec) {
  SplitMix64 rng(spec.seed);
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(spec.rank));
  for (int i = 0; i < spec.rank; ++i) {
    int len = spec.max_image_length == 0
                  ? 0
                  : static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_image_length) + 1));
    images.push_back(random_reduced_word(rng, spec.rank, len));
  }
  return Endomorphism(spec.rank, std::move(images));
}

// Elementary Nielsen transformations on image tuples. Exposed so tests can
// compose explicit move sequences.
struct NielsenMove {
  enum class Kind { Swap, Invert, RightMultiply, LeftMultiply };
  Kind kind;
  int i = 0;
  int j = 0;      // second slot for Swap / multiplications
  int sign = +1;  // exponent on the j-th word for multiplications
};

inline void apply_nielsen_move(std::vector<Word>& images, const NielsenMove& m) {
  switch (m.kind) {
    case NielsenMove::Kind::Swap:
      std::swap(images[static_cast<std::size_t>(m.i)], images[static_cast<std::size_t>(m.j)]);
      break;
    case NielsenMove::Kind::Invert:
      images[static_cast<std::size_t>(m.i)] = images[static_cast<std::size_t>(m.i)].inverse();
      break;
    case NielsenMove::Kind::RightMultiply: {
      const Word& w = images[static_cast<std::size_t>(m.j)];
      images[static_cast<std::size_t>(m.i)] =
          multiply(images[static_cast<std::size_t>(m.i)], m.sign > 0 ? w : w.inverse());
      break;
    }
    case NielsenMove::Kind::LeftMultiply: {
      const Word& w = images[static_cast<std::size_t>(m.j)];
      images[static_cast<std::size_t>(m.i)] =
          multiply(m.sign > 0 ? w : w.inverse(), images[static_cast<std::size_t>(m.i)]);
      break;
    }
  }
}

// Composition of move_count uniformly drawn Nielsen moves; always an
// automorphism, deterministic in the seed.
inline Endomorphism random_automorphism(const RandomSpec& spec) {
  if (spec.rank < 2) throw RankTooSmallError("random_automorphism: need rank >= 2");
  SplitMix64 rng(spec.seed);
  std::vector<Word> images;
  for (int i = 0; i < spec.rank; ++i) images.push_back(Word::generator(spec.rank, i));
  for (int step = 0; step < spec.move_count; ++step) {
    NielsenMove m;
    switch (rng.below(4)) {
      case 0: m.kind = NielsenMove::Kind::Swap; break;
      case 1: m.kind = NielsenMove::Kind::Invert; break;
      case 2: m.kind = NielsenMove::Kind::RightMultiply; break;
      default: m.kind = NielsenMove::Kind::LeftMultiply; break;
    }
    m.i = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.rank)));
    m.j = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.rank) - 1));
    if (m.j >= m.i) ++m.j;
    m.sign = rng.below(2) ? +1 : -1;
    apply_nielsen_move(images, m);
  }
  return Endomorphism(spec.rank, std::move(images));
}

}  // namespace endospec
