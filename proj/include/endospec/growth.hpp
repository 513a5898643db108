#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "endospec/errors.hpp"
#include "endospec/word.hpp"

namespace endospec {

struct GrowthRow {
  int k = 0;
  long long max_length = 0;  // max over generators of the reduced length of the k-th image
  std::optional<double> root_estimate;   // max_length^(1/k), k >= 1
  std::optional<double> ratio_estimate;  // max_length(k) / max_length(k-1), k >= 1
};

struct GrowthTrace {
  std::vector<GrowthRow> rows;  // k = 0 .. kmax
};

inline constexpr long long kDefaultLengthCap = 10'000'000;

// Iterated image lengths max_i |phi^k(x_i)|, k = 0..kmax, with both the k-th
// root and successive-ratio estimators. Lengths are exact (reduced words);
// growth is exponential, so a hard length cap fails loudly rather than
// truncating.
inline GrowthTrace growth_sequence(const Endomorphism& phi, int kmax,
                                   long long length_cap = kDefaultLengthCap) {
  if (kmax < 1) throw Error("growth_sequence: kmax must be >= 1");
  GrowthTrace trace;
  trace.rows.push_back(GrowthRow{0, 1, std::nullopt, std::nullopt});
  std::vector<Word> words;
  words.reserve(static_cast<std::size_t>(phi.rank()));
  for (int i = 0; i < phi.rank(); ++i) words.push_back(Word::generator(phi.rank(), i));
  for (int k = 1; k <= kmax; ++k) {
    long long max_len = 0;
    for (Word& w : words) {
      w = apply(phi, w);
      if (static_cast<long long>(w.length()) > length_cap)
        throw LengthBudgetError("growth_sequence: length cap exceeded at k=" + std::to_string(k));
      max_len = std::max(max_len, static_cast<long long>(w.length()));
    }
    GrowthRow row;
    row.k = k;
    row.max_length = max_len;
    row.root_estimate = std::pow(static_cast<double>(max_len), 1.0 / k);
    long long prev = trace.rows.back().max_length;
    row.ratio_estimate = prev > 0 ? static_cast<double>(max_len) / static_cast<double>(prev)
                                  : 0.0;
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

// Growth-rate estimate: the ratio estimator at the last k, falling back to
// the k-th root when the lengths have stopped growing (constant, oscillating
// or decaying tails defeat the ratio). An estimate, not an exact value.
inline double growth_estimate(const GrowthTrace& trace) {
  const GrowthRow& last = trace.rows.back();
  const GrowthRow& prev = trace.rows[trace.rows.size() - 2];
  if (last.max_length > prev.max_length && prev.max_length > 0)
    return static_cast<double>(last.max_length) / static_cast<double>(prev.max_length);
  return last.max_length == 0
             ? 0.0
             : std::pow(static_cast<double>(last.max_length), 1.0 / last.k);
}

inline double growth_estimate(const Endomorphism& phi, int kmax,
                              long long length_cap = kDefaultLengthCap) {
  return growth_estimate(growth_sequence(phi, kmax, length_cap));
}

}  // namespace endospec
