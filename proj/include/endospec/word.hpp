#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "endospec/errors.hpp"

namespace endospec {

// A signed occurrence of a generator: x_i or x_i^-1. Packed into one 32-bit
// code (2*index for the generator, 2*index+1 for its inverse) so that words
// with millions of letters stay compact.
class Letter {
 public:
  constexpr Letter(int generator, int sign)
      : code_(static_cast<std::int32_t>(2 * generator + (sign < 0 ? 1 : 0))) {}

  constexpr int generator() const noexcept { return code_ >> 1; }
  constexpr int sign() const noexcept { return (code_ & 1) ? -1 : +1; }
  constexpr Letter inverse() const noexcept { return Letter(code_ ^ 1); }
  constexpr bool cancels(Letter other) const noexcept {
    return (code_ ^ other.code_) == 1;
  }

  friend constexpr bool operator==(Letter a, Letter b) noexcept = default;

 private:
  explicit constexpr Letter(std::int32_t code) : code_(code) {}
  std::int32_t code_;
};

// Renders generator i of a rank-r alphabet: a, b, c, ... for r <= 26 and
// x1, x2, ... above.
inline std::string generator_name(int index, int rank) {
  if (rank <= 26) return std::string(1, static_cast<char>('a' + index));
  return "x" + std::to_string(index + 1);
}

namespace detail {

// Appends `in` to `out`, cancelling adjacent inverse pairs across the seam.
// Single stack pass, amortized linear.
inline void append_reduced(std::vector<Letter>& out, std::span<const Letter> in) {
  for (Letter l : in) {
    if (!out.empty() && out.back().cancels(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
}

}  // namespace detail

// A freely reduced word over a fixed rank-r alphabet; the empty word is the
// identity. Immutable after construction.
class Word {
 public:
  Word() = default;

  static Word identity(int rank) { return Word(rank, {}); }

  static Word generator(int rank, int index, int sign = +1) {
    return Word(rank, {Letter(index, sign)});
  }

  // Frees-reduces an arbitrary letter sequence. Idempotent on reduced input.
  static Word reduced(int rank, std::span<const Letter> letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    detail::append_reduced(out, letters);
    return Word(rank, std::move(out));
  }

  int rank() const noexcept { return rank_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t length() const noexcept { return letters_.size(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter letter(std::size_t i) const { return letters_[i]; }

  Word inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      out.push_back(it->inverse());
    return Word(rank_, std::move(out));
  }

  // Signed exponent sum of each generator (the abelianized image).
  std::vector<long long> exponent_vector() const {
    std::vector<long long> e(static_cast<std::size_t>(rank_), 0);
    for (Letter l : letters_) e[static_cast<std::size_t>(l.generator())] += l.sign();
    return e;
  }

  // Display form with exponent runs: "a b^2", "a^-1 b", identity as "1".
  std::string str() const {
    if (letters_.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < letters_.size()) {
      std::size_t j = i;
      while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
      long long run = static_cast<long long>(j - i) * letters_[i].sign();
      if (!out.empty()) out += ' ';
      out += generator_name(letters_[i].generator(), rank_);
      if (run != 1) out += "^" + std::to_string(run);
      i = j;
    }
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  Word(int rank, std::vector<Letter> letters)
      : rank_(rank), letters_(std::move(letters)) {}

  int rank_ = 0;
  std::vector<Letter> letters_;
};

inline Word reduce(int rank, std::span<const Letter> letters) {
  return Word::reduced(rank, letters);
}

inline Word multiply(const Word& u, const Word& v) {
  if (u.rank() != v.rank())
    throw RankMismatchError("multiply: words over alphabets of different rank");
  std::vector<Letter> out(u.letters().begin(), u.letters().end());
  out.reserve(u.length() + v.length());
  detail::append_reduced(out, v.letters());
  return Word::reduced(u.rank(), out);
}

inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

inline Word invert(const Word& w) { return w.inverse(); }

// An endomorphism of the rank-r free group, given by generator images.
// Images are reduced at construction; an empty image kills the generator.
class Endomorphism {
 public:
  Endomorphism(int rank, std::vector<Word> images) : rank_(rank), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != rank)
      throw RankMismatchError("endomorphism needs one image per generator");
    for (const Word& w : images_)
      if (w.rank() != rank)
        throw RankMismatchError("endomorphism image over wrong alphabet");
  }

  static Endomorphism identity(int rank) {
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i) images.push_back(Word::generator(rank, i));
    return Endomorphism(rank, std::move(images));
  }

  int rank() const noexcept { return rank_; }
  const Word& image(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<Word>& images() const noexcept { return images_; }

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  int rank_;
  std::vector<Word> images_;
};

inline Word apply(const Endomorphism& phi, const Word& w) {
  if (phi.rank() != w.rank())
    throw RankMismatchError("apply: endomorphism and word rank differ");
  std::vector<Letter> out;
  std::size_t guess = 0;
  for (Letter l : w.letters()) guess += phi.image(l.generator()).length();
  out.reserve(guess);
  for (Letter l : w.letters()) {
    const Word& img = phi.image(l.generator());
    if (l.sign() > 0) {
      detail::append_reduced(out, img.letters());
    } else {
      // Inline the inverse image without materializing it.
      auto ls = img.letters();
      for (std::size_t i = ls.size(); i-- > 0;) {
        Letter inv = ls[i].inverse();
        if (!out.empty() && out.back().cancels(inv)) {
          out.pop_back();
        } else {
          out.push_back(inv);
        }
      }
    }
  }
  return Word::reduced(w.rank(), out);
}

// Composition (f.g)(x) = f(g(x)).
inline Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  if (f.rank() != g.rank())
    throw RankMismatchError("compose: endomorphisms of different rank");
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(g.rank()));
  for (int i = 0; i < g.rank(); ++i) images.push_back(apply(f, g.image(i)));
  return Endomorphism(f.rank(), std::move(images));
}

inline Endomorphism power(const Endomorphism& phi, int k) {
  Endomorphism acc = Endomorphism::identity(phi.rank());
  for (int i = 0; i < k; ++i) acc = compose(phi, acc);
  return acc;
}

}  // namespace endospec
