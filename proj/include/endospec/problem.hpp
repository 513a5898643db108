#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "endospec/errors.hpp"
#include "endospec/invariant_subgroups.hpp"
#include "endospec/stallings.hpp"
#include "endospec/word.hpp"

namespace endospec {

struct SubgroupDirective {
  enum class Kind { None, Explicit, ModKernel, TotalKernel };
  Kind kind = Kind::None;
  std::vector<Word> generators;  // Explicit
  int modulus = 0;               // ModKernel / TotalKernel

  friend bool operator==(const SubgroupDirective&, const SubgroupDirective&) = default;
};

// A parsed problem instance: the ambient rank, the endomorphism, and an
// optional invariant subgroup.
struct ProblemSpec {
  int rank = 0;
  Endomorphism phi{0, {}};
  SubgroupDirective subgroup;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

namespace detail {

// Cursor over one line; all positions are 1-based for error messages.
struct LineCursor {
  const std::string& s;
  int line;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() const { return s[pos]; }
  int column() const { return static_cast<int>(pos) + 1; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, column()); }

  long long parse_int() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      fail("expected an integer");
    }
    return std::stoll(s.substr(start, pos - start));
  }
};

// One generator token: a-z (A-Z for the inverse) at rank <= 26, x<k> above.
// Returns (index, sign).
inline std::pair<int, int> parse_generator_token(LineCursor& c, int rank) {
  c.skip_ws();
  if (c.pos >= c.s.size()) c.fail("expected a generator");
  char ch = c.s[c.pos];
  if (rank > 26) {
    if (ch != 'x' && ch != 'X') c.fail("expected a generator of the form x<k>");
    int sign = std::isupper(static_cast<unsigned char>(ch)) ? -1 : +1;
    ++c.pos;
    int col = c.column();
    long long k = c.parse_int();
    if (k < 1 || k > rank)
      throw UnknownGeneratorError("generator x" + std::to_string(k) + " out of range", c.line, col);
    return {static_cast<int>(k) - 1, sign};
  }
  if (!std::isalpha(static_cast<unsigned char>(ch))) c.fail("expected a generator letter");
  int sign = std::isupper(static_cast<unsigned char>(ch)) ? -1 : +1;
  int index = std::tolower(static_cast<unsigned char>(ch)) - 'a';
  if (index >= rank)
    throw UnknownGeneratorError(std::string("unknown generator '") + ch + "'", c.line, c.column());
  ++c.pos;
  return {index, sign};
}

// A word: juxtaposed generator tokens with optional per-letter integer
// exponents ("a b^2", "a^-1 b", uppercase for inverses); "1" is the identity.
// Stops at any of the given terminator characters.
inline Word parse_word(LineCursor& c, int rank, const std::string& terminators) {
  std::vector<Letter> letters;
  for (;;) {
    c.skip_ws();
    if (c.pos >= c.s.size()) break;
    char ch = c.s[c.pos];
    if (terminators.find(ch) != std::string::npos) break;
    if (ch == '1') {
      ++c.pos;
      continue;
    }
    auto [index, sign] = parse_generator_token(c, rank);
    long long exponent = 1;
    c.skip_ws();
    if (c.pos < c.s.size() && c.s[c.pos] == '^') {
      ++c.pos;
      exponent = c.parse_int();
    }
    if (exponent < 0) {
      sign = -sign;
      exponent = -exponent;
    }
    for (long long i = 0; i < exponent; ++i) letters.push_back(Letter(index, sign));
  }
  return Word::reduced(rank, letters);
}

}  // namespace detail

// Parses a single word ("a b^2", "A b", "x1 x2^-1", "1").
inline Word parse_word_text(const std::string& text, int rank) {
  detail::LineCursor c{text, 1};
  Word w = detail::parse_word(c, rank, "");
  if (!c.done()) c.fail("trailing input after word");
  return w;
}

// Parses the line-oriented problem language:
//   rank: <int>
//   phi: <gen> -> <word>, <gen> -> <word>, ...
//   H: [<word>, <word>, ...]   |   H: mod <n>   |   H: total <n>
// Blank lines and lines starting with '#' are ignored.
inline ProblemSpec parse_spec(const std::string& text) {
  int rank = -1;
  int rank_line = 0;
  std::vector<Word> images;
  std::vector<char> image_seen;
  bool phi_seen = false;
  SubgroupDirective subgroup;

  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      lines.push_back(text.substr(start, end - start));
      start = end + 1;
    }
  }

  for (std::size_t li = 0; li < lines.size(); ++li) {
    detail::LineCursor c{lines[li], static_cast<int>(li) + 1};
    if (c.done() || c.peek() == '#') continue;
    std::size_t colon = lines[li].find(':');
    if (colon == std::string::npos) c.fail("expected '<key>: <value>'");
    std::string key = lines[li].substr(c.pos, colon - c.pos);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    c.pos = colon + 1;

    if (key == "rank") {
      long long r = c.parse_int();
      if (r < 1 || r > 1'000'000) c.fail("rank out of range");
      rank = static_cast<int>(r);
      rank_line = c.line;
      images.assign(static_cast<std::size_t>(rank), Word::identity(rank));
      image_seen.assign(static_cast<std::size_t>(rank), 0);
      if (!c.done()) c.fail("trailing input after rank");
    } else if (key == "phi") {
      if (rank < 0) c.fail("'phi' before 'rank'");
      phi_seen = true;
      for (;;) {
        auto [index, sign] = detail::parse_generator_token(c, rank);
        if (sign < 0) c.fail("left side of '->' must be a plain generator");
        c.skip_ws();
        if (c.pos + 1 >= c.s.size() || c.s[c.pos] != '-' || c.s[c.pos + 1] != '>')
          c.fail("expected '->'");
        c.pos += 2;
        Word img = detail::parse_word(c, rank, ",");
        if (image_seen[static_cast<std::size_t>(index)])
          throw RankMismatchError("duplicate image for generator " +
                                  generator_name(index, rank) + " (line " +
                                  std::to_string(c.line) + ")");
        image_seen[static_cast<std::size_t>(index)] = 1;
        images[static_cast<std::size_t>(index)] = std::move(img);
        if (c.done()) break;
        if (c.peek() != ',') c.fail("expected ',' between images");
        ++c.pos;
      }
    } else if (key == "H") {
      c.skip_ws();
      if (rank < 0) c.fail("'H' before 'rank'");
      if (c.pos < c.s.size() && c.peek() == '[') {
        ++c.pos;
        subgroup.kind = SubgroupDirective::Kind::Explicit;
        c.skip_ws();
        if (c.pos < c.s.size() && c.peek() == ']') {
          ++c.pos;
        } else {
          for (;;) {
            subgroup.generators.push_back(detail::parse_word(c, rank, ",]"));
            if (c.done()) c.fail("unterminated '['");
            if (c.peek() == ']') {
              ++c.pos;
              break;
            }
            ++c.pos;  // ','
          }
        }
        if (!c.done()) c.fail("trailing input after ']'");
      } else {
        std::size_t start = c.pos;
        while (c.pos < c.s.size() && std::isalpha(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
        std::string kind = c.s.substr(start, c.pos - start);
        long long n;
        if (kind == "mod") {
          subgroup.kind = SubgroupDirective::Kind::ModKernel;
          n = c.parse_int();
        } else if (kind == "total") {
          subgroup.kind = SubgroupDirective::Kind::TotalKernel;
          n = c.parse_int();
        } else {
          c.pos = start;
          c.fail("expected '[', 'mod <n>' or 'total <n>'");
        }
        if (n < 1 || n > 1'000'000) c.fail("modulus out of range");
        subgroup.modulus = static_cast<int>(n);
        if (!c.done()) c.fail("trailing input after modulus");
      }
    } else {
      detail::LineCursor err{lines[li], static_cast<int>(li) + 1};
      err.skip_ws();
      err.fail("unknown key '" + key + "'");
    }
  }

  if (rank < 0) throw ParseError("missing 'rank' line", static_cast<int>(lines.size()), 1);
  if (!phi_seen) throw ParseError("missing 'phi' line", static_cast<int>(lines.size()), 1);
  for (int i = 0; i < rank; ++i)
    if (!image_seen[static_cast<std::size_t>(i)])
      throw RankMismatchError("phi is missing an image for generator " +
                              generator_name(i, rank) + " (line " + std::to_string(rank_line) +
                              ")");
  ProblemSpec spec;
  spec.rank = rank;
  spec.phi = Endomorphism(rank, std::move(images));
  spec.subgroup = std::move(subgroup);
  return spec;
}

// Canonical text form; parse_spec(print_spec(s)) == s.
inline std::string print_spec(const ProblemSpec& spec) {
  std::string out = "rank: " + std::to_string(spec.rank) + "\n";
  out += "phi: ";
  for (int i = 0; i < spec.rank; ++i) {
    if (i) out += ", ";
    out += generator_name(i, spec.rank) + " -> " + spec.phi.image(i).str();
  }
  out += "\n";
  switch (spec.subgroup.kind) {
    case SubgroupDirective::Kind::None:
      break;
    case SubgroupDirective::Kind::Explicit: {
      out += "H: [";
      for (std::size_t i = 0; i < spec.subgroup.generators.size(); ++i) {
        if (i) out += ", ";
        out += spec.subgroup.generators[i].str();
      }
      out += "]\n";
      break;
    }
    case SubgroupDirective::Kind::ModKernel:
      out += "H: mod " + std::to_string(spec.subgroup.modulus) + "\n";
      break;
    case SubgroupDirective::Kind::TotalKernel:
      out += "H: total " + std::to_string(spec.subgroup.modulus) + "\n";
      break;
  }
  return out;
}

// Materializes the subgroup graph named by the directive.
inline SubgroupGraph build_subgroup(const ProblemSpec& spec) {
  switch (spec.subgroup.kind) {
    case SubgroupDirective::Kind::Explicit:
      return SubgroupGraph::from_generators(spec.rank, spec.subgroup.generators);
    case SubgroupDirective::Kind::ModKernel:
      return mod_n_homology_kernel(spec.rank, spec.subgroup.modulus);
    case SubgroupDirective::Kind::TotalKernel:
      return total_exponent_kernel(spec.rank, spec.subgroup.modulus);
    case SubgroupDirective::Kind::None:
      break;
  }
  throw Error("this command needs a subgroup: add an 'H:' line to the input");
}

}  // namespace endospec
