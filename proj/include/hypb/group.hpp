#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypb {

using Letter = std::uint8_t;

/// Thrown when a sphere/ball/annulus enumeration would exceed the configured cap.
struct EnumerationCapError : std::runtime_error {
  explicit EnumerationCapError(const std::string& what) : std::runtime_error(what) {}
};

constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Generators of F_k together with their inverses. Letter 2i is the i-th
/// generator, letter 2i+1 its inverse; the total order a < a^-1 < b < b^-1 < ...
/// is the numeric order and fixes all tie-breaks.
struct Alphabet {
  int rank;

  explicit Alphabet(int k) : rank(k) {
    if (k < 2 || k > 26) throw std::invalid_argument("Alphabet: rank must be in [2, 26]");
  }

  int size() const { return 2 * rank; }
  static Letter inverse(Letter s) { return s ^ 1; }

  char symbol(Letter s) const {
    char base = static_cast<char>('a' + s / 2);
    return (s % 2) ? static_cast<char>(base - 'a' + 'A') : base;
  }
  Letter letter(char c) const;
};

/// A freely reduced word over the alphabet; the empty word is the identity.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  Letter front() const { return letters.front(); }
  Letter back() const { return letters.back(); }
  Letter operator[](std::size_t i) const { return letters[i]; }

  bool operator==(const Word&) const = default;
  bool operator<(const Word& o) const;  // length, then lexicographic
};

bool is_reduced(const Word& w);

/// Reduced form of the concatenation u v.
Word multiply(const Word& u, const Word& v);
/// Number of letters cancelled on each side when forming u v.
std::size_t cancellation(const Word& u, const Word& v);
Word inverse_word(const Word& w);

struct CyclicReduction {
  Word core;        // cyclically reduced
  Word conjugator;  // w == conjugator * core * conjugator^-1
};
CyclicReduction cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

std::size_t common_prefix_letters(const Word& x, const Word& y);

/// All reduced words of letter length exactly R, in length-lex order.
std::vector<Word> sphere(const Alphabet& alph, int R,
                         std::uint64_t cap = kDefaultEnumerationCap);
/// All reduced words of letter length at most R, in length-lex order.
std::vector<Word> ball(const Alphabet& alph, int R,
                       std::uint64_t cap = kDefaultEnumerationCap);
std::uint64_t sphere_count(const Alphabet& alph, int R);

/// An eventually periodic point of the boundary dF_k, the infinite reduced
/// word preperiod . period . period ...  Normalized on construction: shortest
/// preperiod, then primitive (shortest) period, so equality is structural.
class BoundaryPoint {
 public:
  BoundaryPoint(Word preperiod, Word period);

  const Word& preperiod() const { return pre_; }
  const Word& period() const { return per_; }

  Letter letter_at(std::size_t i) const {
    return i < pre_.size() ? pre_[i] : per_[(i - pre_.size()) % per_.size()];
  }
  /// Finite prefix of the infinite word.
  Word prefix(std::size_t n) const;

  bool operator==(const BoundaryPoint&) const = default;

 private:
  Word pre_;
  Word per_;
};

/// Common prefix length of two boundary points; nullopt means infinite (equal points).
std::optional<std::size_t> common_prefix_letters(const BoundaryPoint& x, const BoundaryPoint& y);
std::size_t common_prefix_letters(const Word& x, const BoundaryPoint& y);

/// The radial extension g^ of g: g followed by x^inf where x is the first
/// letter in alphabet order that keeps the word reduced. Satisfies
/// common_prefix_letters(g, hat(g)) == |g| exactly.
BoundaryPoint hat(const Alphabet& alph, const Word& g);
inline BoundaryPoint check_point(const Alphabet& alph, const Word& g) {
  return hat(alph, inverse_word(g));
}

/// The boundary action g.xi, renormalized.
BoundaryPoint act(const Word& g, const BoundaryPoint& xi);

// Serialization: words as strings over {a, A, b, B, ...} (uppercase = inverse),
// boundary points as "preperiod(period)".
std::string to_string(const Alphabet& alph, const Word& w);
std::string to_string(const Alphabet& alph, const BoundaryPoint& xi);
Word parse_word(const Alphabet& alph, const std::string& s);
BoundaryPoint parse_boundary_point(const Alphabet& alph, const std::string& s);

}  // namespace hypb
