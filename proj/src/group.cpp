#include "hypb/group.hpp"

#include <algorithm>
#include <numeric>

namespace hypb {

Letter Alphabet::letter(char c) const {
  bool upper = (c >= 'A' && c <= 'Z');
  char base = upper ? static_cast<char>(c - 'A' + 'a') : c;
  int gen = base - 'a';
  if (gen < 0 || gen >= rank) throw std::invalid_argument(std::string("unknown letter: ") + c);
  return static_cast<Letter>(2 * gen + (upper ? 1 : 0));
}

bool Word::operator<(const Word& o) const {
  if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
  return letters < o.letters;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == Alphabet::inverse(w[i - 1])) return false;
  return true;
}

Word multiply(const Word& u, const Word& v) {
  std::size_t c = cancellation(u, v);
  std::vector<Letter> out;
  out.reserve(u.size() + v.size() - 2 * c);
  out.insert(out.end(), u.letters.begin(), u.letters.end() - c);
  out.insert(out.end(), v.letters.begin() + c, v.letters.end());
  return Word(std::move(out));
}

std::size_t cancellation(const Word& u, const Word& v) {
  std::size_t c = 0;
  std::size_t limit = std::min(u.size(), v.size());
  while (c < limit && v[c] == Alphabet::inverse(u[u.size() - 1 - c])) ++c;
  return c;
}

Word inverse_word(const Word& w) {
  std::vector<Letter> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = Alphabet::inverse(w[w.size() - 1 - i]);
  return Word(std::move(out));
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || w.front() != Alphabet::inverse(w.back());
}

CyclicReduction cyclic_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == Alphabet::inverse(w[hi - 1])) {
    ++lo;
    --hi;
  }
  CyclicReduction r;
  r.conjugator = Word(std::vector<Letter>(w.letters.begin(), w.letters.begin() + lo));
  r.core = Word(std::vector<Letter>(w.letters.begin() + lo, w.letters.begin() + hi));
  return r;
}

std::size_t common_prefix_letters(const Word& x, const Word& y) {
  std::size_t n = std::min(x.size(), y.size());
  std::size_t i = 0;
  while (i < n && x[i] == y[i]) ++i;
  return i;
}

std::uint64_t sphere_count(const Alphabet& alph, int R) {
  if (R == 0) return 1;
  std::uint64_t n = static_cast<std::uint64_t>(alph.size());
  std::uint64_t count = n;
  for (int i = 1; i < R; ++i) count *= n - 1;
  return count;
}

namespace {

void enumerate(const Alphabet& alph, int min_len, int max_len, std::uint64_t cap,
               std::vector<Word>& out) {
  std::uint64_t total = 0;
  for (int r = min_len; r <= max_len; ++r) total += sphere_count(alph, r);
  if (total > cap)
    throw EnumerationCapError("enumeration of " + std::to_string(total) +
                              " words exceeds cap " + std::to_string(cap));
  out.reserve(out.size() + total);
  std::vector<Letter> cur;
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth >= min_len) out.emplace_back(std::vector<Letter>(cur));
    if (depth == max_len) return;
    for (int t = 0; t < alph.size(); ++t) {
      if (!cur.empty() && static_cast<Letter>(t) == Alphabet::inverse(cur.back())) continue;
      cur.push_back(static_cast<Letter>(t));
      self(self, depth + 1);
      cur.pop_back();
    }
  };
  dfs(dfs, 0);
}

}  // namespace

std::vector<Word> sphere(const Alphabet& alph, int R, std::uint64_t cap) {
  if (R < 0) throw std::invalid_argument("sphere: R must be nonnegative");
  std::vector<Word> out;
  enumerate(alph, R, R, cap, out);
  return out;
}

std::vector<Word> ball(const Alphabet& alph, int R, std::uint64_t cap) {
  if (R < 0) throw std::invalid_argument("ball: R must be nonnegative");
  std::uint64_t total = 0;
  for (int r = 0; r <= R; ++r) total += sphere_count(alph, r);
  if (total > cap)
    throw EnumerationCapError("enumeration of " + std::to_string(total) +
                              " words exceeds cap " + std::to_string(cap));
  std::vector<Word> out;
  out.reserve(total);
  // level by level, so the result is in length-then-lex order
  for (int r = 0; r <= R; ++r) enumerate(alph, r, r, total, out);
  return out;
}

BoundaryPoint::BoundaryPoint(Word preperiod, Word period) : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw std::invalid_argument("BoundaryPoint: empty period");
  if (!is_reduced(pre_) || !is_reduced(per_))
    throw std::invalid_argument("BoundaryPoint: words must be reduced");
  if (!is_cyclically_reduced(per_))
    throw std::invalid_argument("BoundaryPoint: period must be cyclically reduced");
  if (!pre_.empty() && per_.front() == Alphabet::inverse(pre_.back()))
    throw std::invalid_argument("BoundaryPoint: preperiod-period seam not reduced");

  // Primitive period: if per == r^t for a shorter r, use r.
  for (std::size_t len = 1; len <= per_.size() / 2; ++len) {
    if (per_.size() % len != 0) continue;
    bool ok = true;
    for (std::size_t i = len; i < per_.size() && ok; ++i) ok = per_[i] == per_[i % len];
    if (ok) {
      per_.letters.resize(len);
      break;
    }
  }
  // Shortest preperiod: absorb trailing preperiod letters into the cycle.
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.letters.pop_back();
    per_.letters.insert(per_.letters.begin(), per_.back());
    per_.letters.pop_back();
  }
}

Word BoundaryPoint::prefix(std::size_t n) const {
  std::vector<Letter> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = letter_at(i);
  return Word(std::move(out));
}

std::optional<std::size_t> common_prefix_letters(const BoundaryPoint& x, const BoundaryPoint& y) {
  if (x == y) return std::nullopt;
  std::size_t bound = std::max(x.preperiod().size(), y.preperiod().size()) +
                      x.period().size() * y.period().size() + 1;
  for (std::size_t i = 0; i < bound; ++i)
    if (x.letter_at(i) != y.letter_at(i)) return i;
  // Distinct normalized points must differ within the bound.
  throw std::logic_error("common_prefix_letters: normalization invariant violated");
}

std::size_t common_prefix_letters(const Word& x, const BoundaryPoint& y) {
  std::size_t i = 0;
  while (i < x.size() && x[i] == y.letter_at(i)) ++i;
  return i;
}

BoundaryPoint hat(const Alphabet& alph, const Word& g) {
  for (int t = 0; t < alph.size(); ++t) {
    if (!g.empty() && static_cast<Letter>(t) == Alphabet::inverse(g.back())) continue;
    return BoundaryPoint(g, Word({static_cast<Letter>(t)}));
  }
  throw std::logic_error("hat: unreachable");
}

BoundaryPoint act(const Word& g, const BoundaryPoint& xi) {
  Word u = multiply(g, xi.preperiod());
  const Word& q = xi.period();
  std::size_t j = 0;  // the tail is the rotation of q starting at index j
  while (!u.empty() && u.back() == Alphabet::inverse(q[j % q.size()])) {
    u.letters.pop_back();
    ++j;
  }
  j %= q.size();
  std::vector<Letter> rotated(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) rotated[i] = q[(j + i) % q.size()];
  return BoundaryPoint(std::move(u), Word(std::move(rotated)));
}

std::string to_string(const Alphabet& alph, const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w.letters) s.push_back(alph.symbol(l));
  return s;
}

std::string to_string(const Alphabet& alph, const BoundaryPoint& xi) {
  return to_string(alph, xi.preperiod()) + "(" + to_string(alph, xi.period()) + ")";
}

Word parse_word(const Alphabet& alph, const std::string& s) {
  std::vector<Letter> ls;
  ls.reserve(s.size());
  for (char c : s) ls.push_back(alph.letter(c));
  Word w(std::move(ls));
  if (!is_reduced(w)) throw std::invalid_argument("parse_word: word is not reduced: " + s);
  return w;
}

BoundaryPoint parse_boundary_point(const Alphabet& alph, const std::string& s) {
  auto open = s.find('(');
  auto close = s.find(')');
  if (open == std::string::npos || close != s.size() - 1 || close <= open)
    throw std::invalid_argument("parse_boundary_point: expected \"pre(period)\": " + s);
  return BoundaryPoint(parse_word(alph, s.substr(0, open)),
                       parse_word(alph, s.substr(open + 1, close - open - 1)));
}

}  // namespace hypb
