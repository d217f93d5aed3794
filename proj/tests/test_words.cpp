#include <doctest.h>

#include "hypb/group.hpp"

using namespace hypb;

namespace {
const Alphabet F2(2);
Word W(const std::string& s) { return parse_word(F2, s); }
BoundaryPoint P(const std::string& s) { return parse_boundary_point(F2, s); }
}  // namespace

TEST_CASE("free reduction and multiplication") {
  CHECK(multiply(W("ab"), W("BA")) == W(""));
  CHECK(multiply(W("a"), W("a")) == W("aa"));
  CHECK(multiply(W("aba"), W("Ab")) == W("abb"));
  CHECK(multiply(W(""), W("ab")) == W("ab"));
  // associativity on a battery
  for (const Word& u : ball(F2, 2))
    for (const Word& v : ball(F2, 2))
      for (const Word& w : ball(F2, 2))
        CHECK(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)));
}

TEST_CASE("inverse") {
  CHECK(inverse_word(W("ab")) == W("BA"));
  CHECK(inverse_word(W("")) == W(""));
  CHECK(inverse_word(W("aa")) == W("AA"));
  for (const Word& w : ball(F2, 4)) CHECK(multiply(w, inverse_word(w)) == Word());
}

TEST_CASE("cyclic reduction") {
  auto r1 = cyclic_reduce(W("abA"));
  CHECK(r1.core == W("b"));
  CHECK(r1.conjugator == W("a"));
  auto r2 = cyclic_reduce(W("ab"));
  CHECK(r2.core == W("ab"));
  CHECK(r2.conjugator == W(""));
  auto r3 = cyclic_reduce(W("abbA"));
  CHECK(r3.core == W("bb"));
  CHECK(r3.conjugator == W("a"));
  for (const Word& w : ball(F2, 5)) {
    auto r = cyclic_reduce(w);
    CHECK(is_cyclically_reduced(r.core));
    CHECK(multiply(multiply(r.conjugator, r.core), inverse_word(r.conjugator)) == w);
  }
}

TEST_CASE("sphere and ball enumeration") {
  CHECK(sphere(F2, 0).size() == 1);
  CHECK(sphere(F2, 1).size() == 4);
  CHECK(sphere(F2, 2).size() == 12);
  CHECK(sphere(F2, 3).size() == 36);
  CHECK(sphere_count(F2, 5) == 4 * 81);
  CHECK(ball(F2, 2).size() == 17);
  auto b = ball(F2, 3);
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i - 1] < b[i]);
  for (const Word& w : b) CHECK(is_reduced(w));
  CHECK_THROWS_AS(sphere(F2, 20, 1000), EnumerationCapError);
}

TEST_CASE("boundary point normalization") {
  // absorb preperiod tail into the period
  CHECK(P("ab(b)") == P("a(b)"));
  CHECK(P("abb(b)") == P("a(b)"));
  // primitive period
  CHECK(P("(abab)") == P("(ab)"));
  CHECK(P("(ab)").period() == W("ab"));
  // rotation during absorption
  CHECK(P("ab(ab)") == P("(ab)"));
  CHECK(P("aab(ab)") == P("a(ab)"));
  CHECK(P("(a)").preperiod() == W(""));
  // seams must be reduced
  CHECK_THROWS(P("a(A)"));
  CHECK_THROWS(P("(aA)"));
}

TEST_CASE("prefixes and common prefix lengths") {
  BoundaryPoint xi = P("a(b)");
  CHECK(xi.prefix(4) == W("abbb"));
  CHECK(common_prefix_letters(W("ab"), xi) == 2);
  CHECK(common_prefix_letters(W("aB"), xi) == 1);
  CHECK(common_prefix_letters(P("(a)"), P("(b)")) == 0);
  CHECK(common_prefix_letters(P("(ab)"), P("ab(a)")) == 3);
  CHECK(!common_prefix_letters(P("(a)"), P("(a)")).has_value());
  CHECK(common_prefix_letters(P("a(b)"), P("ab(b)")) == std::nullopt);
}

TEST_CASE("radial extension") {
  for (const Word& g : ball(F2, 4)) {
    BoundaryPoint gh = hat(F2, g);
    CHECK(common_prefix_letters(g, gh) == g.size());
  }
  CHECK(hat(F2, W("a")) == P("(a)"));
  CHECK(hat(F2, W("A")) == P("(A)"));
  CHECK(hat(F2, W("b")) == P("b(a)"));
}

TEST_CASE("boundary action") {
  CHECK(act(W("a"), P("(b)")) == P("a(b)"));
  CHECK(act(W("A"), P("a(b)")) == P("(b)"));
  CHECK(act(W("BA"), P("ab(ab)")) == P("(ab)"));
  // action by g shifts the orbit of g-periodic points to themselves
  CHECK(act(W("ab"), P("(ab)")) == P("(ab)"));
  // cocycle property (g h).xi = g.(h.xi)
  std::vector<BoundaryPoint> pts = {P("(a)"), P("(ab)"), P("b(Ab)"), P("AA(ba)")};
  for (const Word& g : ball(F2, 3))
    for (const Word& h : ball(F2, 3))
      for (const BoundaryPoint& xi : pts)
        CHECK(act(multiply(g, h), xi) == act(g, act(h, xi)));
}

TEST_CASE("serialization roundtrip") {
  for (const Word& w : ball(F2, 4)) CHECK(parse_word(F2, to_string(F2, w)) == w);
  for (const char* s : {"(a)", "a(b)", "AA(ba)", "(ab)"}) {
    BoundaryPoint xi = P(s);
    CHECK(parse_boundary_point(F2, to_string(F2, xi)) == xi);
  }
  CHECK(to_string(F2, W("aB")) == "aB");
  CHECK_THROWS(parse_word(F2, "ax"));
  CHECK_THROWS(parse_word(F2, "aA"));
}

TEST_CASE("rank 3 alphabet") {
  Alphabet F3(3);
  CHECK(F3.size() == 6);
  CHECK(sphere(F3, 2).size() == 30);
  CHECK(parse_word(F3, "c") == Word(std::vector<Letter>{4}));
}
