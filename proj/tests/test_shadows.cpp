#include <doctest.h>

#include <cmath>

#include "hypb/shadows.hpp"

using namespace hypb;

namespace {
const Alphabet F2(2);
Word W(const std::string& s) { return parse_word(F2, s); }
BoundaryPoint P(const std::string& s) { return parse_boundary_point(F2, s); }
}  // namespace

TEST_CASE("shadow stems") {
  Metric m = solve_metric(MetricSpec::standard(2));
  CHECK(shadow(m, W("ab"), 1.0).stem == W("a"));
  CHECK(shadow(m, W("ab"), 0.0).stem == W("ab"));
  CHECK(shadow(m, W("ab"), 2.0).stem == W(""));  // whole boundary
  CHECK(shadow_contains(shadow(m, W("ab"), 1.0), P("a(b)")));
  CHECK(shadow_contains(shadow(m, W("ab"), 1.0), P("(a)")));
  CHECK(!shadow_contains(shadow(m, W("ab"), 1.0), P("(b)")));
  CHECK_THROWS(shadow(m, W("ab"), -1.0));
  // weighted: thresholds count weighted length
  Metric mw = solve_metric(MetricSpec::weighted(2, {1, 2}));
  CHECK(shadow(mw, W("ba"), 1.0).stem == W("b"));   // |ba| = 3, need >= 2
  CHECK(shadow(mw, W("ba"), 0.5).stem == W("ba"));  // need >= 2.5
}

TEST_CASE("boundary ball stems") {
  Metric m = solve_metric(MetricSpec::standard(2));
  CHECK(boundary_ball_stem(m, P("(ab)"), 2.0) == W("ab"));
  CHECK(boundary_ball_stem(m, P("(ab)"), 0.0) == W(""));
  CHECK(boundary_ball_stem(m, P("(ab)"), 1.5) == W("ab"));
}

TEST_CASE("annulus membership") {
  Metric m = solve_metric(MetricSpec::standard(2));
  Annulus a = annulus(m, 3, 1);
  // spheres 2, 3, 4
  CHECK(a.members.size() == 12 + 36 + 108);
  for (std::size_t i = 1; i < a.members.size(); ++i) CHECK(a.members[i - 1] < a.members[i]);
  Metric mw = solve_metric(MetricSpec::weighted(2, {1, 2}));
  for (const Word& g : annulus(mw, 4, 1).members) {
    CHECK(mw.word_length(g) >= 3 - 1e-9);
    CHECK(mw.word_length(g) <= 5 + 1e-9);
  }
}

TEST_CASE("shadow covers") {
  Metric m = solve_metric(MetricSpec::standard(2));
  ShadowParams params = ShadowParams::defaults(m);
  for (int R = 1; R <= 5; ++R) {
    CoverReport report = shadows_cover(m, R, params);
    CHECK(report.covered);
    CHECK(report.uncovered.empty());
  }
  // negative control: with half_width 0 and rho 0 on the weighted metric,
  // annulus R = 2 is {aa, AA, b, B}, whose shadows miss [ab]
  Metric mw = solve_metric(MetricSpec::weighted(2, {1, 2}));
  CoverReport bad = shadows_cover(mw, 2, ShadowParams{0, 0, 0});
  CHECK(!bad.covered);
  CHECK(!bad.uncovered.empty());
}

TEST_CASE("cone growth") {
  Metric m = solve_metric(MetricSpec::standard(2));
  ShadowParams params = ShadowParams::defaults(m);
  // brute oracle: members are exactly the annulus elements whose shadow stem
  // is prefix-compatible with the ball stem
  BoundaryPoint xi = P("(ab)");
  auto members = cone_members(m, xi, 2, 4, params);
  Word ball_stem = boundary_ball_stem(m, xi, 2);
  std::size_t brute = 0;
  for (const Word& g : annulus(m, 4, params.half_width).members) {
    Word stem = shadow(m, g, params.rho_shadow).stem;
    std::size_t c = common_prefix_letters(stem, ball_stem);
    if (c == stem.size() || c == ball_stem.size()) ++brute;
  }
  CHECK(members.size() == brute);
  CHECK(!members.empty());
  for (const Word& g : members) {
    Shadow sh = shadow(m, g, params.rho_shadow);
    std::size_t c = common_prefix_letters(sh.stem, ball_stem);
    CHECK((c == sh.stem.size() || c == ball_stem.size()));
  }
  auto rows = cone_growth_report(m, {xi, P("(a)")}, {1, 2}, {3, 4, 5}, params);
  CHECK(rows.size() == 12);
  for (const auto& row : rows) {
    CHECK(row.ratio > 0.05);
    CHECK(row.ratio < 20);
  }
}

TEST_CASE("prevent cancellation") {
  Metric m = solve_metric(MetricSpec::weighted(2, {1, 2}));
  double tau = 2 * m.max_letter_length();
  for (const char* g0 : {"a", "ab", "ba", "bb"})
    for (const char* h : {"A", "BA", "ab", "BB"}) {
      CancellationWitness w = prevent_cancellation(m, W(g0), W(h));
      double lg = m.word_length(w.g), lh = m.word_length(W(h));
      double lgh = m.word_length(multiply(w.g, W(h)));
      CHECK(lgh >= lg + lh - 2 * tau - 1e-9);
      CHECK(w.tau_used <= tau + 1e-9);
      // witness stays within letter distance 2 of g0
      CHECK(multiply(inverse_word(W(g0)), w.g).size() <= 2);
    }
}

TEST_CASE("double shadows") {
  Metric m = solve_metric(MetricSpec::standard(2));
  DoubleShadow ds = double_shadow(m, W("abab"), 0.0);
  CHECK(ds.stem_hat == W("ab"));
  CHECK(ds.stem_check == W("BA"));
  ShadowParams params = ShadowParams::defaults(m);
  for (int R = 2; R <= 4; ++R) CHECK(double_shadows_cover(m, R, params).covered);
  Metric mw = solve_metric(MetricSpec::weighted(2, {1, 2}));
  CHECK(double_shadows_cover(mw, 4, ShadowParams::defaults(mw)).covered);
}

TEST_CASE("greedy partition") {
  Metric m = solve_metric(MetricSpec::standard(2));
  ShadowParams params = ShadowParams::defaults(m);
  GreedyPartition part = greedy_partition(m, 4, params);
  std::size_t n = part.side;
  // cells are disjoint and cover the full grid
  std::vector<int> seen(n * n, 0);
  for (const GridSet& cell : part.cells)
    for (auto key : cell.pairs) {
      auto [i, j] = GridSet::unkey(key);
      ++seen[i * n + j];
    }
  for (int s : seen) CHECK(s == 1);
  // each cell sits inside its owner's double shadow
  for (std::size_t c = 0; c < part.cells.size(); ++c) {
    DoubleShadow ds = double_shadow(m, part.owners[c], params.rho_double);
    CylinderBasis basis(F2, part.grid_depth);
    auto [a0, a1] = basis.descendant_range(ds.stem_hat);
    auto [b0, b1] = basis.descendant_range(ds.stem_check);
    for (auto key : part.cells[c].pairs) {
      auto [i, j] = GridSet::unkey(key);
      CHECK(i >= a0);
      CHECK(i < a1);
      CHECK(j >= b0);
      CHECK(j < b1);
    }
  }
  // total mu^2 mass is 1
  MarkovMeasure<double> mu = ps_measure(m);
  double total = 0;
  for (const GridSet& cell : part.cells) total += mu2_mass(mu, cell);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}
