#include "hypb/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace hypb {

namespace {

constexpr double kLenTol = 1e-9;
constexpr std::size_t kMaxWitnesses = 16;

std::uint64_t encode(const Word& w) {
  // words of length <= 12 over <= 52 letters fit in 64 bits (6 bits/letter + length)
  std::uint64_t code = w.size();
  for (Letter l : w.letters) code = (code << 6) | (l + 1);
  return code;
}

/// Shortest prefix of the infinite word xi with weighted length >= threshold.
Word threshold_prefix(const Metric& metric, const BoundaryPoint& xi, double threshold) {
  if (threshold <= kLenTol) return Word();
  std::vector<Letter> stem;
  double len = 0;
  std::size_t i = 0;
  while (len < threshold - kLenTol) {
    Letter l = xi.letter_at(i++);
    stem.push_back(l);
    len += metric.letter_length(l);
  }
  return Word(std::move(stem));
}

}  // namespace

Shadow shadow(const Metric& metric, const Word& g, double rho) {
  if (rho < 0) throw std::invalid_argument("shadow: rho must be nonnegative");
  BoundaryPoint ghat = hat(metric.alphabet(), g);
  return Shadow{g, threshold_prefix(metric, ghat, metric.word_length(g) - rho)};
}

bool shadow_contains(const Shadow& sh, const BoundaryPoint& xi) {
  return common_prefix_letters(sh.stem, xi) == sh.stem.size();
}

Word boundary_ball_stem(const Metric& metric, const BoundaryPoint& xi, double rho) {
  if (rho < 0) throw std::invalid_argument("boundary_ball_stem: rho must be nonnegative");
  return threshold_prefix(metric, xi, rho);
}

Annulus annulus(const Metric& metric, double R, double half_width, std::uint64_t cap) {
  if (R < 0 || half_width < 0) throw std::invalid_argument("annulus: R, r must be nonnegative");
  int max_letters = static_cast<int>(std::floor((R + half_width) / metric.min_letter_length() + kLenTol));
  Annulus a{R, half_width, {}};
  for (const Word& g : ball(metric.alphabet(), max_letters, cap)) {
    double len = metric.word_length(g);
    if (len >= R - half_width - kLenTol && len <= R + half_width + kLenTol)
      a.members.push_back(g);
  }
  return a;  // ball() enumerates in length-then-lex order already
}

CoverReport shadows_cover(const Metric& metric, double R, const ShadowParams& params,
                          std::uint64_t cap) {
  if (params.rho_shadow < 0) throw std::invalid_argument("shadows_cover: rho must be >= 0");
  Annulus ann = annulus(metric, R, params.half_width, cap);
  std::unordered_set<std::uint64_t> stems;
  std::size_t max_depth = 0;
  bool whole = false;
  for (const Word& g : ann.members) {
    Shadow sh = shadow(metric, g, params.rho_shadow);
    if (sh.stem.empty()) whole = true;
    stems.insert(encode(sh.stem));
    max_depth = std::max(max_depth, sh.stem.size());
  }
  CoverReport report;
  report.shadow_count = ann.members.size();
  report.grid_depth = static_cast<int>(max_depth) + 1;
  if (whole) {
    report.covered = true;
    return report;
  }
  for (const Word& w : sphere(metric.alphabet(), report.grid_depth, cap)) {
    ++report.cells_checked;
    bool hit = false;
    Word prefix;
    for (std::size_t i = 0; i < w.size() && !hit; ++i) {
      prefix.letters.push_back(w[i]);
      hit = stems.count(encode(prefix)) > 0;
    }
    if (!hit && report.uncovered.size() < kMaxWitnesses) report.uncovered.push_back(w);
  }
  report.covered = report.uncovered.empty();
  return report;
}

std::vector<Word> cone_members(const Metric& metric, const BoundaryPoint& xi, double rho, double R,
                               const ShadowParams& params, std::uint64_t cap) {
  Word ball_stem = boundary_ball_stem(metric, xi, rho);
  std::vector<Word> out;
  for (const Word& g : annulus(metric, R, params.half_width, cap).members) {
    Shadow sh = shadow(metric, g, params.rho_shadow);
    // cylinders intersect iff nested: one stem is a prefix of the other
    std::size_t c = common_prefix_letters(sh.stem, ball_stem);
    if (c == sh.stem.size() || c == ball_stem.size()) out.push_back(g);
  }
  return out;
}

std::vector<ConeGrowthRow> cone_growth_report(const Metric& metric,
                                              const std::vector<BoundaryPoint>& samples,
                                              const std::vector<double>& rho_list,
                                              const std::vector<double>& R_list,
                                              const ShadowParams& params, std::uint64_t cap) {
  std::vector<ConeGrowthRow> rows;
  for (double rho : rho_list)
    for (double R : R_list)
      for (const BoundaryPoint& xi : samples) {
        ConeGrowthRow row;
        row.rho = rho;
        row.R = R;
        row.xi = to_string(metric.alphabet(), xi);
        row.count = cone_members(metric, xi, rho, R, params, cap).size();
        row.ratio = static_cast<double>(row.count) *
                    std::pow(metric.growth().omega, rho - R);
        rows.push_back(row);
      }
  return rows;
}

CancellationWitness prevent_cancellation(const Metric& metric, const Word& g0, const Word& h) {
  double tau = 2 * metric.max_letter_length();
  const Alphabet& alph = metric.alphabet();
  // candidates within letter distance 2 of g0: g0 * w, |w| <= 2
  CancellationWitness best;
  bool found = false;
  double best_len = -1;
  for (const Word& w : ball(alph, 2)) {
    Word g = multiply(g0, w);
    double lg = metric.word_length(g);
    double lgh = metric.word_length(multiply(g, h));
    if (lgh + kLenTol >= lg + metric.word_length(h) - 2 * tau && lgh > best_len) {
      best.g = g;
      best.tau_used = (lg + metric.word_length(h) - lgh) / 2;
      best_len = lgh;
      found = true;
    }
  }
  if (!found) throw std::logic_error("prevent_cancellation: no witness in radius-2 ball");
  return best;
}

DoubleShadow double_shadow(const Metric& metric, const Word& g, double rho) {
  if (rho < 0) throw std::invalid_argument("double_shadow: rho must be nonnegative");
  double threshold = metric.word_length(g) / 2 - rho;
  const Alphabet& alph = metric.alphabet();
  return DoubleShadow{g, threshold_prefix(metric, hat(alph, g), threshold),
                      threshold_prefix(metric, hat(alph, inverse_word(g)), threshold)};
}

namespace {

struct PairGrid {
  int depth;
  CylinderBasis basis;
  std::vector<DoubleShadow> shadows;
  Annulus ann;
};

PairGrid double_shadow_grid(const Metric& metric, double R, const ShadowParams& params,
                            std::uint64_t cap) {
  Annulus ann = annulus(metric, R, params.half_width, cap);
  std::vector<DoubleShadow> shadows;
  shadows.reserve(ann.members.size());
  std::size_t max_depth = 0;
  for (const Word& g : ann.members) {
    shadows.push_back(double_shadow(metric, g, params.rho_double));
    max_depth = std::max({max_depth, shadows.back().stem_hat.size(),
                          shadows.back().stem_check.size()});
  }
  int depth = static_cast<int>(max_depth) + 1;
  return PairGrid{depth, CylinderBasis(metric.alphabet(), depth), std::move(shadows),
                  std::move(ann)};
}

}  // namespace

PairCoverReport double_shadows_cover(const Metric& metric, double R, const ShadowParams& params,
                                     std::uint64_t cap) {
  PairGrid grid = double_shadow_grid(metric, R, params, cap);
  std::size_t n = grid.basis.size();
  if (n * n > cap) throw EnumerationCapError("double_shadows_cover: grid too large");
  std::vector<bool> covered(n * n, false);
  for (const DoubleShadow& ds : grid.shadows) {
    auto [a0, a1] = grid.basis.descendant_range(ds.stem_hat);
    auto [b0, b1] = grid.basis.descendant_range(ds.stem_check);
    for (std::size_t i = a0; i < a1; ++i)
      for (std::size_t j = b0; j < b1; ++j) covered[i * n + j] = true;
  }
  PairCoverReport report;
  report.grid_depth = grid.depth;
  report.shadow_count = grid.shadows.size();
  report.cells_checked = static_cast<std::uint64_t>(n) * n;
  for (std::size_t i = 0; i < n && report.uncovered.size() < kMaxWitnesses; ++i)
    for (std::size_t j = 0; j < n && report.uncovered.size() < kMaxWitnesses; ++j)
      if (!covered[i * n + j]) report.uncovered.emplace_back(grid.basis.word(i), grid.basis.word(j));
  report.covered = report.uncovered.empty();
  return report;
}

GreedyPartition greedy_partition(const Metric& metric, double R, const ShadowParams& params,
                                 std::uint64_t cap) {
  PairGrid grid = double_shadow_grid(metric, R, params, cap);
  std::size_t n = grid.basis.size();
  if (n * n > cap) throw EnumerationCapError("greedy_partition: grid too large");
  std::vector<bool> covered(n * n, false);
  std::uint64_t remaining = static_cast<std::uint64_t>(n) * n;

  GreedyPartition part;
  part.grid_depth = grid.depth;
  part.side = n;
  // longest elements first: their shadows are the finest, so the coarse (or
  // empty-stem) shadows of short elements only mop up leftovers instead of
  // grabbing the whole grid
  std::vector<std::size_t> order(grid.shadows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return metric.word_length(grid.ann.members[a]) > metric.word_length(grid.ann.members[b]);
  });
  for (std::size_t gi : order) {
    const DoubleShadow& ds = grid.shadows[gi];
    auto [a0, a1] = grid.basis.descendant_range(ds.stem_hat);
    auto [b0, b1] = grid.basis.descendant_range(ds.stem_check);
    GridSet cell(grid.depth, n);
    for (std::size_t i = a0; i < a1; ++i)
      for (std::size_t j = b0; j < b1; ++j) {
        if (covered[i * n + j]) continue;
        covered[i * n + j] = true;
        cell.pairs.insert(GridSet::key(i, j));
      }
    if (!cell.pairs.empty()) {
      remaining -= cell.pairs.size();
      part.owners.push_back(grid.ann.members[gi]);
      part.cells.push_back(std::move(cell));
    }
    if (remaining == 0) break;
  }
  if (remaining != 0)
    throw CoverFailure("greedy_partition: double shadows do not cover at R = " +
                       std::to_string(R));
  return part;
}

}  // namespace hypb
