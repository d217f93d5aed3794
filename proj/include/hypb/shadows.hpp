#pragma once

#include <cstdint>
#include <vector>

#include "hypb/group.hpp"
#include "hypb/measure.hpp"
#include "hypb/metric.hpp"

namespace hypb {

/// Shadow and annulus parameters. The defaults are the smallest round values
/// for which the cover checks pass on trees: annulus half-width r = max letter
/// length (so annuli contain a full sphere) and rho = max letter length for
/// both single and double shadows. Larger rho_double keeps the cover property
/// but coarsens the pair grid, which degrades the averaged operators at small R.
struct ShadowParams {
  double rho_shadow = 1;
  double rho_double = 1;
  double half_width = 1;

  static ShadowParams defaults(const Metric& metric) {
    double m = metric.max_letter_length();
    return ShadowParams{m, m, m};
  }
};

/// The shadow of g: the boundary ball around the radial extension g^ of radius
/// e^{-eps(|g|-rho)}, which on trees is the cylinder of the shortest prefix of
/// g^ of weighted length >= |g| - rho (empty stem = whole boundary).
struct Shadow {
  Word owner;
  Word stem;
};

Shadow shadow(const Metric& metric, const Word& g, double rho);
bool shadow_contains(const Shadow& sh, const BoundaryPoint& xi);

/// The ball B(xi, e^{-eps*rho}) as a cylinder stem.
Word boundary_ball_stem(const Metric& metric, const BoundaryPoint& xi, double rho);

struct Annulus {
  double R = 0;
  double half_width = 0;
  std::vector<Word> members;  // length-then-lex order
};

/// All g with R - r <= |g|_d <= R + r.
Annulus annulus(const Metric& metric, double R, double half_width,
                std::uint64_t cap = kDefaultEnumerationCap);

struct CoverReport {
  bool covered = false;
  int grid_depth = 0;
  std::uint64_t cells_checked = 0;
  std::size_t shadow_count = 0;
  std::vector<Word> uncovered;  // witnesses, truncated
};

/// Checks that the shadows of the annulus elements cover the boundary, cell by
/// cell at one depth past the deepest shadow stem.
CoverReport shadows_cover(const Metric& metric, double R, const ShadowParams& params,
                          std::uint64_t cap = kDefaultEnumerationCap);

/// The cone over B(xi, e^{-eps*rho}) intersected with the annulus A_R:
/// elements whose shadow meets the ball.
std::vector<Word> cone_members(const Metric& metric, const BoundaryPoint& xi, double rho, double R,
                               const ShadowParams& params,
                               std::uint64_t cap = kDefaultEnumerationCap);

struct ConeGrowthRow {
  double rho = 0;
  double R = 0;
  std::string xi;
  std::size_t count = 0;
  double ratio = 0;  // |C_R| * omega^{rho - R}
};

std::vector<ConeGrowthRow> cone_growth_report(const Metric& metric,
                                              const std::vector<BoundaryPoint>& samples,
                                              const std::vector<double>& rho_list,
                                              const std::vector<double>& R_list,
                                              const ShadowParams& params,
                                              std::uint64_t cap = kDefaultEnumerationCap);

struct CancellationWitness {
  Word g;
  double tau_used = 0;  // realized (|g| + |h| - |gh|) / 2
};

/// Finds g within letter distance 2 of g0 with |gh| >= |g| + |h| - 2*tau for
/// tau = 2 * max letter length. Existence is guaranteed on trees.
CancellationWitness prevent_cancellation(const Metric& metric, const Word& g0, const Word& h);

struct DoubleShadow {
  Word owner;
  Word stem_hat;    // factor around g^
  Word stem_check;  // factor around (g^-1)^
};

DoubleShadow double_shadow(const Metric& metric, const Word& g, double rho);

struct PairCoverReport {
  bool covered = false;
  int grid_depth = 0;
  std::uint64_t cells_checked = 0;
  std::size_t shadow_count = 0;
  std::vector<std::pair<Word, Word>> uncovered;  // witnesses, truncated
};

PairCoverReport double_shadows_cover(const Metric& metric, double R, const ShadowParams& params,
                                     std::uint64_t cap = kDefaultEnumerationCap);

struct GreedyPartition {
  int grid_depth = 0;
  std::size_t side = 0;
  std::vector<Word> owners;     // g_i with nonempty cell, annulus order
  std::vector<GridSet> cells;   // V_i = Sigma_2(g_i) minus earlier shadows
};

/// The greedy partition V_i of the boundary square by double shadows, in
/// length-then-lex annulus order. Requires the double shadows to cover.
GreedyPartition greedy_partition(const Metric& metric, double R, const ShadowParams& params,
                                 std::uint64_t cap = kDefaultEnumerationCap);

struct CoverFailure : std::runtime_error {
  explicit CoverFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypb
