#pragma once

#include <string>
#include <vector>

#include "hypb/measure.hpp"
#include "hypb/metric.hpp"

namespace hypb {

enum class Verdict { equivalent, inequivalent, inconclusive };

std::string to_string(Verdict v);

/// Outcome of a rough-similarity test between two metrics. The scale A is the
/// similarity constant in |g|_1 ~ A |g|_2; for growth-based tests it equals
/// log(omega_2)/log(omega_1).
struct SimilarityVerdict {
  Verdict verdict = Verdict::inconclusive;
  double scale = 0;                  // A
  std::vector<double> deviations;    // per radius (deviation test) or per sample
  std::string method;                // spectrum | deviation | holder
  std::string detail;
};

/// Marked length spectrum comparison: translation lengths of all cyclically
/// reduced cores up to max_core_letters. Ratio constancy (tol 1e-9) is exact
/// and decisive within this metric family, since every member is
/// letter-additive along geodesics.
SimilarityVerdict length_spectrum_test(const Metric& m1, const Metric& m2,
                                       int max_core_letters = 6);

/// dev(R) = max over the letter-ball of radius R of | |g|_1 - A |g|_2 | with
/// A = log(omega_2)/log(omega_1). Bounded deviation supports equivalence; a
/// positive growth slope (> 1e-3 per letter over the window) supports
/// inequivalence.
SimilarityVerdict deviation_test(const Metric& m1, const Metric& m2, int R_max = 10,
                                 std::uint64_t cap = kDefaultEnumerationCap);

struct HolderRow {
  std::string xi, eta;
  double gp1 = 0;  // (xi,eta) in metric 1
  double gp2 = 0;
  double deviation = 0;  // gp2*log(omega2) - gp1*log(omega1)
};

struct HolderReport {
  double max_abs_deviation = 0;
  std::vector<HolderRow> rows;
};

/// Checks boundedness of (xi,eta)_2 log(omega_2) - (xi,eta)_1 log(omega_1)
/// over boundary pairs (the logarithmic form of the visual-metric Holder
/// comparison d'(xi,eta) ~ d(xi,eta)^{D/D'}).
HolderReport holder_test(const Metric& m1, const Metric& m2,
                         const std::vector<std::pair<BoundaryPoint, BoundaryPoint>>& pairs);

/// Pairs with common prefix exactly n = 1..max_depth letters along a^inf and
/// (ab)^inf, the default battery for holder_test.
std::vector<std::pair<BoundaryPoint, BoundaryPoint>> default_holder_pairs(const Alphabet& alph,
                                                                          int max_depth = 12);

/// Cross-ratio [x,y,z,w] = d(x,z) d(y,w) / (d(x,w) d(y,z)) in the visual
/// metric d = e^{-eps (.,.)}. Throws on coincident points.
double cross_ratio(const Metric& metric, const BoundaryPoint& x, const BoundaryPoint& y,
                   const BoundaryPoint& z, const BoundaryPoint& w);

/// Combined verdict: the spectrum test decides, deviation and Holder tests
/// corroborate; for equivalent specs also records the intertwiner multiplier
/// (dmu_1/dmu_2)^{1/2} on the depth-1 cylinders.
struct EquivalenceReport {
  SimilarityVerdict spectrum;
  SimilarityVerdict deviation;
  HolderReport holder;
  Verdict verdict = Verdict::inconclusive;
  double scale = 0;
  std::vector<double> multiplier;  // per letter, equivalent case only
};

EquivalenceReport equivalence_verdict(const MetricSpec& spec1, const MetricSpec& spec2);

}  // namespace hypb
