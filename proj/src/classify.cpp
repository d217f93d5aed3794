#include "hypb/classify.hpp"

#include <algorithm>
#include <cmath>

namespace hypb {

namespace {
constexpr double kSpectrumTol = 1e-9;
constexpr double kSlopeTol = 1e-3;
}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::inequivalent: return "inequivalent";
    default: return "inconclusive";
  }
}

SimilarityVerdict length_spectrum_test(const Metric& m1, const Metric& m2,
                                       int max_core_letters) {
  const Alphabet& alph = m1.alphabet();
  SimilarityVerdict out;
  out.method = "spectrum";
  bool have_ratio = false;
  double ratio = 0;
  double max_dev = 0;
  std::size_t cores = 0;
  for (const Word& g : ball(alph, max_core_letters)) {
    if (g.empty() || !is_cyclically_reduced(g)) continue;
    ++cores;
    double l1 = m1.translation_length(g);
    double l2 = m2.translation_length(g);
    double r = l1 / l2;
    if (!have_ratio) {
      ratio = r;
      have_ratio = true;
    }
    max_dev = std::max(max_dev, std::abs(r - ratio));
    out.deviations.push_back(r);
  }
  if (cores == 0) throw std::invalid_argument("length_spectrum_test: degenerate sample");
  out.scale = ratio;
  out.verdict = max_dev <= kSpectrumTol ? Verdict::equivalent : Verdict::inequivalent;
  out.detail = "cores=" + std::to_string(cores) +
               " max_ratio_spread=" + std::to_string(max_dev);
  return out;
}

SimilarityVerdict deviation_test(const Metric& m1, const Metric& m2, int R_max,
                                 std::uint64_t cap) {
  const Alphabet& alph = m1.alphabet();
  double A = std::log(m2.growth().omega) / std::log(m1.growth().omega);
  SimilarityVerdict out;
  out.method = "deviation";
  out.scale = A;
  out.deviations.assign(R_max + 1, 0.0);
  for (const Word& g : ball(alph, R_max, cap)) {
    double dev = std::abs(m1.word_length(g) - A * m2.word_length(g));
    std::size_t R = g.size();
    out.deviations[R] = std::max(out.deviations[R], dev);
  }
  for (int R = 1; R <= R_max; ++R)
    out.deviations[R] = std::max(out.deviations[R], out.deviations[R - 1]);
  double slope = R_max >= 2
                     ? (out.deviations[R_max] - out.deviations[R_max / 2]) /
                           (R_max - R_max / 2)
                     : 0;
  if (slope > kSlopeTol)
    out.verdict = Verdict::inequivalent;
  else if (out.deviations[R_max] <= kSpectrumTol || slope <= kSlopeTol / 10)
    out.verdict = Verdict::equivalent;
  else
    out.verdict = Verdict::inconclusive;
  out.detail = "slope=" + std::to_string(slope);
  return out;
}

HolderReport holder_test(const Metric& m1, const Metric& m2,
                         const std::vector<std::pair<BoundaryPoint, BoundaryPoint>>& pairs) {
  const Alphabet& alph = m1.alphabet();
  double lw1 = std::log(m1.growth().omega), lw2 = std::log(m2.growth().omega);
  HolderReport report;
  for (const auto& [xi, eta] : pairs) {
    HolderRow row;
    row.xi = to_string(alph, xi);
    row.eta = to_string(alph, eta);
    row.gp1 = m1.gromov_product(xi, eta);
    row.gp2 = m2.gromov_product(xi, eta);
    row.deviation = row.gp2 * lw2 - row.gp1 * lw1;
    report.max_abs_deviation = std::max(report.max_abs_deviation, std::abs(row.deviation));
    report.rows.push_back(row);
  }
  return report;
}

std::vector<std::pair<BoundaryPoint, BoundaryPoint>> default_holder_pairs(const Alphabet& alph,
                                                                          int max_depth) {
  std::vector<BoundaryPoint> bases = {
      BoundaryPoint(Word(), parse_word(alph, "a")),
      BoundaryPoint(Word(), parse_word(alph, "ab")),
  };
  std::vector<std::pair<BoundaryPoint, BoundaryPoint>> pairs;
  for (const BoundaryPoint& base : bases)
    for (int n = 1; n <= max_depth; ++n) {
      Word pre = base.prefix(n);
      Letter next = base.letter_at(n);
      Letter dev = 0;
      while (dev == next || dev == Alphabet::inverse(pre.back())) ++dev;
      Word period(std::vector<Letter>{dev});
      pairs.emplace_back(base, BoundaryPoint(pre, period));
    }
  return pairs;
}

double cross_ratio(const Metric& metric, const BoundaryPoint& x, const BoundaryPoint& y,
                   const BoundaryPoint& z, const BoundaryPoint& w) {
  double eps = metric.growth().eps;
  double xz = metric.gromov_product(x, z), yw = metric.gromov_product(y, w);
  double xw = metric.gromov_product(x, w), yz = metric.gromov_product(y, z);
  if (std::isinf(xz) || std::isinf(yw) || std::isinf(xw) || std::isinf(yz))
    throw std::invalid_argument("cross_ratio: coincident points");
  return std::exp(-eps * (xz + yw - xw - yz));
}

EquivalenceReport equivalence_verdict(const MetricSpec& spec1, const MetricSpec& spec2) {
  Metric m1 = solve_metric(spec1);
  Metric m2 = solve_metric(spec2);
  EquivalenceReport report;
  report.spectrum = length_spectrum_test(m1, m2);
  report.deviation = deviation_test(m1, m2);
  report.holder = holder_test(m1, m2, default_holder_pairs(m1.alphabet()));
  report.verdict = report.spectrum.verdict;
  report.scale = report.spectrum.verdict == Verdict::equivalent ? report.spectrum.scale
                                                                : report.deviation.scale;
  if (report.verdict == Verdict::equivalent) {
    MarkovMeasure<double> mu1 = ps_measure(m1);
    MarkovMeasure<double> mu2 = ps_measure(m2);
    for (int s = 0; s < m1.alphabet().size(); ++s)
      report.multiplier.push_back(std::sqrt(mu1.initial[s] / mu2.initial[s]));
  }
  return report;
}

}  // namespace hypb
