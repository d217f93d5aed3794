#include "hypb/measure.hpp"

#include <algorithm>
#include <cmath>

namespace hypb {

MarkovMeasure<double> ps_measure(const Metric& metric) {
  const Alphabet& alph = metric.alphabet();
  int n = alph.size();
  MarkovMeasure<double> mu{metric, std::vector<double>(n, 0.0),
                           std::vector<double>(n * n, 0.0), metric.growth().omega};
  switch (metric.spec().variant) {
    case MetricVariant::standard: {
      for (int s = 0; s < n; ++s) {
        mu.initial[s] = 1.0 / n;
        for (int t = 0; t < n; ++t)
          if (t != (s ^ 1)) mu.trans[s * n + t] = 1.0 / (n - 1);
      }
      break;
    }
    case MetricVariant::weighted: {
      const GrowthData& g = metric.growth();
      const std::vector<double>& v = g.perron_right;
      double z = 0;
      for (int t = 0; t < n; ++t) z += std::pow(g.theta, metric.letter_length(static_cast<Letter>(t))) * v[t];
      for (int s = 0; s < n; ++s) {
        double ws = std::pow(g.theta, metric.letter_length(static_cast<Letter>(s)));
        mu.initial[s] = ws * v[s] / z;
        for (int t = 0; t < n; ++t) {
          if (t == (s ^ 1)) continue;
          double wt = std::pow(g.theta, metric.letter_length(static_cast<Letter>(t)));
          mu.trans[s * n + t] = wt * v[t] / v[s];
        }
      }
      break;
    }
    case MetricVariant::green: {
      const GreenSolve& gs = *metric.green();
      for (int s = 0; s < n; ++s) {
        mu.initial[s] = gs.first_passage[s] * gs.convergence[s];
        for (int t = 0; t < n; ++t)
          if (t != (s ^ 1))
            mu.trans[s * n + t] = gs.first_passage[t] * gs.convergence[t] / gs.convergence[s];
      }
      break;
    }
  }
  return mu;
}

MarkovMeasure<QuadExt> exact_standard_measure(int k) {
  Metric metric = solve_metric(MetricSpec::standard(k));
  int n = 2 * k;
  int rad = n - 1;  // omega = 2k-1; P^{1/2} values live in Q(sqrt(2k-1))
  MarkovMeasure<QuadExt> mu{metric, std::vector<QuadExt>(n), std::vector<QuadExt>(n * n),
                            QuadExt(Rational(rad), Rational(0), rad)};
  for (int s = 0; s < n; ++s) {
    mu.initial[s] = QuadExt(Rational(1, n), Rational(0), rad);
    for (int t = 0; t < n; ++t)
      if (t != (s ^ 1)) mu.trans[s * n + t] = QuadExt(Rational(1, n - 1), Rational(0), rad);
  }
  return mu;
}

bool rn_constant_on(const Word& g, const Word& w) {
  if (w.empty()) return g.empty();
  if (g.empty()) return true;
  Word u = multiply(inverse_word(g), w);
  return !u.empty() && u.back() == w.back();
}

double formula_rn(const Metric& metric, const Word& g, const BoundaryPoint& xi) {
  double gp = metric.gromov_product(g, xi);
  return std::exp(std::log(metric.growth().omega) * (2.0 * gp - metric.word_length(g)));
}

double formula_rn(const Metric& metric, const Word& g, const Word& cylinder_stem) {
  std::size_t c = common_prefix_letters(g, cylinder_stem);
  if (c == cylinder_stem.size() && cylinder_stem.size() < g.size())
    throw DepthError("formula_rn: Gromov product not constant on cylinder; refine");
  double gp = metric.prefix_length(g, c);
  return std::exp(std::log(metric.growth().omega) * (2.0 * gp - metric.word_length(g)));
}

std::vector<Word> translate_cylinder(const Alphabet& alph, const Word& g, const Word& u) {
  if (u.empty()) return {Word()};  // g maps the full boundary onto itself
  std::size_t c = cancellation(g, u);
  if (c < u.size()) return {multiply(g, u)};
  // u cancels entirely into g: split [u] along its continuations.
  std::vector<Word> out;
  for (int t = 0; t < alph.size(); ++t) {
    if (static_cast<Letter>(t) == Alphabet::inverse(u.back())) continue;
    Word child = u;
    child.letters.push_back(static_cast<Letter>(t));
    auto sub = translate_cylinder(alph, g, child);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<AlmostInvarianceRow> almost_invariance_report(const MarkovMeasure<double>& mu,
                                                          int max_g_letters, int depth) {
  if (depth <= max_g_letters)
    throw std::invalid_argument("almost_invariance_report: need depth > max |g|");
  const Alphabet& alph = mu.alphabet();
  const Metric& metric = mu.metric;
  CylinderBasis basis(alph, depth);
  std::size_t n = basis.size();
  double log_omega = std::log(metric.growth().omega);

  std::vector<Word> words(n);
  std::vector<double> log_mass(n);
  // weighted prefix sums per cylinder: psum[i*(depth+1) + j]
  std::vector<double> psum(n * (depth + 1), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    words[i] = basis.word(i);
    log_mass[i] = std::log(mu.cylinder_mass(words[i]));
    for (int j = 0; j < depth; ++j)
      psum[i * (depth + 1) + j + 1] =
          psum[i * (depth + 1) + j] + metric.letter_length(words[i][j]);
  }
  std::vector<std::uint8_t> cpl(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto c = static_cast<std::uint8_t>(common_prefix_letters(words[i], words[j]));
      cpl[i * n + j] = c;
      cpl[j * n + i] = c;
    }

  std::vector<AlmostInvarianceRow> rows;
  int max_img = depth + max_g_letters;
  std::vector<int> cu(n);
  std::vector<double> lf(n);
  std::vector<double> gpsum(n * (max_img + 1));
  for (int L = 1; L <= max_g_letters; ++L) {
    AlmostInvarianceRow row;
    row.g_letter_length = L;
    for (const Word& g : sphere(alph, L)) {
      for (std::size_t i = 0; i < n; ++i) {
        Word gu = multiply(g, words[i]);
        cu[i] = static_cast<int>(g.size() + depth - gu.size()) / 2;
        double lm = std::log(mu.cylinder_mass(gu));
        lf[i] = lm - log_mass[i];
        double* ps = &gpsum[i * (max_img + 1)];
        ps[0] = 0;
        for (std::size_t j = 0; j < gu.size(); ++j) ps[j + 1] = ps[j] + metric.letter_length(gu[j]);
      }
      // log nu(g.rect)/nu(rect) over separated rectangles; the image rectangle
      // [gu] x [gv] is itself separated because depth > |g| forbids full
      // cancellation, so nu of the image is a single closed-form term.
      for (std::size_t i = 0; i < n; ++i) {
        const double* psi = &gpsum[i * (max_img + 1)];
        for (std::size_t j = i + 1; j < n; ++j) {
          int p = cpl[i * n + j];
          int img_cpl = static_cast<int>(g.size()) - cu[i] - cu[j] + p;
          double wimg = psi[img_cpl];
          double wuv = psum[i * (depth + 1) + p];
          double lr = 2.0 * log_omega * (wimg - wuv) + lf[i] + lf[j];
          row.max_abs_log_ratio = std::max(row.max_abs_log_ratio, std::abs(lr));
          ++row.pairs_checked;
        }
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hypb
