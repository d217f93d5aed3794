#include "hypb/representation.hpp"

#include <Eigen/Dense>

namespace hypb {

namespace {
constexpr double kRankCutoff = 1e-10;
}

std::vector<CyclicityRow> cyclicity_report(const MarkovMeasure<double>& mu, int max_span_radius,
                                           int target_depth) {
  const Alphabet& alph = mu.alphabet();
  int depth = std::max(max_span_radius + 1, target_depth);
  CylinderBasis basis(alph, depth);
  std::vector<double> masses = cylinder_masses(mu, depth);
  std::size_t dim = basis.size();

  // span vectors pi(g)1 for |g| <= M, embedded at the common depth
  std::vector<Word> gs = ball(alph, max_span_radius);
  Eigen::MatrixXd span(dim, gs.size());
  for (std::size_t c = 0; c < gs.size(); ++c) {
    StepFunction<double> f =
        embed(alph, apply_pi(mu, gs[c], constant_one<double>(alph)), depth);
    for (std::size_t r = 0; r < dim; ++r) span(r, c) = f.c[r];
  }

  CylinderBasis targets(alph, target_depth);
  std::size_t width = dim / targets.size();

  std::vector<CyclicityRow> rows;
  for (int M = 0; M <= max_span_radius; ++M) {
    std::size_t cols = 0;
    while (cols < gs.size() && static_cast<int>(gs[cols].size()) <= M) ++cols;
    Eigen::MatrixXd B = span.leftCols(cols);

    Eigen::MatrixXd G(cols, cols);
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = i; j < cols; ++j) {
        double x = 0;
        for (std::size_t r = 0; r < dim; ++r) x += B(r, i) * B(r, j) * masses[r];
        G(i, j) = G(j, i) = x;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = es.eigenvalues().unaryExpr([&](double v) {
      return v > kRankCutoff * scale ? 1.0 / v : 0.0;
    });
    int rank = static_cast<int>((inv.array() > 0).count());

    CyclicityRow row;
    row.span_radius = M;
    row.effective_rank = rank;
    double sum = 0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      // b_i = <chi_[w], pi(g_i)1>
      Eigen::VectorXd b(cols);
      double target_norm2 = 0;
      for (std::size_t i = 0; i < cols; ++i) {
        double x = 0;
        for (std::size_t r = t * width; r < (t + 1) * width; ++r) x += B(r, i) * masses[r];
        b(i) = x;
      }
      for (std::size_t r = t * width; r < (t + 1) * width; ++r) target_norm2 += masses[r];
      Eigen::VectorXd y = es.eigenvectors().transpose() * b;
      double explained = (inv.array() * y.array().square()).sum();
      double rel = std::sqrt(std::max(0.0, target_norm2 - explained) / target_norm2);
      row.max_residual = std::max(row.max_residual, rel);
      sum += rel;
    }
    row.mean_residual = sum / static_cast<double>(targets.size());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hypb
