#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hypb/group.hpp"

namespace hypb {

enum class MetricVariant { standard, weighted, green };

/// A metric from the family D(F_k): the word metric, a weighted word metric
/// (symmetric positive letter lengths), or the Green metric of a symmetric
/// nearest-neighbor random walk.
struct MetricSpec {
  MetricVariant variant = MetricVariant::standard;
  int rank = 2;
  std::vector<double> gen_lengths;  // per generator, weighted only
  std::vector<double> gen_walk;     // per generator, green only (letter prob = value)

  static MetricSpec standard(int k);
  static MetricSpec weighted(int k, std::vector<double> lengths);
  static MetricSpec green(int k, std::vector<double> walk);
  static MetricSpec green_srw(int k);

  void validate() const;
  /// Canonical key used for cache files and reports, e.g. "weighted:k=2:1,2".
  std::string canonical() const;
  /// Parse "standard", "weighted:1,2", "green:srw", "green:0.375,0.125",
  /// optionally prefixed with "k=3:".
  static MetricSpec parse(const std::string& text);
};

/// First-passage data of a symmetric nearest-neighbor walk: F_s is the
/// probability that the walk started at 1 ever reaches s, and c_s the
/// probability that it converges to a boundary point beginning with s.
struct GreenSolve {
  std::vector<double> first_passage;  // per letter
  std::vector<double> convergence;    // per letter
  int iterations = 0;
};

/// Solved decay data: theta is the Bowen root (spectral radius of the
/// length-transfer matrix equals 1), omega = 1/theta, and eps is chosen so the
/// visual dimension D = -ln(theta)/eps exceeds 1 (default policy: D = 2).
struct GrowthData {
  double theta = 0;
  double omega = 0;
  double eps = 0;
  double dim = 0;
  std::vector<double> perron_right;  // per letter, positive
  std::vector<double> perron_left;   // per letter, positive
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// A fully solved metric: effective letter lengths (1 for standard,
/// -ln F_s for green) plus growth data.
class Metric {
 public:
  Metric(MetricSpec spec, std::vector<double> ell, std::optional<GreenSolve> green,
         GrowthData growth);

  const MetricSpec& spec() const { return spec_; }
  const Alphabet& alphabet() const { return alph_; }
  const std::vector<double>& letter_lengths() const { return ell_; }
  double letter_length(Letter s) const { return ell_[s]; }
  const std::optional<GreenSolve>& green() const { return green_; }
  const GrowthData& growth() const { return growth_; }
  double max_letter_length() const { return max_ell_; }
  double min_letter_length() const { return min_ell_; }
  bool is_standard() const { return spec_.variant == MetricVariant::standard; }

  double word_length(const Word& w) const;
  /// Weighted length of the first n letters of w.
  double prefix_length(const Word& w, std::size_t n) const;
  double prefix_length(const BoundaryPoint& xi, std::size_t n) const;

  double gromov_product(const Word& x, const Word& y) const;
  double gromov_product(const Word& x, const BoundaryPoint& y) const;
  /// Infinity (as double) when the points coincide.
  double gromov_product(const BoundaryPoint& x, const BoundaryPoint& y) const;

  /// Length of the cyclic core; equals lim |g^n|/n exactly on trees.
  double translation_length(const Word& g) const;

 private:
  MetricSpec spec_;
  Alphabet alph_;
  std::vector<double> ell_;
  std::optional<GreenSolve> green_;
  GrowthData growth_;
  double max_ell_, min_ell_;
};

/// Fixed-point solve for the first-passage probabilities (monotone iteration
/// from 0, converging to the minimal solution), plus the boundary-convergence
/// closed form. Identities hold to 1e-12.
GreenSolve green_weights(int k, const std::vector<double>& gen_walk, double tol = 1e-14,
                         int max_iter = 100000);

/// Spectral radius of M(theta), M[s][t] = theta^{ell_t} for t != s^{-1}, by
/// power iteration.
double transfer_spectral_radius(int k, const std::vector<double>& ell, double theta,
                                std::vector<double>* right = nullptr,
                                std::vector<double>* left = nullptr, double tol = 1e-13,
                                int max_iter = 20000);

/// Bisection on theta in (0,1) for spectral radius 1, then the eps policy
/// (eps_override <= 0 selects the default eps = -ln(theta)/2, giving D = 2).
GrowthData critical_exponent(int k, const std::vector<double>& ell, double eps_override = 0,
                             double tol = 1e-12, int max_iter = 10000);

Metric solve_metric(const MetricSpec& spec, double eps_override = 0);

/// Finitely supported walks always have exponential moments.
bool check_exp_moment(const std::vector<double>& gen_walk, double lambda);

constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace hypb
