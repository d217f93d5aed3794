#include "hypb/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hypb {

MetricSpec MetricSpec::standard(int k) {
  MetricSpec s;
  s.variant = MetricVariant::standard;
  s.rank = k;
  return s;
}

MetricSpec MetricSpec::weighted(int k, std::vector<double> lengths) {
  MetricSpec s;
  s.variant = MetricVariant::weighted;
  s.rank = k;
  s.gen_lengths = std::move(lengths);
  s.validate();
  return s;
}

MetricSpec MetricSpec::green(int k, std::vector<double> walk) {
  MetricSpec s;
  s.variant = MetricVariant::green;
  s.rank = k;
  s.gen_walk = std::move(walk);
  s.validate();
  return s;
}

MetricSpec MetricSpec::green_srw(int k) {
  return green(k, std::vector<double>(k, 1.0 / (2 * k)));
}

void MetricSpec::validate() const {
  if (rank < 2) throw std::invalid_argument("MetricSpec: rank must be >= 2");
  switch (variant) {
    case MetricVariant::standard:
      break;
    case MetricVariant::weighted:
      if (static_cast<int>(gen_lengths.size()) != rank)
        throw std::invalid_argument("MetricSpec: need one length per generator");
      for (double l : gen_lengths)
        if (!(l > 0)) throw std::invalid_argument("MetricSpec: letter lengths must be positive");
      break;
    case MetricVariant::green: {
      if (static_cast<int>(gen_walk.size()) != rank)
        throw std::invalid_argument("MetricSpec: need one walk probability per generator");
      double total = 0;
      for (double p : gen_walk) {
        if (!(p > 0)) throw std::invalid_argument("MetricSpec: walk probabilities must be positive");
        total += 2 * p;
      }
      if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("MetricSpec: walk probabilities must sum to 1 over letters");
      break;
    }
  }
}

std::string MetricSpec::canonical() const {
  std::ostringstream os;
  os.precision(17);
  os << "k=" << rank << ":";
  switch (variant) {
    case MetricVariant::standard:
      os << "standard";
      break;
    case MetricVariant::weighted:
      os << "weighted:";
      for (std::size_t i = 0; i < gen_lengths.size(); ++i) os << (i ? "," : "") << gen_lengths[i];
      break;
    case MetricVariant::green:
      os << "green:";
      for (std::size_t i = 0; i < gen_walk.size(); ++i) os << (i ? "," : "") << gen_walk[i];
      break;
  }
  return os.str();
}

MetricSpec MetricSpec::parse(const std::string& text) {
  std::string s = text;
  int k = 2;
  if (s.rfind("k=", 0) == 0) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("MetricSpec: bad spec " + text);
    k = std::stoi(s.substr(2, colon - 2));
    s = s.substr(colon + 1);
  }
  auto parse_list = [](const std::string& body) {
    std::vector<double> vals;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    return vals;
  };
  if (s == "standard") return standard(k);
  if (s.rfind("weighted:", 0) == 0) return weighted(k, parse_list(s.substr(9)));
  if (s == "green:srw") return green_srw(k);
  if (s.rfind("green:", 0) == 0) return green(k, parse_list(s.substr(6)));
  throw std::invalid_argument("MetricSpec: unknown spec " + text);
}

GreenSolve green_weights(int k, const std::vector<double>& gen_walk, double tol, int max_iter) {
  MetricSpec::green(k, gen_walk);  // validate
  int n = 2 * k;
  std::vector<double> nu(n);
  for (int i = 0; i < k; ++i) nu[2 * i] = nu[2 * i + 1] = gen_walk[i];

  GreenSolve out;
  out.first_passage.assign(n, 0.0);
  std::vector<double> next(n);
  int it = 0;
  for (; it < max_iter; ++it) {
    double delta = 0;
    for (int s = 0; s < n; ++s) {
      double blocked = 0;  // probability of first stepping elsewhere, then returning
      for (int t = 0; t < n; ++t)
        if (t != s) blocked += nu[t] * out.first_passage[Alphabet::inverse(static_cast<Letter>(t))];
      next[s] = nu[s] / (1.0 - blocked);
      delta = std::max(delta, std::abs(next[s] - out.first_passage[s]));
    }
    out.first_passage = next;
    if (delta < tol) break;
  }
  if (it == max_iter) throw SolverError("green_weights: fixed point did not converge");
  out.iterations = it + 1;

  out.convergence.resize(n);
  for (int s = 0; s < n; ++s) {
    double F = out.first_passage[s];
    double Fi = out.first_passage[Alphabet::inverse(static_cast<Letter>(s))];
    out.convergence[s] = (1.0 - Fi) / (1.0 - Fi * F);
  }
  return out;
}

double transfer_spectral_radius(int k, const std::vector<double>& ell, double theta,
                                std::vector<double>* right, std::vector<double>* left, double tol,
                                int max_iter) {
  int n = 2 * k;
  std::vector<double> w(n);
  for (int t = 0; t < n; ++t) w[t] = std::pow(theta, ell[t]);

  // M v: (Mv)_s = sum_{t != s^-1} theta^{ell_t} v_t. The matrix and its
  // transpose share this form with v reindexed, so one routine serves both.
  auto iterate = [&](std::vector<double>& v, bool transpose) {
    double lambda = 0;
    std::vector<double> nv(n);
    for (int it = 0; it < max_iter; ++it) {
      for (int s = 0; s < n; ++s) {
        double acc = 0;
        for (int t = 0; t < n; ++t) {
          if (t == (s ^ 1)) continue;
          acc += transpose ? w[s] * v[t] : w[t] * v[t];
        }
        nv[s] = acc;
      }
      double norm = 0;
      for (double x : nv) norm += x;
      for (int s = 0; s < n; ++s) nv[s] /= norm;
      double delta = 0;
      for (int s = 0; s < n; ++s) delta = std::max(delta, std::abs(nv[s] - v[s]));
      v = nv;
      lambda = norm;
      if (delta < tol) return lambda;
    }
    throw SolverError("transfer_spectral_radius: power iteration did not converge");
  };

  std::vector<double> v(n, 1.0 / n);
  double lambda = iterate(v, false);
  if (right) *right = v;
  if (left) {
    std::vector<double> u(n, 1.0 / n);
    iterate(u, true);
    *left = u;
  }
  return lambda;
}

GrowthData critical_exponent(int k, const std::vector<double>& ell, double eps_override,
                             double tol, int max_iter) {
  double lo = 0.0, hi = 1.0;
  // radius -> 0 as theta -> 0+, and >= 2k-1 > 1 at theta = 1: bracket is valid.
  int it = 0;
  while (hi - lo > tol && it++ < max_iter) {
    double mid = 0.5 * (lo + hi);
    if (transfer_spectral_radius(k, ell, mid) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  if (it >= max_iter) throw SolverError("critical_exponent: bisection did not converge");

  // secant polish to near machine precision
  double t0 = lo, t1 = hi;
  double r0 = transfer_spectral_radius(k, ell, t0) - 1.0;
  double r1 = transfer_spectral_radius(k, ell, t1) - 1.0;
  for (int i = 0; i < 8 && r1 != r0 && t1 != t0; ++i) {
    double t2 = t1 - r1 * (t1 - t0) / (r1 - r0);
    if (!(t2 > 0 && t2 < 1)) break;
    t0 = t1;
    r0 = r1;
    t1 = t2;
    r1 = transfer_spectral_radius(k, ell, t1) - 1.0;
  }

  GrowthData g;
  g.theta = t1;
  g.omega = 1.0 / g.theta;
  transfer_spectral_radius(k, ell, g.theta, &g.perron_right, &g.perron_left);
  g.eps = eps_override > 0 ? eps_override : -std::log(g.theta) / 2.0;
  g.dim = -std::log(g.theta) / g.eps;
  return g;
}

Metric::Metric(MetricSpec spec, std::vector<double> ell, std::optional<GreenSolve> green,
               GrowthData growth)
    : spec_(std::move(spec)),
      alph_(spec_.rank),
      ell_(std::move(ell)),
      green_(std::move(green)),
      growth_(std::move(growth)) {
  max_ell_ = *std::max_element(ell_.begin(), ell_.end());
  min_ell_ = *std::min_element(ell_.begin(), ell_.end());
}

double Metric::word_length(const Word& w) const {
  if (is_standard()) return static_cast<double>(w.size());
  double total = 0;
  for (Letter l : w.letters) total += ell_[l];
  return total;
}

double Metric::prefix_length(const Word& w, std::size_t n) const {
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) total += ell_[w[i]];
  return total;
}

double Metric::prefix_length(const BoundaryPoint& xi, std::size_t n) const {
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) total += ell_[xi.letter_at(i)];
  return total;
}

double Metric::gromov_product(const Word& x, const Word& y) const {
  return prefix_length(x, common_prefix_letters(x, y));
}

double Metric::gromov_product(const Word& x, const BoundaryPoint& y) const {
  return prefix_length(x, common_prefix_letters(x, y));
}

double Metric::gromov_product(const BoundaryPoint& x, const BoundaryPoint& y) const {
  auto cpl = common_prefix_letters(x, y);
  if (!cpl) return kInfinity;
  return prefix_length(x, *cpl);
}

double Metric::translation_length(const Word& g) const {
  return word_length(cyclic_reduce(g).core);
}

Metric solve_metric(const MetricSpec& spec, double eps_override) {
  spec.validate();
  int n = 2 * spec.rank;
  std::vector<double> ell(n, 1.0);
  std::optional<GreenSolve> green;
  switch (spec.variant) {
    case MetricVariant::standard:
      break;
    case MetricVariant::weighted:
      for (int i = 0; i < spec.rank; ++i) ell[2 * i] = ell[2 * i + 1] = spec.gen_lengths[i];
      break;
    case MetricVariant::green: {
      green = green_weights(spec.rank, spec.gen_walk);
      for (int s = 0; s < n; ++s) ell[s] = -std::log(green->first_passage[s]);
      break;
    }
  }
  GrowthData growth = critical_exponent(spec.rank, ell, eps_override);
  return Metric(spec, std::move(ell), std::move(green), std::move(growth));
}

bool check_exp_moment(const std::vector<double>& gen_walk, double lambda) {
  if (gen_walk.empty()) throw std::invalid_argument("check_exp_moment: empty walk");
  (void)lambda;  // finite support: the moment sum is a finite sum
  return true;
}

}  // namespace hypb
