#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "hypb/basis.hpp"
#include "hypb/group.hpp"
#include "hypb/metric.hpp"
#include "hypb/quadext.hpp"

namespace hypb {

struct DepthError : std::runtime_error {
  explicit DepthError(const std::string& what) : std::runtime_error(what) {}
};
struct NotSeparatedError : std::runtime_error {
  explicit NotSeparatedError(const std::string& what) : std::runtime_error(what) {}
};

/// A Markov measure on dF_k: an initial letter distribution and a letter
/// transition matrix vanishing on inverse pairs. Assigns exact mass to every
/// cylinder [w] (the set of boundary points extending the stem w); the empty
/// stem is the full boundary, of mass 1. The scalar T is double, or QuadExt
/// for the exact Standard-metric instance.
template <class T>
struct MarkovMeasure {
  Metric metric;
  std::vector<T> initial;  // size 2k
  std::vector<T> trans;    // row-major (2k)x(2k), trans[s][s^-1] = 0
  T omega;                 // growth base omega as a T scalar

  const Alphabet& alphabet() const { return metric.alphabet(); }
  int letters() const { return metric.alphabet().size(); }
  const T& transition(Letter s, Letter t) const { return trans[s * letters() + t]; }

  T cylinder_mass(const Word& w) const {
    T mass(1);
    if (w.empty()) return mass;
    mass = initial[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) mass *= transition(w[i - 1], w[i]);
    return mass;
  }

  /// omega^e for integer e; the only power the exact path needs.
  T omega_int_pow(long e) const {
    T acc(1);
    T base = e >= 0 ? omega : T(1) / omega;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) acc *= base;
    return acc;
  }
};

/// The Patterson-Sullivan-type measure of a solved metric: uniform for
/// standard, the Perron eigenvector construction for weighted, the harmonic
/// measure for green.
MarkovMeasure<double> ps_measure(const Metric& metric);

/// The standard-metric measure over Q(sqrt(2k-1)), for exact arithmetic.
MarkovMeasure<QuadExt> exact_standard_measure(int k);

/// True when the Radon-Nikodym derivative of g_*mu is constant on [w]; holds
/// in particular whenever |w| >= |g| + 1 in letters.
bool rn_constant_on(const Word& g, const Word& w);

/// Exact mu(g^-1 [w]) / mu([w]); requires rn_constant_on(g, w).
template <class T>
T rn_derivative(const MarkovMeasure<T>& mu, const Word& g, const Word& w) {
  if (g.empty()) return T(1);
  if (!rn_constant_on(g, w))
    throw DepthError("rn_derivative: cylinder too shallow for |g| = " + std::to_string(g.size()));
  return mu.cylinder_mass(multiply(inverse_word(g), w)) / mu.cylinder_mass(w);
}

/// The quasi-conformality estimate omega^{2(g,xi) - |g|}, a diagnostic to
/// compare against the exact derivative.
double formula_rn(const Metric& metric, const Word& g, const BoundaryPoint& xi);
double formula_rn(const Metric& metric, const Word& g, const Word& cylinder_stem);

/// Cylinders are nested or disjoint; [u], [v] are "separated" when disjoint.
inline bool separated(const Word& u, const Word& v) {
  return common_prefix_letters(u, v) < std::min(u.size(), v.size());
}

/// Mass of the rectangle [u] x [v] under nu = d_eps(xi,eta)^{-2D} dmu^2:
/// omega^{2(u,v)} mu([u]) mu([v]). The Gromov product (xi,eta) is constant on
/// separated rectangles; non-separated pairs are rejected.
template <class T>
T nu_square_mass(const MarkovMeasure<T>& mu, const Word& u, const Word& v) {
  std::size_t c = common_prefix_letters(u, v);
  if (c >= std::min(u.size(), v.size()))
    throw NotSeparatedError("nu_square_mass: rectangle factors are nested; refine first");
  T scale;
  if constexpr (std::is_same_v<T, QuadExt>) {
    // standard metric: the Gromov product is the integer prefix length
    scale = mu.omega_int_pow(2 * static_cast<long>(c));
  } else {
    scale = std::pow(mu.metric.growth().omega, 2.0 * mu.metric.prefix_length(u, c));
  }
  return scale * mu.cylinder_mass(u) * mu.cylinder_mass(v);
}

/// Decomposition of the translate g[u] into finitely many disjoint cylinders.
std::vector<Word> translate_cylinder(const Alphabet& alph, const Word& g, const Word& u);

/// Exact integral of sqrt(P_g) over the cylinder [z], by descending the tree
/// until the derivative is constant.
template <class T>
T sqrt_rn_integral(const MarkovMeasure<T>& mu, const Word& g, const Word& z) {
  if (g.empty()) return mu.cylinder_mass(z);
  if (rn_constant_on(g, z)) return sqrt_scalar(rn_derivative(mu, g, z)) * mu.cylinder_mass(z);
  T total(0);
  const Alphabet& alph = mu.alphabet();
  for (int t = 0; t < alph.size(); ++t) {
    if (!z.empty() && static_cast<Letter>(t) == Alphabet::inverse(z.back())) continue;
    Word child = z;
    child.letters.push_back(static_cast<Letter>(t));
    total += sqrt_rn_integral(mu, g, child);
  }
  return total;
}

/// The maximal stems on which sqrt(P_g) is constant, with their values:
/// the level decomposition of the boundary along the geodesic of g.
template <class T>
std::vector<std::pair<Word, T>> sqrt_rn_levels(const MarkovMeasure<T>& mu, const Word& g) {
  std::vector<std::pair<Word, T>> out;
  const Alphabet& alph = mu.alphabet();
  auto dfs = [&](auto&& self, const Word& z) -> void {
    if (!z.empty() && rn_constant_on(g, z)) {
      out.emplace_back(z, sqrt_scalar(rn_derivative(mu, g, z)));
      return;
    }
    for (int t = 0; t < alph.size(); ++t) {
      if (!z.empty() && static_cast<Letter>(t) == Alphabet::inverse(z.back())) continue;
      Word child = z;
      child.letters.push_back(static_cast<Letter>(t));
      self(self, child);
    }
  };
  if (g.empty())
    out.emplace_back(Word(), T(1));
  else
    dfs(dfs, Word());
  return out;
}

/// A set of ordered cylinder pairs at a fixed common depth, the exact set
/// algebra underlying subsets of dGamma^2.
struct GridSet {
  int depth = 0;
  std::size_t side = 0;  // number of depth-m cylinders
  std::unordered_set<std::uint64_t> pairs;

  static std::uint64_t key(std::size_t i, std::size_t j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
  }
  static std::pair<std::size_t, std::size_t> unkey(std::uint64_t k) {
    return {static_cast<std::size_t>(k >> 32), static_cast<std::size_t>(k & 0xffffffffu)};
  }

  GridSet() = default;
  GridSet(int m, std::size_t n) : depth(m), side(n) {}

  void insert_rectangle(const CylinderBasis& basis, const Word& stem1, const Word& stem2) {
    auto [a0, a1] = basis.descendant_range(stem1);
    auto [b0, b1] = basis.descendant_range(stem2);
    for (std::size_t i = a0; i < a1; ++i)
      for (std::size_t j = b0; j < b1; ++j) pairs.insert(key(i, j));
  }
  GridSet set_minus(const GridSet& other) const {
    GridSet out(depth, side);
    for (auto k : pairs)
      if (!other.pairs.count(k)) out.pairs.insert(k);
    return out;
  }
  GridSet set_union(const GridSet& other) const {
    GridSet out = *this;
    out.pairs.insert(other.pairs.begin(), other.pairs.end());
    return out;
  }
  GridSet set_intersect(const GridSet& other) const {
    GridSet out(depth, side);
    for (auto k : pairs)
      if (other.pairs.count(k)) out.pairs.insert(k);
    return out;
  }
};

/// mu^2 mass of a grid set.
template <class T>
T mu2_mass(const MarkovMeasure<T>& mu, const GridSet& set) {
  CylinderBasis basis(mu.alphabet(), set.depth);
  std::vector<T> masses(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) masses[i] = mu.cylinder_mass(basis.word(i));
  T total(0);
  for (auto k : set.pairs) {
    auto [i, j] = GridSet::unkey(k);
    total += masses[i] * masses[j];
  }
  return total;
}

struct AlmostInvarianceRow {
  int g_letter_length = 0;
  double max_abs_log_ratio = 0;
  std::uint64_t pairs_checked = 0;
};

/// Sweep of |log nu(g.rect)/nu(rect)| over all g with 1 <= |g| <= max_g_letters
/// and all separated depth-m rectangles, grouped by |g|. Exact on trees:
/// nu(g.rect) is evaluated through the single-cylinder image identity, which
/// applies because m > max_g_letters forbids full cancellation.
std::vector<AlmostInvarianceRow> almost_invariance_report(const MarkovMeasure<double>& mu,
                                                          int max_g_letters, int depth);

}  // namespace hypb
