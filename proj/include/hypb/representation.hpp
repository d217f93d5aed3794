#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypb/basis.hpp"
#include "hypb/measure.hpp"
#include "hypb/shadows.hpp"

namespace hypb {

/// A piecewise-constant function on depth-N cylinders. Functions of smaller
/// depth embed by copying coefficients to descendants, which preserves the
/// L^2(mu) pairing.
template <class T>
struct StepFunction {
  int depth = 0;
  std::vector<T> c;
};

template <class T>
StepFunction<T> constant_one(const Alphabet&) {
  return StepFunction<T>{0, {T(1)}};
}

template <class T>
StepFunction<T> indicator(const Alphabet& alph, const Word& w) {
  CylinderBasis basis(alph, static_cast<int>(w.size()));
  StepFunction<T> f{basis.depth(), std::vector<T>(basis.size(), T(0))};
  f.c[basis.index(w)] = T(1);
  return f;
}

/// Masses of all depth-N cylinders, by one pass down the tree.
template <class T>
std::vector<T> cylinder_masses(const MarkovMeasure<T>& mu, int depth) {
  CylinderBasis basis(mu.alphabet(), depth);
  std::vector<T> masses(basis.size(), T(1));
  if (depth == 0) return masses;
  int n = mu.letters();
  std::vector<T> level(n);
  for (int s = 0; s < n; ++s) level[s] = mu.initial[s];
  std::vector<Letter> last(n);
  for (int s = 0; s < n; ++s) last[s] = static_cast<Letter>(s);
  for (int d = 1; d < depth; ++d) {
    std::vector<T> next(level.size() * (n - 1));
    std::vector<Letter> next_last(next.size());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < level.size(); ++i)
      for (int r = 0; r < n - 1; ++r, ++idx) {
        Letter t = CylinderBasis::continuation_letter(last[i], r);
        next[idx] = level[i] * mu.transition(last[i], t);
        next_last[idx] = t;
      }
    level = std::move(next);
    last = std::move(next_last);
  }
  return level;
}

template <class T>
StepFunction<T> embed(const Alphabet& alph, const StepFunction<T>& f, int depth) {
  if (depth < f.depth) throw DepthError("embed: cannot coarsen a step function");
  if (depth == f.depth) return f;
  CylinderBasis out_basis(alph, depth);
  StepFunction<T> out{depth, std::vector<T>(out_basis.size())};
  std::size_t width = out_basis.size() / std::max<std::size_t>(f.c.size(), 1);
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = f.c[i / width];
  return out;
}

/// L^2(mu) pairing; the conjugation slot is the second argument (identity on
/// real scalars).
template <class T>
T inner_product(const MarkovMeasure<T>& mu, const StepFunction<T>& f, const StepFunction<T>& g) {
  int depth = std::max(f.depth, g.depth);
  StepFunction<T> fe = embed(mu.alphabet(), f, depth);
  StepFunction<T> ge = embed(mu.alphabet(), g, depth);
  std::vector<T> masses = cylinder_masses(mu, depth);
  T total(0);
  for (std::size_t i = 0; i < fe.c.size(); ++i) total += fe.c[i] * ge.c[i] * masses[i];
  return total;
}

namespace detail {

/// Depth-first walk of the output tree of pi(g): w runs over output cylinders
/// in basis order while u = reduce(g^-1 w) and the masses of u and w are kept
/// incrementally. Subtrees where f vanishes on [u] are skipped whole. The
/// seam flag tracks whether w is still cancelling into g^-1 (only then can u
/// shrink, so the f-value of a subtree is frozen once the seam has passed and
/// u reaches the input depth).
template <class T>
struct PiWalker {
  const MarkovMeasure<T>* mu;
  const StepFunction<T>* fe;
  const CylinderBasis* in_basis;
  StepFunction<T>* out;
  int out_depth, fe_depth, n;
  std::vector<Letter> u;
  std::vector<T> u_mass;  // u_mass[i] = mass of the length-i prefix of u
  std::vector<std::uint64_t> subtree;  // leaves below a node with d letters placed
  std::size_t leaf = 0;
  bool seam = false;
  T zero = T(0);
  // uniform measures (the standard one): every derivative is a power of
  // 2k - 1, so leaves read sqrt powers from a table instead of doing
  // mass arithmetic; sqrt_pow[m + offset] = (2k-1)^{m/2}
  bool uniform = false;
  int offset = 0;
  std::vector<T> sqrt_pow;

  void rec(int level, Letter last, const T& mass_w, const T* fv) {
    if (fv && *fv == zero) {
      leaf += subtree[level];
      return;
    }
    if (level == out_depth) {
      if (uniform) {
        out->c[leaf++] = sqrt_pow[out_depth - static_cast<int>(u.size()) + offset] * *fv;
      } else {
        T rn = u_mass[u.size()] / mass_w;
        out->c[leaf++] = sqrt_scalar(rn) * *fv;
      }
      return;
    }
    int branches = level == 0 ? n : n - 1;
    for (int r = 0; r < branches; ++r) {
      Letter t = level == 0 ? static_cast<Letter>(r) : CylinderBasis::continuation_letter(last, r);
      if (!seam && !u.empty() && t == Alphabet::inverse(u.back())) {
        Letter popped = u.back();
        u.pop_back();
        if (uniform) {
          rec(level + 1, t, mass_w, fv);
        } else {
          T mw = level == 0 ? (*mu).initial[t] : mass_w * mu->transition(last, t);
          rec(level + 1, t, mw, fv);
        }
        u.push_back(popped);
      } else {
        bool occupied = false;
        T saved;
        if (!uniform) {
          T um = u.empty() ? (*mu).initial[t] : u_mass[u.size()] * mu->transition(u.back(), t);
          u.push_back(t);
          // the slot may hold a g^-1 prefix mass an ancestor frame still needs
          occupied = u_mass.size() > u.size();
          if (occupied) {
            saved = std::move(u_mass[u.size()]);
            u_mass[u.size()] = std::move(um);
          } else {
            u_mass.push_back(std::move(um));
          }
        } else {
          u.push_back(t);
        }
        const T* nfv = fv;
        bool old_seam = seam;
        seam = true;
        if (!nfv && static_cast<int>(u.size()) >= fe_depth) {
          Word prefix(std::vector<Letter>(u.begin(), u.begin() + fe_depth));
          nfv = &fe->c[in_basis->index(prefix)];
        }
        if (uniform) {
          rec(level + 1, t, mass_w, nfv);
        } else {
          T mw = level == 0 ? (*mu).initial[t] : mass_w * mu->transition(last, t);
          rec(level + 1, t, mw, nfv);
        }
        seam = old_seam;
        if (occupied) u_mass[u.size()] = std::move(saved);
        u.pop_back();
      }
    }
  }
};

}  // namespace detail

/// The boundary representation: [pi(g) f](xi) = P_g(xi)^{1/2} f(g^-1 xi),
/// exact on step functions. Output depth = depth(f) + |g| so the derivative is
/// constant on every output cylinder.
template <class T>
StepFunction<T> apply_pi(const MarkovMeasure<T>& mu, const Word& g, const StepFunction<T>& f) {
  const Alphabet& alph = mu.alphabet();
  StepFunction<T> fe = f.depth >= 1 ? f : embed(alph, f, 1);
  if (g.empty()) return fe;
  int out_depth = fe.depth + static_cast<int>(g.size());
  CylinderBasis out_basis(alph, out_depth);
  CylinderBasis in_basis(alph, fe.depth);
  StepFunction<T> out{out_depth, std::vector<T>(out_basis.size(), T(0))};

  detail::PiWalker<T> walker;
  walker.mu = &mu;
  walker.fe = &fe;
  walker.in_basis = &in_basis;
  walker.out = &out;
  walker.out_depth = out_depth;
  walker.fe_depth = fe.depth;
  walker.n = mu.letters();
  Word ginv = inverse_word(g);
  walker.u.assign(ginv.letters.begin(), ginv.letters.end());
  walker.u_mass.assign(1, T(1));
  for (std::size_t i = 0; i < walker.u.size(); ++i)
    walker.u_mass.push_back(i == 0 ? mu.initial[walker.u[0]]
                                   : walker.u_mass.back() *
                                         mu.transition(walker.u[i - 1], walker.u[i]));
  walker.subtree.assign(out_depth + 1, 1);
  for (int d = out_depth - 1; d >= 1; --d)
    walker.subtree[d] = walker.subtree[d + 1] * (walker.n - 1);

  bool uniform = true;
  for (int s = 0; s < walker.n && uniform; ++s) uniform = mu.initial[s] == mu.initial[0];
  const T p0 = mu.transition(0, CylinderBasis::continuation_letter(Letter(0), 0));
  for (int s = 0; s < walker.n && uniform; ++s)
    for (int t = 0; t < walker.n && uniform; ++t)
      if (t != (s ^ 1)) uniform = mu.transition(Letter(s), Letter(t)) == p0;
  if (uniform) {
    int glen = static_cast<int>(g.size());
    walker.uniform = true;
    walker.offset = glen;
    walker.sqrt_pow.assign(2 * glen + 1, T(1));
    T s = sqrt_scalar(T(1) / p0);
    for (int m = 1; m <= glen; ++m) {
      walker.sqrt_pow[glen + m] = walker.sqrt_pow[glen + m - 1] * s;
      walker.sqrt_pow[glen - m] = walker.sqrt_pow[glen - m + 1] / s;
    }
  }
  walker.rec(0, Letter(0), T(1), nullptr);
  return out;
}

/// <pi(g) chi_u, chi_v> by decomposing [v] intersect g[u] into cylinders and
/// integrating sqrt(P_g) exactly over each.
template <class T>
T pair_pi(const MarkovMeasure<T>& mu, const Word& g, const Word& u, const Word& v) {
  T total(0);
  for (const Word& a : translate_cylinder(mu.alphabet(), g, u)) {
    std::size_t c = common_prefix_letters(a, v);
    if (c == a.size())
      total += sqrt_rn_integral(mu, g, v);
    else if (c == v.size())
      total += sqrt_rn_integral(mu, g, a);
  }
  return total;
}

/// ||P_g^{1/2}||_1 = <pi(g) 1, 1>, exact.
template <class T>
T p_half_l1_norm(const MarkovMeasure<T>& mu, const Word& g) {
  return sqrt_rn_integral(mu, g, Word());
}

template <class T>
StepFunction<T> apply_pi_tilde(const MarkovMeasure<T>& mu, const Word& g,
                               const StepFunction<T>& f) {
  StepFunction<T> out = apply_pi(mu, g, f);
  T norm = p_half_l1_norm(mu, g);
  for (T& x : out.c) x /= norm;
  return out;
}

template <class T>
T pair_pi_tilde(const MarkovMeasure<T>& mu, const Word& g, const Word& u, const Word& v) {
  return pair_pi(mu, g, u, v) / p_half_l1_norm(mu, g);
}

/// sup over the boundary of sum_g P~_g (normalized derivatives), evaluated on
/// the level decomposition; exact because every P~_g is a step function.
template <class T>
double ptilde_sup(const MarkovMeasure<T>& mu, const std::vector<Word>& gs) {
  int out_depth = 1;
  for (const Word& g : gs) out_depth = std::max(out_depth, static_cast<int>(g.size()) + 1);
  CylinderBasis basis(mu.alphabet(), out_depth);
  std::vector<double> diff(basis.size() + 1, 0.0);
  for (const Word& g : gs) {
    double norm = to_double(p_half_l1_norm(mu, g));
    for (const auto& [stem, value] : sqrt_rn_levels(mu, g)) {
      auto [lo, hi] = basis.descendant_range(stem);
      double x = to_double(value) / norm;
      diff[lo] += x;
      diff[hi] -= x;
    }
  }
  double acc = 0, best = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    acc += diff[i];
    best = std::max(best, acc);
  }
  return best;
}

/// A bounded nonnegative kernel on dGamma^2, constant on depth-m rectangles.
template <class T>
struct KernelSpec {
  int depth = 0;
  std::size_t side = 0;
  std::vector<T> values;  // row-major side x side

  const T& at(std::size_t i, std::size_t j) const { return values[i * side + j]; }
  T& at(std::size_t i, std::size_t j) { return values[i * side + j]; }
};

template <class T>
KernelSpec<T> constant_kernel(const Alphabet& alph, int depth, const T& value) {
  CylinderBasis basis(alph, depth);
  return KernelSpec<T>{depth, basis.size(),
                       std::vector<T>(basis.size() * basis.size(), value)};
}

/// Integrals of f over the depth-m cylinders; all the kernel pairing needs.
template <class T>
std::vector<T> cell_integrals(const MarkovMeasure<T>& mu, const StepFunction<T>& f, int depth) {
  int d = std::max(depth, f.depth);
  StepFunction<T> fe = embed(mu.alphabet(), f, d);
  std::vector<T> masses = cylinder_masses(mu, d);
  CylinderBasis coarse(mu.alphabet(), depth);
  std::vector<T> out(coarse.size(), T(0));
  std::size_t width = fe.c.size() / coarse.size();
  for (std::size_t i = 0; i < fe.c.size(); ++i) out[i / width] += fe.c[i] * masses[i];
  return out;
}

/// <T_K f, h> = sum over rectangles of K(u,v) * integral_u(f) * integral_v(h).
template <class T>
T pair_kernel(const MarkovMeasure<T>& mu, const KernelSpec<T>& K, const StepFunction<T>& f,
              const StepFunction<T>& h) {
  std::vector<T> fi = cell_integrals(mu, f, K.depth);
  std::vector<T> hi = cell_integrals(mu, h, K.depth);
  T total(0);
  for (std::size_t i = 0; i < fi.size(); ++i)
    for (std::size_t j = 0; j < hi.size(); ++j) total += K.at(i, j) * fi[i] * hi[j];
  return total;
}

/// T_K f at kernel depth: (T_K f)(eta) = integral of f(xi) K(xi, eta) dmu(xi).
template <class T>
StepFunction<T> apply_kernel(const MarkovMeasure<T>& mu, const KernelSpec<T>& K,
                             const StepFunction<T>& f) {
  std::vector<T> fi = cell_integrals(mu, f, K.depth);
  StepFunction<T> out{K.depth, std::vector<T>(K.side, T(0))};
  for (std::size_t j = 0; j < K.side; ++j)
    for (std::size_t i = 0; i < fi.size(); ++i) out.c[j] += K.at(i, j) * fi[i];
  return out;
}

/// The averaged operator S_R = sum_i (integral of K over V_i) pi~(g_i), kept
/// as its weighted terms; pairings expand by linearity.
template <class T>
struct AveragedOperator {
  double R = 0;
  int grid_depth = 0;
  std::vector<Word> owners;
  std::vector<T> weights;

  T weight_total() const {
    T total(0);
    for (const T& w : weights) total += w;
    return total;
  }
};

template <class T>
AveragedOperator<T> s_r(const MarkovMeasure<T>& mu, double R, const KernelSpec<T>& K,
                        const ShadowParams& params, std::uint64_t cap = kDefaultEnumerationCap) {
  GreedyPartition part = greedy_partition(mu.metric, R, params, cap);
  if (part.grid_depth != K.depth)
    throw std::invalid_argument("s_r: kernel depth " + std::to_string(K.depth) +
                                " != partition grid depth " + std::to_string(part.grid_depth));
  std::vector<T> masses = cylinder_masses(mu, part.grid_depth);
  AveragedOperator<T> op;
  op.R = R;
  op.grid_depth = part.grid_depth;
  for (std::size_t i = 0; i < part.cells.size(); ++i) {
    T w(0);
    for (auto key : part.cells[i].pairs) {
      auto [a, b] = GridSet::unkey(key);
      w += K.at(a, b) * masses[a] * masses[b];
    }
    op.owners.push_back(part.owners[i]);
    op.weights.push_back(w);
  }
  return op;
}

/// Rescale a kernel to a different rectangle depth (kernels are step
/// functions on dGamma^2, so refining copies values to sub-rectangles).
template <class T>
KernelSpec<T> refine_kernel(const Alphabet& alph, const KernelSpec<T>& K, int depth) {
  if (depth < K.depth) throw DepthError("refine_kernel: cannot coarsen");
  if (depth == K.depth) return K;
  CylinderBasis fine(alph, depth);
  std::size_t width = fine.size() / K.side;
  KernelSpec<T> out{depth, fine.size(), std::vector<T>(fine.size() * fine.size())};
  for (std::size_t i = 0; i < fine.size(); ++i)
    for (std::size_t j = 0; j < fine.size(); ++j) out.at(i, j) = K.at(i / width, j / width);
  return out;
}

/// Matrix of <S_R chi_u, chi_v> over the depth-dp cylinder basis.
template <class T>
std::vector<T> averaged_pair_matrix(const MarkovMeasure<T>& mu, const AveragedOperator<T>& op,
                                    int dp) {
  CylinderBasis basis(mu.alphabet(), dp);
  std::size_t n = basis.size();
  std::vector<Word> words(n);
  for (std::size_t i = 0; i < n; ++i) words[i] = basis.word(i);
  std::vector<T> out(n * n, T(0));
  for (std::size_t t = 0; t < op.owners.size(); ++t) {
    const Word& g = op.owners[t];
    T norm = p_half_l1_norm(mu, g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out[i * n + j] += op.weights[t] * pair_pi(mu, g, words[i], words[j]) / norm;
  }
  return out;
}

struct ConvergenceRow {
  double R = 0;
  std::string u, v;
  double s_value = 0;
  double t_value = 0;
  double residual = 0;
};

/// The kernel K_theta(xi, eta) = chi_E(xi) chi_{B(xi,theta)}(eta) / mu(B(xi,theta))
/// whose operator converges to the orthogonal projection onto L^2(E, mu).
/// radius_exponent s means theta = e^{-eps s}; balls are then cylinders.
template <class T>
KernelSpec<T> projection_kernel(const MarkovMeasure<T>& mu, const std::vector<Word>& e_stems,
                                double radius_exponent) {
  const Metric& metric = mu.metric;
  int depth = 1;
  for (const Word& w : e_stems) depth = std::max(depth, static_cast<int>(w.size()));
  depth = std::max(depth, static_cast<int>(std::ceil(radius_exponent / metric.min_letter_length() - 1e-9)));
  CylinderBasis basis(mu.alphabet(), depth);
  KernelSpec<T> K{depth, basis.size(), std::vector<T>(basis.size() * basis.size(), T(0))};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Word u = basis.word(i);
    bool in_e = false;
    for (const Word& s : e_stems)
      if (common_prefix_letters(u, s) == s.size()) in_e = true;
    if (!in_e) continue;
    // ball around any xi in [u]: shortest prefix of u of length >= s
    std::size_t blen = 0;
    double acc = 0;
    while (acc < radius_exponent - 1e-9 && blen < u.size())
      acc += metric.letter_length(u[blen++]);
    Word ball_stem(std::vector<Letter>(u.letters.begin(), u.letters.begin() + blen));
    T inv_mass = T(1) / mu.cylinder_mass(ball_stem);
    auto [b0, b1] = basis.descendant_range(ball_stem);
    for (std::size_t j = b0; j < b1; ++j) K.at(i, j) = inv_mass;
  }
  return K;
}

/// <P_E f, h> where E is a disjoint union of cylinders.
template <class T>
T pair_projection(const MarkovMeasure<T>& mu, const std::vector<Word>& e_stems,
                  const StepFunction<T>& f, const StepFunction<T>& h) {
  int depth = std::max(f.depth, h.depth);
  for (const Word& w : e_stems) depth = std::max(depth, static_cast<int>(w.size()));
  StepFunction<T> fe = embed(mu.alphabet(), f, depth);
  StepFunction<T> he = embed(mu.alphabet(), h, depth);
  std::vector<T> masses = cylinder_masses(mu, depth);
  CylinderBasis basis(mu.alphabet(), depth);
  T total(0);
  for (const Word& s : e_stems) {
    auto [lo, hi] = basis.descendant_range(s);
    for (std::size_t i = lo; i < hi; ++i) total += fe.c[i] * he.c[i] * masses[i];
  }
  return total;
}

struct CyclicityRow {
  int span_radius = 0;    // M: span of {pi(g)1 : |g| <= M}
  double max_residual = 0;
  double mean_residual = 0;
  int effective_rank = 0;
};

/// Relative projection residuals of the depth-N cylinder indicators onto
/// span{pi(g)1 : |g| <= M}, via Gram pseudo-inverse (cutoff 1e-10).
std::vector<CyclicityRow> cyclicity_report(const MarkovMeasure<double>& mu, int max_span_radius,
                                           int target_depth);

}  // namespace hypb
