// Acceptance battery: one pass/fail line per criterion, exit 1 on any failure.
// Scale: F_2, depths <= 12, R <= 8.

#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <thread>

#include "hypb/classify.hpp"
#include "hypb/representation.hpp"
#include "hypb/shadows.hpp"

using namespace hypb;

namespace {

const Alphabet F2(2);
int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++failures;
}

Word W(const std::string& s) { return parse_word(F2, s); }

// 1. sphere counts 4*3^{R-1} exactly; ball ratio in a fixed interval
void criterion1() {
  bool ok = true;
  std::uint64_t expect = 4, ballc = 1;
  for (int R = 1; R <= 10; ++R) {
    ok = ok && sphere_count(F2, R) == expect;
    ballc += sphere_count(F2, R);
    double ratio = static_cast<double>(ballc) / std::pow(3.0, R);
    ok = ok && ratio > 1.0 && ratio <= 2.0;
    expect *= 3;
  }
  report(1, "growth |S_R| = 4*3^{R-1}, |B_R|/3^R in (1,2]", ok);
}

// 2. unitarity + cocycle: exact for standard at composition depth 8; 1e-10
// for weighted and green
void criterion2() {
  bool ok = true;
  std::string detail;
  {
    MarkovMeasure<QuadExt> mu = exact_standard_measure(2);
    std::vector<Word> gs = ball(F2, 3);
    StepFunction<QuadExt> f = indicator<QuadExt>(F2, W("ab"));
    std::vector<StepFunction<QuadExt>> pf;
    pf.reserve(gs.size());
    for (const Word& h : gs) pf.push_back(apply_pi(mu, h, f));
    // the (i, j) checks are independent: fan the outer loop over threads
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<bool> all_ok{true};
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < gs.size() && all_ok.load();
             i = next.fetch_add(1)) {
          // unitarity of pi(g) on a cylinder battery
          bool good = inner_product(mu, pf[i], pf[i]) == inner_product(mu, f, f);
          for (std::size_t j = 0; j < gs.size() && good; ++j) {
            StepFunction<QuadExt> lhs = apply_pi(mu, gs[i], pf[j]);
            StepFunction<QuadExt> rhs =
                embed(F2, apply_pi(mu, multiply(gs[i], gs[j]), f), lhs.depth);
            good = lhs.c == rhs.c;
          }
          if (!good) all_ok.store(false);
        }
      });
    for (auto& th : pool) th.join();
    ok = all_ok.load();
    if (!ok) detail = "standard exact check failed";
  }
  for (const char* t : {"weighted:1,2", "green:srw"}) {
    MarkovMeasure<double> mu = ps_measure(solve_metric(MetricSpec::parse(t)));
    StepFunction<double> f = indicator<double>(F2, W("ab"));
    std::vector<Word> gs = ball(F2, 3);
    std::vector<StepFunction<double>> pf;
    for (const Word& h : gs) pf.push_back(apply_pi(mu, h, f));
    double worst = 0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      StepFunction<double> pg = apply_pi(mu, gs[i], f);
      worst = std::max(worst,
                       std::abs(inner_product(mu, pg, pg) - inner_product(mu, f, f)));
      for (std::size_t j = 0; j < gs.size(); ++j) {
        StepFunction<double> lhs = apply_pi(mu, gs[i], pf[j]);
        StepFunction<double> rhs =
            embed(F2, apply_pi(mu, multiply(gs[i], gs[j]), f), lhs.depth);
        for (std::size_t c = 0; c < lhs.c.size(); ++c)
          worst = std::max(worst, std::abs(lhs.c[c] - rhs.c[c]));
      }
    }
    if (worst > 1e-10) {
      ok = false;
      detail = std::string(t) + " worst " + std::to_string(worst);
    }
  }
  report(2, "unitarity/cocycle exact (standard) and <= 1e-10 (weighted, green)", ok, detail);
}

// 3. exact L1 norm closed form 3^{-n/2}(1+n/2), envelope ratio in [1/2, 1]
void criterion3() {
  MarkovMeasure<QuadExt> mu = exact_standard_measure(2);
  bool ok = true;
  for (int n = 0; n <= 12 && ok; ++n) {
    Word g;
    for (int i = 0; i < n; ++i) g.letters.push_back(i % 2 ? 2 : 0);
    QuadExt norm = p_half_l1_norm(mu, g);
    QuadExt closed =
        sqrt_scalar(mu.omega_int_pow(-n)) * QuadExt(Rational(1) + Rational(n, 2));
    ok = ok && norm == closed;
    double ratio = (1.0 + n / 2.0) / (1.0 + n);
    ok = ok && ratio >= 0.5 - 1e-15 && ratio <= 1.0 + 1e-15;
  }
  report(3, "||P_g^{1/2}||_1 = 3^{-n/2}(1+n/2) exact, within [1/2,1] of envelope", ok);
}

// 4. uniform boundedness of sum of normalized derivatives
void criterion4() {
  MarkovMeasure<double> mu = ps_measure(solve_metric(MetricSpec::standard(2)));
  bool ok = true;
  std::string detail;
  for (int R = 1; R <= 8; ++R) {
    double sup = ptilde_sup(mu, sphere(F2, R)) / std::pow(3.0, R);
    double closed = (2.0 + (2.0 * R - 2) / 3.0) / (1.0 + R / 2.0);
    if (sup > 2.0 + 1e-12 || std::abs(sup - closed) > 1e-9) {
      ok = false;
      detail = "standard R=" + std::to_string(R);
    }
  }
  Metric mw = solve_metric(MetricSpec::weighted(2, {1, 2}));
  MarkovMeasure<double> muw = ps_measure(mw);
  for (int R = 4; R <= 8; ++R) {
    auto gs = annulus(mw, R, ShadowParams::defaults(mw).half_width).members;
    double ratio = ptilde_sup(muw, gs) / static_cast<double>(gs.size());
    if (ratio > 4.0) {
      ok = false;
      detail = "weighted R=" + std::to_string(R) + " ratio " + std::to_string(ratio);
    }
  }
  report(4, "sup_eta sum P~_g(eta) <= 2*3^R (standard, closed form) and <= 4|A_R| (weighted)",
         ok, detail);
}

// 5. shadow and double-shadow covers
void criterion5() {
  bool ok = true;
  std::string detail;
  for (const char* t : {"standard", "weighted:1,2"}) {
    Metric m = solve_metric(MetricSpec::parse(t));
    ShadowParams params = ShadowParams::defaults(m);
    for (int R = 1; R <= 8; ++R) {
      if (!shadows_cover(m, R, params).covered ||
          !double_shadows_cover(m, R, params).covered) {
        ok = false;
        detail = std::string(t) + " R=" + std::to_string(R);
      }
    }
  }
  report(5, "shadows and double shadows cover (default rho, r; R <= 8)", ok, detail);
}

// 6. cone growth within one interval of spread <= 10
void criterion6() {
  Metric m = solve_metric(MetricSpec::standard(2));
  ShadowParams params = ShadowParams::defaults(m);
  std::vector<BoundaryPoint> samples = {
      parse_boundary_point(F2, "(a)"), parse_boundary_point(F2, "(b)"),
      parse_boundary_point(F2, "(ab)"), parse_boundary_point(F2, "a(B)"),
      parse_boundary_point(F2, "bA(ba)")};
  double lo = 1e300, hi = 0;
  for (double rho : {1.0, 2.0, 3.0}) {
    std::vector<double> rs;
    for (int R = static_cast<int>(rho); R <= 8; ++R) rs.push_back(R);
    for (const auto& row : cone_growth_report(m, samples, {rho}, rs, params)) {
      lo = std::min(lo, row.ratio);
      hi = std::max(hi, row.ratio);
    }
  }
  report(6, "cone growth |C_R| 3^{rho-R} within [c, C], C/c <= 10", lo > 0 && hi / lo <= 10.0,
         "C/c = " + std::to_string(hi / lo));
}

// 7. S_R -> T_K for K = 1: residuals shrink, final <= 0.1 mu(u)mu(v), exact unit row
void criterion7() {
  Metric m = solve_metric(MetricSpec::standard(2));
  MarkovMeasure<double> mu = ps_measure(m);
  MarkovMeasure<QuadExt> muq = exact_standard_measure(2);
  ShadowParams params = ShadowParams::defaults(m);
  CylinderBasis basis(F2, 2);
  std::size_t n = basis.size();
  std::vector<double> masses = cylinder_masses(mu, 2);
  bool ok = true;
  std::string detail;
  double first_max = 0, last_max = 0, last_rel = 0;
  for (int R = 3; R <= 8; ++R) {
    GreedyPartition part = greedy_partition(m, R, params);
    KernelSpec<double> K = constant_kernel(F2, part.grid_depth, 1.0);
    AveragedOperator<double> op = s_r(mu, R, K, params);
    std::vector<double> mat = averaged_pair_matrix(mu, op, 2);
    double mx = 0, rel = 0;
    for (std::size_t i = 0; i < n * n; ++i) {
      double t = masses[i / n] * masses[i % n];
      mx = std::max(mx, std::abs(mat[i] - t));
      rel = std::max(rel, std::abs(mat[i] - t) / t);
    }
    if (R == 3) first_max = mx;
    last_max = mx;
    last_rel = rel;
    KernelSpec<QuadExt> Kq = constant_kernel(F2, part.grid_depth, QuadExt(1));
    if (s_r(muq, R, Kq, params).weight_total() != QuadExt(1)) {
      ok = false;
      detail = "identity row not exact at R=" + std::to_string(R);
    }
  }
  if (last_rel > 0.1) {
    ok = false;
    detail = "final relative residual " + std::to_string(last_rel);
  }
  if (last_max > first_max) {
    ok = false;
    detail = "residual envelope grew";
  }
  report(7, "S_R -> T_1: residual <= 0.1 mu(u)mu(v) at R=8, <S_R 1,1> = 1 exact", ok,
         detail.empty() ? "final rel residual " + std::to_string(last_rel) : detail);
}

// 8. cyclicity of 1: depth-3 indicators projected onto span{pi(g)1 : |g| <= M}
void criterion8() {
  MarkovMeasure<double> mu = ps_measure(solve_metric(MetricSpec::standard(2)));
  auto rows = cyclicity_report(mu, 3, 3);
  bool ok = rows.size() == 4;
  for (std::size_t i = 1; i < rows.size(); ++i)
    ok = ok && rows[i].max_residual <= rows[i - 1].max_residual + 1e-12;
  ok = ok && rows.back().max_residual < 1e-6;
  report(8, "cyclicity residuals decrease in M and < 1e-6 at M = N = 3", ok,
         "residual(3) = " + std::to_string(rows.back().max_residual));
}

// 9. green/harmonic identities and harmonic = uniform for the SRW
void criterion9() {
  bool ok = true;
  std::string detail;
  Metric m = solve_metric(MetricSpec::green_srw(2));
  const GreenSolve& gs = *m.green();
  for (int s = 0; s < 4; ++s) {
    ok = ok && std::abs(gs.first_passage[s] - 1.0 / 3) <= 1e-12;
    ok = ok && std::abs(gs.convergence[s] - 0.75) <= 1e-12;
  }
  double total = 0;
  for (int s = 0; s < 4; ++s) total += gs.first_passage[s] * gs.convergence[s];
  ok = ok && std::abs(total - 1.0) <= 1e-12;
  for (int s = 0; s < 4; ++s) {
    double acc = 0;
    for (int t = 0; t < 4; ++t)
      if (t != (s ^ 1)) acc += gs.first_passage[t] * gs.convergence[t];
    ok = ok && std::abs(acc - gs.convergence[s]) <= 1e-12;
  }
  ok = ok && std::abs(transfer_spectral_radius(2, m.letter_lengths(), std::exp(-1.0)) - 1.0) <=
                 1e-10;
  MarkovMeasure<double> nu = ps_measure(m);
  MarkovMeasure<double> uni = ps_measure(solve_metric(MetricSpec::standard(2)));
  for (int L = 1; L <= 10 && ok; ++L)
    for (const Word& w : sphere(F2, L))
      if (std::abs(nu.cylinder_mass(w) - uni.cylinder_mass(w)) > 1e-12) {
        ok = false;
        detail = "harmonic != uniform at " + to_string(F2, w);
      }
  Metric ma = solve_metric(MetricSpec::green(2, {0.375, 0.125}));
  MarkovMeasure<double> nua = ps_measure(ma);
  double lo = 1e300, hi = 0;
  for (int L = 1; L <= 10; ++L)
    for (const Word& w : sphere(F2, L)) {
      double scaled = nua.cylinder_mass(w) * std::exp(ma.word_length(w));
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
    }
  ok = ok && hi / lo <= 10.0;
  report(9, "green: F = 1/3, c = 3/4, harmonic identities, nu e^{|w|_G} bounded", ok, detail);
}

// 10. classification verdicts with agreeing diagnostics
void criterion10() {
  bool ok = true;
  std::string detail;
  EquivalenceReport r1 =
      equivalence_verdict(MetricSpec::standard(2), MetricSpec::weighted(2, {2, 2}));
  ok = ok && r1.verdict == Verdict::equivalent && std::abs(r1.scale - 0.5) <= 1e-10;
  ok = ok && r1.deviation.deviations.back() <= 1e-9;
  EquivalenceReport r2 =
      equivalence_verdict(MetricSpec::standard(2), MetricSpec::green_srw(2));
  ok = ok && r2.verdict == Verdict::equivalent;
  // the similarity constant up to orientation of the pair
  ok = ok && (std::abs(r2.scale - std::log(3.0)) <= 1e-9 ||
              std::abs(r2.scale - 1.0 / std::log(3.0)) <= 1e-9);
  EquivalenceReport r3 =
      equivalence_verdict(MetricSpec::standard(2), MetricSpec::weighted(2, {1, 2}));
  ok = ok && r3.verdict == Verdict::inequivalent;
  // diagnostics agree in direction on all three pairs
  for (const EquivalenceReport* r : {&r1, &r2, &r3}) {
    bool agree = r->deviation.verdict == r->spectrum.verdict;
    bool holder_dir = r->spectrum.verdict == Verdict::equivalent
                          ? r->holder.max_abs_deviation <= 1e-6
                          : r->holder.max_abs_deviation > 1e-6;
    if (!agree || !holder_dir) {
      ok = false;
      detail = "diagnostics disagree";
    }
  }
  report(10, "classification: 2x-standard and green equivalent, weighted(1,2) not", ok, detail);
}

// 11. almost invariance of the square measure
void criterion11() {
  MarkovMeasure<double> mu = ps_measure(solve_metric(MetricSpec::standard(2)));
  auto rows = mu.metric.is_standard() ? almost_invariance_report(mu, 5, 7)
                                      : std::vector<AlmostInvarianceRow>{};
  bool ok = rows.size() == 5;
  for (const auto& row : rows) ok = ok && row.max_abs_log_ratio <= 1e-9;
  ok = ok && rows[4].max_abs_log_ratio <= rows[3].max_abs_log_ratio + 1e-12;
  MarkovMeasure<double> muw = ps_measure(solve_metric(MetricSpec::weighted(2, {1, 2})));
  double worst = 0;
  for (const auto& row : almost_invariance_report(muw, 4, 6))
    worst = std::max(worst, row.max_abs_log_ratio);
  ok = ok && worst <= 10.0;
  report(11, "nu almost invariant: standard exactly, weighted bounded", ok,
         "weighted max |log ratio| = " + std::to_string(worst));
}

// 12. projection kernels: <T_theta 1, chi_E> -> mu(E), exact once refined
void criterion12() {
  MarkovMeasure<double> mu = ps_measure(solve_metric(MetricSpec::standard(2)));
  std::vector<Word> e = {W("a")};
  StepFunction<double> one = constant_one<double>(F2);
  StepFunction<double> chi = indicator<double>(F2, W("a"));
  double mu_e = 0.25;
  bool ok = true;
  double prev = 1e300;
  for (double s : {0.25, 0.5, 1.0, 2.0, 3.0}) {
    KernelSpec<double> K = projection_kernel(mu, e, s);
    double value = pair_kernel(mu, K, one, chi);
    double res = std::abs(value - mu_e);
    ok = ok && res <= prev + 1e-12;
    if (s >= 1.0) ok = ok && res <= 1e-12;
    prev = res;
  }
  // compare against the exact projection pairing
  ok = ok && std::abs(pair_projection(mu, e, one, chi) - mu_e) <= 1e-12;
  report(12, "projection kernel pairing reaches mu(E) exactly once refined", ok);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  void (*crits[])() = {criterion1, criterion2, criterion3,  criterion4,  criterion5,  criterion6,
                       criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
  for (auto* c : crits) {
    auto s = std::chrono::steady_clock::now();
    c();
    std::cerr << "  ("
              << std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - s)
                     .count()
              << " ms)" << std::endl;
  }
  auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cout << failures << " failure(s), " << dt << " ms total" << std::endl;
  return failures == 0 ? 0 : 1;
}
