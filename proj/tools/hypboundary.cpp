#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "hypb/classify.hpp"
#include "hypb/io.hpp"
#include "hypb/representation.hpp"
#include "hypb/shadows.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hypb;

namespace {

struct Ctx {
  fs::path out = "out";
  fs::path cache_dir;
  std::string spec_text = "standard";
  std::string spec1_text, spec2_text;
  std::string kernel = "one";
  std::string r_text = "8";
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 0;

  int r_lo = 0, r_hi = 0;

  Metric metric() const { return solve_metric_cached(MetricSpec::parse(spec_text), cache_dir); }
};

void parse_range(Ctx& ctx) {
  auto pos = ctx.r_text.find("..");
  if (pos == std::string::npos) {
    ctx.r_hi = std::stoi(ctx.r_text);
    ctx.r_lo = ctx.r_hi;
  } else {
    ctx.r_lo = std::stoi(ctx.r_text.substr(0, pos));
    ctx.r_hi = std::stoi(ctx.r_text.substr(pos + 2));
  }
  if (ctx.r_lo < 0 || ctx.r_hi < ctx.r_lo || ctx.r_hi > 12)
    throw CLI::ValidationError("--R must be a range within 0..12");
}

Summary run_growth(const Ctx& ctx) {
  Metric metric = ctx.metric();
  const Alphabet& alph = metric.alphabet();
  double omega = metric.growth().omega;
  Summary summary{"growth"};
  CsvWriter csv(ctx.out / "growth.csv", {"R", "sphere_count", "ball_count", "ball_ratio",
                                         "annulus_count", "annulus_ratio"});
  double lo = 0, hi = 0;
  for (int R = 1; R <= 10; ++R) {
    std::uint64_t sc = sphere_count(alph, R);
    std::uint64_t bc = 1;
    for (int r = 1; r <= R; ++r) bc += sphere_count(alph, r);
    std::size_t ac = annulus(metric, R, ShadowParams::defaults(metric).half_width, ctx.cap)
                         .members.size();
    double aratio = static_cast<double>(ac) * std::pow(omega, -R);
    double bratio = static_cast<double>(bc) /
                    std::pow(static_cast<double>(alph.size() - 1), R);
    csv.cell(std::int64_t(R)).cell(sc).cell(bc).cell(bratio).cell(ac).cell(aratio);
    csv.end_row();
    if (R == 1) lo = hi = aratio;
    lo = std::min(lo, aratio);
    hi = std::max(hi, aratio);
    if (metric.is_standard()) {
      std::uint64_t expect = alph.size();
      for (int r = 1; r < R; ++r) expect *= alph.size() - 1;
      summary.check("sphere_count_R" + std::to_string(R), double(sc), double(expect),
                    sc == expect, "2k(2k-1)^{R-1}");
      summary.check("ball_ratio_R" + std::to_string(R), bratio, 2.0,
                    bratio > 1.0 && bratio <= 2.0, "in (1,2]");
    }
  }
  summary.check("annulus_ratio_spread", hi / lo, 10.0, hi / lo <= 10.0,
                "|A_R| omega^{-R} within one decade");
  return summary;
}

Summary run_shadows(const Ctx& ctx) {
  Metric metric = ctx.metric();
  ShadowParams params = ShadowParams::defaults(metric);
  Summary summary{"shadows"};
  CsvWriter csv(ctx.out / "shadows.csv",
                {"R", "kind", "shadow_count", "grid_depth", "cells_checked", "covered"});
  for (int R = std::max(1, ctx.r_lo); R <= ctx.r_hi; ++R) {
    CoverReport single = shadows_cover(metric, R, params, ctx.cap);
    csv.cell(std::int64_t(R)).cell(std::string("single")).cell(std::uint64_t(single.shadow_count));
    csv.cell(std::int64_t(single.grid_depth)).cell(single.cells_checked);
    csv.cell(std::string(single.covered ? "yes" : "no"));
    csv.end_row();
    summary.check("single_cover_R" + std::to_string(R), single.covered ? 1 : 0, 1,
                  single.covered);
    PairCoverReport dbl = double_shadows_cover(metric, R, params, ctx.cap);
    csv.cell(std::int64_t(R)).cell(std::string("double")).cell(std::uint64_t(dbl.shadow_count));
    csv.cell(std::int64_t(dbl.grid_depth)).cell(dbl.cells_checked);
    csv.cell(std::string(dbl.covered ? "yes" : "no"));
    csv.end_row();
    summary.check("double_cover_R" + std::to_string(R), dbl.covered ? 1 : 0, 1, dbl.covered);
  }
  return summary;
}

Summary run_cones(const Ctx& ctx) {
  Metric metric = ctx.metric();
  const Alphabet& alph = metric.alphabet();
  ShadowParams params = ShadowParams::defaults(metric);
  std::vector<BoundaryPoint> samples = {
      parse_boundary_point(alph, "(a)"), parse_boundary_point(alph, "(b)"),
      parse_boundary_point(alph, "(ab)"), parse_boundary_point(alph, "a(B)"),
      parse_boundary_point(alph, "bA(ba)")};
  Summary summary{"cones"};
  CsvWriter csv(ctx.out / "cones.csv", {"rho", "R", "xi", "count", "ratio"});
  double lo = 0, hi = 0;
  bool first = true;
  for (double rho : {1.0, 2.0, 3.0}) {
    std::vector<double> rs;
    for (int R = static_cast<int>(rho); R <= ctx.r_hi; ++R) rs.push_back(R);
    for (const ConeGrowthRow& row :
         cone_growth_report(metric, samples, {rho}, rs, params, ctx.cap)) {
      csv.cell(row.rho).cell(row.R).cell(row.xi).cell(std::uint64_t(row.count)).cell(row.ratio);
      csv.end_row();
      if (first) { lo = hi = row.ratio; first = false; }
      lo = std::min(lo, row.ratio);
      hi = std::max(hi, row.ratio);
    }
  }
  summary.check("cone_ratio_spread", hi / lo, 10.0, lo > 0 && hi / lo <= 10.0,
                "|C_R| omega^{rho-R} within one decade");
  return summary;
}

Summary run_l1norms(const Ctx& ctx) {
  Metric metric = ctx.metric();
  MarkovMeasure<double> mu = ps_measure(metric);
  const Alphabet& alph = metric.alphabet();
  Summary summary{"l1norms"};
  CsvWriter csv(ctx.out / "l1norms.csv", {"n", "word", "norm", "envelope_ratio"});
  double omega = metric.growth().omega;
  bool exact = metric.is_standard();
  MarkovMeasure<QuadExt> muq = exact ? exact_standard_measure(alph.rank)
                                     : MarkovMeasure<QuadExt>{metric, {}, {}, QuadExt(1)};
  for (int n = 0; n <= 12; ++n) {
    Word g;
    for (int i = 0; i < n; ++i) g.letters.push_back(i % 2 ? 2 : 0);  // (ab)^... reduced
    double norm = to_double(p_half_l1_norm(mu, g));
    double env = std::pow(omega, -metric.word_length(g) / 2) * (1 + n);
    csv.cell(std::int64_t(n)).cell(to_string(alph, g)).cell(norm).cell(norm / env);
    csv.end_row();
    double rlo = exact ? 0.5 : 0.1, rhi = exact ? 1.0 : 2.0;
    summary.check("envelope_ratio_n" + std::to_string(n), norm / env, rhi,
                  norm / env >= rlo - 1e-12 && norm / env <= rhi + 1e-12,
                  "within the omega^{-|g|/2}(1+|g|) envelope");
    if (exact) {
      QuadExt closed = muq.omega_int_pow(-n);  // 3^{-n}
      closed = sqrt_scalar(closed) * QuadExt(Rational(1) + Rational(n, 2));
      summary.check("closed_form_n" + std::to_string(n), norm, to_double(closed),
                    p_half_l1_norm(muq, g) == closed, "3^{-n/2}(1+n/2) exact");
    }
  }
  return summary;
}

Summary run_boundedness(const Ctx& ctx) {
  Metric metric = ctx.metric();
  const Alphabet& alph = metric.alphabet();
  MarkovMeasure<double> mu = ps_measure(metric);
  Summary summary{"boundedness"};
  CsvWriter csv(ctx.out / "boundedness.csv", {"R", "members", "sup_sum", "ratio"});
  bool standard = metric.is_standard();
  int lo = standard ? 1 : std::max(4, ctx.r_lo);
  for (int R = lo; R <= ctx.r_hi; ++R) {
    std::vector<Word> gs = standard
                               ? sphere(alph, R, ctx.cap)
                               : annulus(metric, R, ShadowParams::defaults(metric).half_width,
                                         ctx.cap).members;
    double sup = ptilde_sup(mu, gs);
    double ratio = sup / static_cast<double>(gs.size());
    csv.cell(std::int64_t(R)).cell(std::uint64_t(gs.size())).cell(sup).cell(ratio);
    csv.end_row();
    double bound = standard ? 2.0 : 4.0;
    summary.check_le("sup_ratio_R" + std::to_string(R), ratio, bound,
                     "sup_eta sum P~_g(eta) / #members");
    if (standard) {
      double closed = (2.0 + (2.0 * R - 2.0) / 3.0) / (1.0 + R / 2.0) *
                      std::pow(3.0, R) / static_cast<double>(gs.size());
      summary.check("closed_form_R" + std::to_string(R), ratio, closed,
                    std::abs(ratio - closed) <= 1e-9, "(2+(2R-2)/3)/(1+R/2) per member");
    }
  }
  return summary;
}

Summary run_converge(const Ctx& ctx) {
  if (ctx.kernel != "one") throw CLI::ValidationError("--K: only 'one' is supported");
  Metric metric = ctx.metric();
  const Alphabet& alph = metric.alphabet();
  MarkovMeasure<double> mu = ps_measure(metric);
  ShadowParams params = ShadowParams::defaults(metric);
  Summary summary{"converge"};
  CsvWriter csv(ctx.out / "converge.csv", {"R", "u", "v", "s_value", "t_value", "residual"});
  CylinderBasis basis(alph, 2);
  std::size_t n = basis.size();
  std::vector<double> masses = cylinder_masses(mu, 2);
  std::vector<double> first_res(n * n, 0), last_res(n * n, 0);
  bool exact = metric.is_standard();
  int lo = std::max(1, ctx.r_lo);
  for (int R = lo; R <= ctx.r_hi; ++R) {
    KernelSpec<double> K =
        constant_kernel(alph, greedy_partition(metric, R, params, ctx.cap).grid_depth, 1.0);
    AveragedOperator<double> op = s_r(mu, R, K, params, ctx.cap);
    std::vector<double> mat = averaged_pair_matrix(mu, op, 2);
    double maxrel = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double t = masses[i] * masses[j];
        double res = std::abs(mat[i * n + j] - t);
        maxrel = std::max(maxrel, res / t);
        if (R == lo) first_res[i * n + j] = res;
        last_res[i * n + j] = res;
        csv.cell(std::int64_t(R)).cell(to_string(alph, basis.word(i)));
        csv.cell(to_string(alph, basis.word(j))).cell(mat[i * n + j]).cell(t).cell(res);
        csv.end_row();
      }
    if (R == ctx.r_hi)
      summary.check_le("final_max_relative_residual", maxrel, 0.1,
                       "|<S_R chi_u, chi_v> - mu(u)mu(v)| <= 0.1 mu(u)mu(v)");
    double identity = op.weight_total();
    if (exact) {
      MarkovMeasure<QuadExt> muq = exact_standard_measure(alph.rank);
      KernelSpec<QuadExt> Kq = constant_kernel(alph, K.depth, QuadExt(1));
      AveragedOperator<QuadExt> opq = s_r(muq, R, Kq, params, ctx.cap);
      summary.check("identity_row_R" + std::to_string(R), to_double(opq.weight_total()), 1.0,
                    opq.weight_total() == QuadExt(1), "<S_R 1, 1> = 1 exact");
    } else {
      summary.check("identity_row_R" + std::to_string(R), identity, 1.0,
                    std::abs(identity - 1.0) <= 1e-9);
    }
  }
  double fmax = 0, lmax = 0;
  for (std::size_t i = 0; i < n * n; ++i) {
    fmax = std::max(fmax, first_res[i]);
    lmax = std::max(lmax, last_res[i]);
  }
  summary.check_le("residual_envelope_decreases", lmax, fmax + 1e-15,
                   "max residual at R_hi <= max residual at R_lo");
  return summary;
}

Summary run_cyclicity(const Ctx& ctx) {
  Metric metric = ctx.metric();
  MarkovMeasure<double> mu = ps_measure(metric);
  Summary summary{"cyclicity"};
  CsvWriter csv(ctx.out / "cyclicity.csv",
                {"M", "max_residual", "mean_residual", "effective_rank"});
  std::vector<CyclicityRow> rows = cyclicity_report(mu, 3, 3);
  for (const CyclicityRow& row : rows) {
    csv.cell(std::int64_t(row.span_radius)).cell(row.max_residual).cell(row.mean_residual);
    csv.cell(std::int64_t(row.effective_rank));
    csv.end_row();
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    summary.check_le("residual_decreases_M" + std::to_string(rows[i].span_radius),
                     rows[i].max_residual, rows[i - 1].max_residual + 1e-12);
  summary.check_le("residual_at_M3", rows.back().max_residual, 1e-6,
                   "depth-3 indicators in span{pi(g)1 : |g| <= 3}");
  return summary;
}

Summary run_projections(const Ctx& ctx) {
  Metric metric = ctx.metric();
  const Alphabet& alph = metric.alphabet();
  MarkovMeasure<double> mu = ps_measure(metric);
  Summary summary{"projections"};
  CsvWriter csv(ctx.out / "projections.csv", {"s", "pair_value", "mu_E", "residual"});
  std::vector<Word> e_stems = {parse_word(alph, "a")};
  StepFunction<double> one = constant_one<double>(alph);
  StepFunction<double> chi_e = indicator<double>(alph, e_stems[0]);
  double mu_e = to_double(mu.cylinder_mass(e_stems[0]));
  double prev = 1e300;
  double ell_a = metric.letter_length(0);
  for (double s : {0.0, 0.5 * ell_a, ell_a, 2 * ell_a, 3 * ell_a}) {
    double value;
    if (s == 0.0) {
      value = mu_e * mu_e;  // theta = 1: the ball is the whole boundary
    } else {
      KernelSpec<double> K = projection_kernel(mu, e_stems, s);
      value = pair_kernel(mu, K, one, chi_e);
    }
    double res = std::abs(value - mu_e);
    csv.cell(s).cell(value).cell(mu_e).cell(res);
    csv.end_row();
    summary.check_le("residual_monotone_s" + fmt15(s), res, prev + 1e-12);
    if (s >= ell_a - 1e-12)
      summary.check_le("exact_at_s" + fmt15(s), res, 1e-12,
                       "kernel depth refines E: <T_theta 1, chi_E> = mu(E)");
    prev = res;
  }
  return summary;
}

Summary run_green(const Ctx& ctx) {
  MetricSpec spec = MetricSpec::parse(ctx.spec_text);
  if (spec.variant != MetricVariant::green)
    throw CLI::ValidationError("green experiment needs a green:* spec");
  Metric metric = solve_metric_cached(spec, ctx.cache_dir);
  const Alphabet& alph = metric.alphabet();
  const GreenSolve& gs = *metric.green();
  int n = alph.size();
  Summary summary{"green"};
  CsvWriter csv(ctx.out / "green.csv", {"letter", "F", "c", "ell"});
  for (int s = 0; s < n; ++s) {
    csv.cell(std::string(1, alph.symbol(static_cast<Letter>(s))));
    csv.cell(gs.first_passage[s]).cell(gs.convergence[s]).cell(metric.letter_length(s));
    csv.end_row();
  }
  double total = 0;
  for (int s = 0; s < n; ++s) total += gs.first_passage[s] * gs.convergence[s];
  summary.check("sum_F_c", total, 1.0, std::abs(total - 1.0) <= 1e-12, "sum F_s c_s = 1");
  double worst = 0;
  for (int s = 0; s < n; ++s) {
    double acc = 0;
    for (int t = 0; t < n; ++t)
      if (t != (s ^ 1)) acc += gs.first_passage[t] * gs.convergence[t];
    worst = std::max(worst, std::abs(acc - gs.convergence[s]));
  }
  summary.check_le("harmonic_identity", worst, 1e-12, "sum_{t != s^-1} F_t c_t = c_s");
  double rho = transfer_spectral_radius(alph.rank, metric.letter_lengths(), std::exp(-1.0));
  summary.check("transfer_radius_at_inv_e", rho, 1.0, std::abs(rho - 1.0) <= 1e-10,
                "spectral radius of M_{s,t} = F_t is 1");

  MarkovMeasure<double> nu = ps_measure(metric);
  bool srw = true;
  for (int s = 1; s < n; ++s)
    if (std::abs(gs.first_passage[s] - gs.first_passage[0]) > 1e-12) srw = false;
  double lo = 1e300, hi = 0;
  MarkovMeasure<double> uniform = ps_measure(solve_metric(MetricSpec::standard(alph.rank)));
  double max_diff = 0;
  for (int L = 1; L <= 10; ++L)
    for (const Word& w : sphere(alph, L, ctx.cap)) {
      double mass = nu.cylinder_mass(w);
      double scaled = mass * std::exp(metric.word_length(w));
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
      if (srw) max_diff = std::max(max_diff, std::abs(mass - uniform.cylinder_mass(w)));
    }
  if (srw) {
    summary.check_le("harmonic_equals_uniform", max_diff, 1e-12,
                     "SRW harmonic masses = uniform PS masses, |w| <= 10");
    summary.check("F_value", gs.first_passage[0], 1.0 / 3.0,
                  std::abs(gs.first_passage[0] - 1.0 / 3.0) <= 1e-12);
    summary.check("c_value", gs.convergence[0], 0.75,
                  std::abs(gs.convergence[0] - 0.75) <= 1e-12);
  }
  summary.check("mass_green_scaling_spread", hi / lo, 10.0, hi / lo <= 10.0,
                "nu([w]) e^{|w|_G} within one decade, |w| <= 10");
  return summary;
}

Summary run_classify(const Ctx& ctx) {
  if (ctx.spec1_text.empty() || ctx.spec2_text.empty())
    throw CLI::ValidationError("classify needs --spec1 and --spec2");
  MetricSpec s1 = MetricSpec::parse(ctx.spec1_text);
  MetricSpec s2 = MetricSpec::parse(ctx.spec2_text);
  EquivalenceReport report = equivalence_verdict(s1, s2);
  Summary summary{"classify"};
  CsvWriter csv(ctx.out / "classify.csv", {"R", "deviation"});
  for (std::size_t R = 0; R < report.deviation.deviations.size(); ++R) {
    csv.cell(std::int64_t(R)).cell(report.deviation.deviations[R]);
    csv.end_row();
  }
  bool spectrum_dec = report.spectrum.verdict != Verdict::inconclusive;
  summary.check("spectrum_decisive", spectrum_dec ? 1 : 0, 1, spectrum_dec);
  bool agree = report.deviation.verdict == report.spectrum.verdict ||
               report.deviation.verdict == Verdict::inconclusive;
  summary.check("deviation_agrees", agree ? 1 : 0, 1, agree);
  bool holder_dir = report.spectrum.verdict == Verdict::equivalent
                        ? report.holder.max_abs_deviation <= 1e-6
                        : report.holder.max_abs_deviation > 1e-6;
  summary.check("holder_agrees", holder_dir ? 1 : 0, 1, holder_dir,
                "max |dev| = " + fmt15(report.holder.max_abs_deviation));

  json extra;
  extra["verdict"] = to_string(report.verdict);
  extra["A"] = fmt15(report.scale);
  extra["evidence"]["spectrum"] = {{"verdict", to_string(report.spectrum.verdict)},
                                   {"A", fmt15(report.spectrum.scale)},
                                   {"detail", report.spectrum.detail}};
  extra["evidence"]["deviation"] = {{"verdict", to_string(report.deviation.verdict)},
                                    {"A", fmt15(report.deviation.scale)},
                                    {"detail", report.deviation.detail}};
  extra["evidence"]["holder"] = {{"max_abs_deviation", fmt15(report.holder.max_abs_deviation)}};
  if (!report.multiplier.empty()) {
    json m = json::array();
    for (double x : report.multiplier) m.push_back(fmt15(x));
    extra["multiplier"] = m;
  }
  write_summary(ctx.out / "classify_summary.json", summary, &extra);
  std::cout << "verdict: " << to_string(report.verdict) << " A = " << fmt15(report.scale)
            << "\n";
  summary.experiment = "";  // summary already written with the evidence bundle
  return summary;
}

Summary run_square_measure(const Ctx& ctx) {
  Metric metric = ctx.metric();
  MarkovMeasure<double> mu = ps_measure(metric);
  Summary summary{"square-measure"};
  CsvWriter csv(ctx.out / "square_measure.csv",
                {"g_letters", "max_abs_log_ratio", "pairs_checked"});
  int max_g = metric.is_standard() ? 5 : 4;
  int depth = metric.is_standard() ? 7 : 6;
  std::vector<AlmostInvarianceRow> rows = almost_invariance_report(mu, max_g, depth);
  for (const AlmostInvarianceRow& row : rows) {
    csv.cell(std::int64_t(row.g_letter_length)).cell(row.max_abs_log_ratio)
       .cell(row.pairs_checked);
    csv.end_row();
    double bound = metric.is_standard() ? 1e-9 : 10.0;
    summary.check_le("log_ratio_g" + std::to_string(row.g_letter_length),
                     row.max_abs_log_ratio, bound,
                     "max |log nu(g.rect)/nu(rect)| over separated rectangles");
  }
  if (rows.size() >= 2)
    summary.check_le("non_increasing_tail", rows.back().max_abs_log_ratio,
                     rows[rows.size() - 2].max_abs_log_ratio + 1e-12);
  return summary;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary representations of free groups: experiment runner"};
  app.require_subcommand(1);
  Ctx ctx;
  std::string cache_flag;
  app.add_option("--out", ctx.out, "Output directory")->capture_default_str();
  app.add_option("--cache-dir", cache_flag, "Cache directory (default $HYPBOUNDARY_CACHE_DIR)");
  app.add_option("--seed", ctx.seed, "Random seed (outputs are deterministic)");
  app.add_option("--cap", ctx.cap, "Enumeration cap")->capture_default_str();

  std::map<std::string, Summary (*)(const Ctx&)> runners = {
      {"growth", run_growth},        {"shadows", run_shadows},
      {"cones", run_cones},          {"l1norms", run_l1norms},
      {"boundedness", run_boundedness}, {"converge", run_converge},
      {"cyclicity", run_cyclicity},  {"projections", run_projections},
      {"green", run_green},          {"classify", run_classify},
      {"square-measure", run_square_measure}};
  for (auto& [name, fn] : runners) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();  // let --out etc. appear after the experiment name
    sub->add_option("--spec", ctx.spec_text, "Metric spec")->capture_default_str();
    sub->add_option("--spec1", ctx.spec1_text, "First metric spec (classify)");
    sub->add_option("--spec2", ctx.spec2_text, "Second metric spec (classify)");
    sub->add_option("--K", ctx.kernel, "Kernel (converge)")->capture_default_str();
    sub->add_option("--R", ctx.r_text, "Radius or range lo..hi")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    parse_range(ctx);
    ctx.cache_dir = resolve_cache_dir(cache_flag, ctx.out);
    std::string name = app.get_subcommands().front()->get_name();
    MetricSpec::parse(ctx.spec_text);  // validate early
    Summary summary = runners.at(name)(ctx);
    if (!summary.experiment.empty()) {
      std::string file = summary.experiment;
      for (char& c : file)
        if (c == '-') c = '_';
      write_summary(ctx.out / (file + "_summary.json"), summary);
    }
    bool ok = summary.all_pass();
    for (const Assertion& a : summary.assertions)
      if (!a.pass)
        std::cerr << "FAIL " << a.name << ": observed " << fmt15(a.observed) << " vs bound "
                  << fmt15(a.bound) << (a.note.empty() ? "" : " (" + a.note + ")") << "\n";
    std::cout << name << ": " << summary.assertions.size() << " assertions, "
              << (ok ? "pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EnumerationCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
