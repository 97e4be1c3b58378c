// brwsim: command-line front end for the simulation experiments.
//
// Exit status: 0 when the experiment's verdict passes, 2 when it fails,
// 1 on usage or resource errors.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brwsim/biggins.hpp"
#include "brwsim/error.hpp"
#include "brwsim/gaf.hpp"
#include "brwsim/harness.hpp"
#include "brwsim/io.hpp"
#include "brwsim/polya.hpp"
#include "brwsim/stats.hpp"
#include "brwsim/trees.hpp"
#include "brwsim/yule.hpp"

namespace fs = std::filesystem;
using namespace brwsim;
using io::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

// Keys for streams used only by the front end (null calibration and the like).
constexpr std::uint64_t kNullTag = 0x4e;
constexpr std::uint64_t kSampleTag = 0x51;

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  unsigned workers = harness::default_workers();

  [[nodiscard]] fs::path dir(const std::string& sub) const { return fs::path(out) / sub; }
};

struct LawOptions {
  std::string law_file;
  std::string pmf;
  std::string shift;

  [[nodiscard]] ClusterLaw resolve(const std::string& default_pmf,
                                   const std::string& default_shift) const {
    if (!law_file.empty()) return io::load_law(law_file);
    const std::string p = pmf.empty() ? default_pmf : pmf;
    const std::string s = shift.empty() ? default_shift : shift;
    return ClusterLaw::count_and_shift(io::parse_pmf(p), io::parse_pmf(s));
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Master seed");
  cmd->add_option("--out", c.out, "Output directory (default: $BRWSIM_OUTPUT_DIR or ./brwsim-out)");
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
}

void add_law(CLI::App* cmd, LawOptions& l) {
  cmd->add_option("--law", l.law_file, "JSON law document")->check(CLI::ExistingFile);
  cmd->add_option("--pmf", l.pmf, "Cluster size pmf, e.g. \"1:0.5,3:0.5\"");
  cmd->add_option("--shift", l.shift, "Child displacement pmf, e.g. \"0:0.5,1:0.5\"");
}

int emit(const fs::path& dir, const io::Verdict& verdict) {
  const Json doc = io::to_json(verdict);
  io::write_json(dir / "verdict.json", doc);
  std::cout << doc.dump(2) << '\n';
  return verdict.pass ? kExitPass : kExitFail;
}

double null_q99(std::size_t n, std::uint64_t seed) {
  Stream rng = derive_stream(seed, {kNullTag, n});
  return stats::ks_null_quantile(n, 0.99, 300, rng);
}

// ---------------------------------------------------------------- gw-clt

struct GwOptions {
  LawOptions law;
  std::size_t n = 16, h = 8, M = 10000, frozen = harness::kDefaultFrozenPaths;
  std::size_t sigma_replicates = 100000;
  double threshold = harness::kDefaultKsThreshold;
  double min_pass = 0.9;
  bool self_normalized = false;
};

int run_gw(const GwOptions& o, const Common& c) {
  const ClusterLaw law = o.law.resolve("1:0.5,3:0.5", "0:1");
  const fs::path dir = c.dir("gw-clt");
  const auto sigma2 = harness::estimate_sigma2(law, o.n + o.h, o.sigma_replicates, c.seed, c.workers);
  const harness::ConditionalExperiment ex{
      law, o.n, o.h, o.M,
      o.self_normalized ? harness::Statistic::GwSelfNormalized : harness::Statistic::GwResidual,
      0.0};
  const auto panel = harness::run_panel(ex, o.frozen, sigma2.value, c.seed, o.threshold, c.workers);

  io::CsvWriter csv(dir / "panel.csv",
                    {"frozen_path_id", "n_infty_hat", "target_variance", "ks", "p_value", "pass"});
  std::vector<double> ks;
  for (const auto& e : panel.entries) {
    csv.row({static_cast<double>(e.frozen_id), e.n_infty_hat, e.target_variance, e.ks.statistic,
             e.ks.p_value, e.pass ? 1.0 : 0.0});
    io::Verdict v{"gw:" + law.name(), o.n, o.M, o.h, e.frozen_id, harness::to_string(ex.statistic),
                  e.ks.statistic, e.ks.p_value, e.ks.target, e.pass};
    char name[32];
    std::snprintf(name, sizeof(name), "frozen_%03zu.json", e.frozen_id);
    io::write_json(dir / "verdicts" / name, io::to_json(v));
    ks.push_back(e.ks.statistic);
  }

  // Panel verdict: the ceil(min_pass * F)-th smallest KS distance must clear the threshold.
  std::sort(ks.begin(), ks.end());
  const auto rank = static_cast<std::size_t>(std::ceil(o.min_pass * static_cast<double>(ks.size())));
  const double quantile_ks = ks.empty() ? 0.0 : ks[std::min(ks.size(), std::max<std::size_t>(rank, 1)) - 1];
  io::Verdict v{"gw:" + law.name(), o.n, o.M, o.h, std::nullopt,
                harness::to_string(ex.statistic) + " panel", quantile_ks,
                stats::kolmogorov_pvalue(quantile_ks, static_cast<double>(o.M)),
                o.self_normalized ? "N(0, sigma2_hat)" : "N(0, sigma2_hat * N_infty_hat)",
                panel.pass_fraction >= o.min_pass};
  v.extra = {{"frozen_paths", o.frozen},
             {"pass_fraction", panel.pass_fraction},
             {"threshold", o.threshold},
             {"null_q99", null_q99(o.M, c.seed)},
             {"sigma2_hat", sigma2.value},
             {"sigma2_se", sigma2.standard_error},
             {"sigma2_closed_form", sigma2.closed_form},
             {"law", io::law_to_json(law)}};
  return emit(dir, v);
}

// ---------------------------------------------------------------- brw-fclt

struct FcltOptions {
  LawOptions law;
  std::size_t n = 20, h = 8, M = 4000, frozen = 20;
  std::string points = "0,0.5,-0.5";
  double radius = 1.0;
  int rings = 4, spokes = 16;
  double weight_tolerance = 0.05, covariance_tolerance = 0.10, min_pass = 0.9;
  std::size_t sigma_replicates = 100000;
};

int run_fclt(const FcltOptions& o, const Common& c) {
  const ClusterLaw law = o.law.resolve("1:0.5,3:0.5", "0:0.5,1:0.5");
  const fs::path dir = c.dir("brw-fclt");
  const auto points = io::parse_list(o.points);
  const auto sigma2 = harness::estimate_sigma2(law, o.n + o.h, o.sigma_replicates, c.seed, c.workers);

  io::CsvWriter csv(dir / "panel.csv", {"frozen_path_id", "n_infty_hat", "max_weight_deviation",
                                         "max_covariance_deviation", "pass"});
  std::size_t passed = 0;
  Json entries = Json::array();
  for (std::size_t f = 0; f < o.frozen; ++f) {
    const auto frozen = harness::freeze(law, o.n, c.seed, f);
    const auto r = harness::fdd_covariance_check(law, frozen, points, o.h, o.M, sigma2.value,
                                                 c.seed, c.workers);
    const bool ok = r.max_weight_deviation <= o.weight_tolerance &&
                    r.max_covariance_deviation <= o.covariance_tolerance;
    passed += ok ? 1 : 0;
    csv.row({static_cast<double>(f), r.n_infty_hat, r.max_weight_deviation,
             r.max_covariance_deviation, ok ? 1.0 : 0.0});
    if (f == 0) {
      io::write_json(dir / "frozen_000_covariance.json",
                     Json{{"points", r.points},
                          {"weight_sums", r.weight_sums},
                          {"weight_targets", r.weight_targets},
                          {"covariance", r.covariance},
                          {"covariance_target", r.covariance_target}});
      // Disk profile of D_n for one continuation of the first frozen path.
      Stream rng = derive_stream(c.seed, {kSampleTag, f});
      const auto profile = biggins::D_profile(frozen.cloud, o.n, law, o.h,
                                              biggins::disk_grid(o.radius, o.rings, o.spokes), rng);
      io::CsvWriter disk(dir / "disk_profile.csv", {"re_u", "im_u", "re_D", "im_D", "flag"});
      for (std::size_t i = 0; i < profile.points.size(); ++i) {
        disk.row({profile.points[i].real(), profile.points[i].imag(), profile.values[i].real(),
                  profile.values[i].imag(), profile.degenerate[i] ? 1.0 : 0.0});
      }
    }
  }
  const double fraction = o.frozen == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(o.frozen);
  io::Verdict v{"brw:" + law.name(), o.n, o.M, o.h, std::nullopt, "fdd_covariance panel",
                std::nullopt, std::nullopt, "sigma2_hat * N_infty_hat * exp(tau2 u v)",
                fraction >= o.min_pass};
  v.extra = {{"frozen_paths", o.frozen},
             {"pass_fraction", fraction},
             {"weight_tolerance", o.weight_tolerance},
             {"covariance_tolerance", o.covariance_tolerance},
             {"sigma2_hat", sigma2.value},
             {"tau2", model_params(law).tau2},
             {"law", io::law_to_json(law)}};
  return emit(dir, v);
}

// ---------------------------------------------------------------- gaf-check

struct GafOptions {
  double u = 0.5, v = 0.5, u_im = 0.0, v_im = 0.0;
  std::size_t M = 100000;
  double sigma = 1.0, tau = 1.0, n_infty = 1.0, radius = 1.0;
  double z_max = 3.0;
};

int run_gaf(const GafOptions& o, const Common& c) {
  const fs::path dir = c.dir("gaf-check");
  Stream rng = derive_stream(c.seed, {0});
  const Complex u(o.u, o.u_im), w(o.v, o.v_im);
  const auto check = gaf::covariance_check(u, w, o.M, rng);
  const auto& p = check.product;
  const double z_re = p.standard_error.real() > 0
                          ? (p.estimate.real() - p.target.real()) / p.standard_error.real()
                          : 0.0;
  const double z_im = p.standard_error.imag() > 0
                          ? (p.estimate.imag() - p.target.imag()) / p.standard_error.imag()
                          : 0.0;
  const double z = std::max(std::abs(z_re), std::abs(z_im));

  Stream krng = derive_stream(c.seed, {kSampleTag});
  const auto kernel = gaf::sample_limit_kernel(o.sigma, o.tau, o.n_infty, o.radius, krng);
  io::CsvWriter csv(dir / "gaf_profile.csv", {"re_u", "im_u", "re_xi", "im_xi"});
  for (const Complex& x : biggins::disk_grid(o.radius, 4, 16)) {
    const Complex val = kernel(x);
    csv.row({x.real(), x.imag(), val.real(), val.imag()});
  }

  io::Verdict v{"gaf", std::nullopt, o.M, std::nullopt, std::nullopt, "E[xi(u) xi(v)]",
                std::nullopt, std::erfc(z / std::sqrt(2.0)), "exp(u v)", z <= o.z_max};
  v.extra = {{"u", {o.u, o.u_im}},
             {"v", {o.v, o.v_im}},
             {"estimate", {p.estimate.real(), p.estimate.imag()}},
             {"standard_error", {p.standard_error.real(), p.standard_error.imag()}},
             {"target_value", {p.target.real(), p.target.imag()}},
             {"conjugate_estimate",
              {check.conjugate.estimate.real(), check.conjugate.estimate.imag()}},
             {"conjugate_target", {check.conjugate.target.real(), check.conjugate.target.imag()}},
             {"z_score", z}};
  return emit(dir, v);
}

// ---------------------------------------------------------------- yule-check

struct YuleOptions {
  std::size_t n = 10000, replicates = 10000;
  double lambda = 1.0;
  std::size_t burn_in = yule::kDefaultBurnIn, kendall_paths = 50, kendall_n = 100000;
  double threshold = 0.02, min_pass = 0.9;
};

int run_yule(const YuleOptions& o, const Common& c) {
  const fs::path dir = c.dir("yule-check");
  std::vector<double> limits(o.replicates);
  harness::parallel_for(o.replicates, c.workers, [&](std::size_t r) {
    Stream rng = derive_stream(c.seed, {1, r});
    limits[r] = yule::sample_times(o.n, o.lambda, rng).n_infty_estimate();
  });
  const auto ks = stats::ks_statistic(limits, [](double x) { return stats::exponential_cdf(x); },
                                      "Exp(1)");

  std::vector<stats::KsReport> kendall(o.kendall_paths);
  harness::parallel_for(o.kendall_paths, c.workers, [&](std::size_t p) {
    Stream rng = derive_stream(c.seed, {2, p});
    const auto t = yule::sample_times(o.kendall_n, o.lambda, rng);
    kendall[p] = yule::kendall_check(t, t.n_infty_estimate(), o.burn_in);
    if (p == 0) {
      io::CsvWriter csv(dir / "yule_times.csv", {"index", "T_n"});
      const auto times = t.times();
      for (std::size_t k = 0; k < times.size(); ++k) {
        csv.row({static_cast<double>(k + 1), times[k]});
      }
    }
  });
  const std::size_t spacings = o.kendall_n - o.burn_in;
  const double q99 = null_q99(spacings, c.seed);
  std::size_t passed = 0;
  for (const auto& k : kendall) passed += k.statistic <= q99 ? 1 : 0;
  const double fraction =
      o.kendall_paths == 0 ? 1.0 : static_cast<double>(passed) / static_cast<double>(o.kendall_paths);

  io::Verdict v{"yule", o.n, o.replicates, std::nullopt, std::nullopt, "n exp(-lambda T_n)",
                ks.statistic, ks.p_value, "Exp(1)",
                ks.statistic <= o.threshold && fraction >= o.min_pass};
  v.extra = {{"threshold", o.threshold},
             {"kendall_paths", o.kendall_paths},
             {"kendall_n", o.kendall_n},
             {"kendall_burn_in", o.burn_in},
             {"kendall_null_q99", q99},
             {"kendall_pass_fraction", fraction}};
  return emit(dir, v);
}

// ---------------------------------------------------------------- tree-bst / tree-rrt

struct TreeOptions {
  std::size_t n = 1000, big = 100000, replicates = 1000, traces = 3;
  double alpha = 0.05, threshold = 0.08;
};

int run_tree(trees::TreeKind kind, const TreeOptions& o, const Common& c) {
  const std::string name = "tree-" + trees::to_string(kind);
  const fs::path dir = c.dir(name);
  if (o.n < 2 || o.big <= o.n) throw InvalidArgument("need 2 <= n < big");
  const auto rows = harness::tree_checkpoints(kind, {o.n, o.big}, o.replicates, c.seed, c.workers);

  std::vector<double> residual, limit, regnier;
  std::size_t covered = 0;
  const double expected_n = trees::expected_path_length(o.n, kind);
  for (const auto& row : rows) {
    const double lim = trees::brw_value(row[1], o.big, kind);
    limit.push_back(lim);
    residual.push_back(harness::tree_residual(row[0], o.n, lim, kind));
    regnier.push_back(trees::regnier_value(row[0], o.n, kind, expected_n));
    const auto pi = trees::prediction_interval(static_cast<double>(row[0]), o.n, o.alpha, kind);
    covered += (lim >= pi.lower && lim <= pi.upper) ? 1 : 0;
  }
  const auto ks = stats::ks_statistic(residual, stats::normal(0.0, 1.0), "N(0,1)");
  const double coverage = static_cast<double>(covered) / static_cast<double>(rows.size());
  const auto indep = harness::joint_independence_check(residual, limit);

  for (std::size_t r = 0; r < std::min(o.traces, o.replicates); ++r) {
    // Regrow from the replicate's own stream to get its full trace.
    Stream rng = derive_stream(c.seed, {0x54, r});
    const trees::PathLengthTrace trace =
        kind == trees::TreeKind::Bst ? trees::grow_bst(o.n, rng).trace : trees::grow_rrt(o.n, rng).trace;
    const auto norm = trees::normalized_martingales(trace);
    io::CsvWriter csv(dir / ("trace_" + std::to_string(r) + ".csv"),
                      {"n", "path_length", "regnier", "brw_normalized"});
    for (std::size_t k = 0; k < trace.size(); ++k) {
      csv.row({static_cast<double>(k + 1), static_cast<double>(trace.path_length[k]),
               norm.regnier[k], norm.brw[k]});
    }
  }

  const auto res_mean = stats::mean_estimate(residual);
  const auto lim_mean = stats::mean_estimate(limit);
  const auto reg_mean = stats::mean_estimate(regnier);
  io::write_json(dir / "summary.json",
                 Json{{"kind", trees::to_string(kind)},
                      {"n", o.n},
                      {"big", o.big},
                      {"replicates", o.replicates},
                      {"residual_mean", res_mean.mean},
                      {"residual_variance", stats::sample_variance(residual)},
                      {"limit_mean", lim_mean.mean},
                      {"limit_variance", stats::sample_variance(limit)},
                      {"regnier_mean", reg_mean.mean},
                      {"regnier_variance", stats::sample_variance(regnier)},
                      {"alpha", o.alpha},
                      {"coverage", coverage},
                      {"residual_limit_correlation", indep.correlation},
                      {"ks", ks.statistic}});

  io::Verdict v{name, o.n, o.replicates, std::nullopt, std::nullopt,
                "sqrt(n/(tau2 ln n)) (limit surrogate - normalized path length)", ks.statistic,
                ks.p_value, "N(0,1)", ks.statistic <= o.threshold};
  v.extra = {{"threshold", o.threshold}, {"coverage", coverage}, {"big", o.big}};
  return emit(dir, v);
}

// ---------------------------------------------------------------- polya

struct PolyaOptions {
  std::uint64_t b = 2, r = 2, c = 2, n = 10000;
  std::size_t replicates = 20000;
  double alpha = 0.01, threshold = 0.02;
};

int run_polya(const PolyaOptions& o, const Common& c) {
  const fs::path dir = c.dir("polya");
  const auto law = polya::limit_law(o.b, o.r, o.c);
  std::vector<double> z(o.replicates);
  harness::parallel_for(o.replicates, c.workers, [&](std::size_t i) {
    Stream rng = derive_stream(c.seed, {i});
    z[i] = polya::draw_n(polya::UrnState::initial(o.b, o.r, o.c), o.n, rng).proportion();
  });
  const auto ks = stats::ks_statistic(
      z, [&](double x) { return stats::beta_cdf(x, law.alpha, law.beta); }, "Beta(b/c, r/c)");
  const auto mean = stats::mean_estimate(z);
  const double expected = static_cast<double>(o.b) / static_cast<double>(o.b + o.r);
  io::Verdict v{"polya", o.n, o.replicates, std::nullopt, std::nullopt, "Z_n", ks.statistic,
                ks.p_value, "Beta(" + io::format_double(law.alpha) + ", " +
                                io::format_double(law.beta) + ")",
                ks.statistic <= o.threshold};
  v.extra = {{"threshold", o.threshold},
             {"alpha", o.alpha},
             {"rejected_at_alpha", ks.p_value < o.alpha},
             {"mean", mean.mean},
             {"mean_se", mean.standard_error},
             {"expected_mean", expected}};
  return emit(dir, v);
}

// ---------------------------------------------------------------- predict

struct PredictOptions {
  std::string kind = "bst";
  std::size_t n = 0;
  double alpha = 0.05;
  double value = 0.0;
};

int run_predict(const PredictOptions& o) {
  const auto kind = trees::parse_tree_kind(o.kind);
  const auto pi = trees::prediction_interval(o.value, o.n, o.alpha, kind);
  const Json doc{{"kind", o.kind},      {"n", o.n},
                 {"alpha", o.alpha},    {"path_length", o.value},
                 {"center", pi.center}, {"half_width", pi.half_width},
                 {"theta_minus", pi.lower}, {"theta_plus", pi.upper}};
  std::cout << doc.dump(2) << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"brwsim: branching random walk simulations and limit-theorem checks"};
  app.require_subcommand(1);
  // "--h" is the continuation horizon, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  Common common;
  if (const char* env = std::getenv("BRWSIM_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    common.out = env;
  } else {
    common.out = "brwsim-out";
  }

  std::function<int()> run;

  GwOptions gw;
  auto* gw_cmd = app.add_subcommand("gw-clt", "Conditional Galton-Watson CLT over frozen paths");
  add_common(gw_cmd, common);
  add_law(gw_cmd, gw.law);
  gw_cmd->add_option("--n", gw.n, "Frozen generation");
  gw_cmd->add_option("--h", gw.h, "Continuation horizon");
  gw_cmd->add_option("--M", gw.M, "Continuations per frozen path")->check(CLI::Range(2u, 100000000u));
  gw_cmd->add_option("--frozen", gw.frozen, "Number of frozen paths");
  gw_cmd->add_option("--threshold", gw.threshold, "KS threshold per path");
  gw_cmd->add_option("--min-pass", gw.min_pass, "Required fraction of passing paths");
  gw_cmd->add_option("--sigma-replicates", gw.sigma_replicates, "Replicates for the sigma^2 oracle");
  gw_cmd->add_flag("--self-normalized", gw.self_normalized, "Divide by sqrt(N_infty) per continuation");
  gw_cmd->callback([&] { run = [&] { return run_gw(gw, common); }; });

  FcltOptions fclt;
  auto* fclt_cmd = app.add_subcommand("brw-fclt", "Weight sums and conditional covariance of D_n");
  add_common(fclt_cmd, common);
  add_law(fclt_cmd, fclt.law);
  fclt_cmd->add_option("--n", fclt.n, "Frozen generation");
  fclt_cmd->add_option("--h", fclt.h, "Continuation horizon");
  fclt_cmd->add_option("--M", fclt.M, "Continuations per frozen path");
  fclt_cmd->add_option("--frozen", fclt.frozen, "Number of frozen paths");
  fclt_cmd->add_option("--points", fclt.points, "Real grid points, comma separated");
  fclt_cmd->add_option("--radius", fclt.radius, "Disk radius for the profile dump");
  fclt_cmd->add_option("--rings", fclt.rings, "Rings in the profile grid");
  fclt_cmd->add_option("--spokes", fclt.spokes, "Spokes in the profile grid");
  fclt_cmd->add_option("--weight-tolerance", fclt.weight_tolerance, "Relative tolerance on weight sums");
  fclt_cmd->add_option("--covariance-tolerance", fclt.covariance_tolerance,
                       "Relative tolerance on covariance entries");
  fclt_cmd->add_option("--min-pass", fclt.min_pass, "Required fraction of passing paths");
  fclt_cmd->add_option("--sigma-replicates", fclt.sigma_replicates, "Replicates for the sigma^2 oracle");
  fclt_cmd->callback([&] { run = [&] { return run_fclt(fclt, common); }; });

  GafOptions gafo;
  auto* gaf_cmd = app.add_subcommand("gaf-check", "Covariance of the Gaussian analytic function");
  add_common(gaf_cmd, common);
  gaf_cmd->add_option("--u", gafo.u, "Real part of u");
  gaf_cmd->add_option("--v", gafo.v, "Real part of v");
  gaf_cmd->add_option("--u-im", gafo.u_im, "Imaginary part of u");
  gaf_cmd->add_option("--v-im", gafo.v_im, "Imaginary part of v");
  gaf_cmd->add_option("--M", gafo.M, "Samples (>= 10000)");
  gaf_cmd->add_option("--sigma", gafo.sigma, "Kernel sigma for the profile dump");
  gaf_cmd->add_option("--tau", gafo.tau, "Kernel tau for the profile dump");
  gaf_cmd->add_option("--n-infty", gafo.n_infty, "Frozen N_infty for the profile dump");
  gaf_cmd->add_option("--radius", gafo.radius, "Profile radius");
  gaf_cmd->callback([&] { run = [&] { return run_gaf(gafo, common); }; });

  YuleOptions yo;
  auto* yule_cmd = app.add_subcommand("yule-check", "Yule limit law and Kendall spacings");
  add_common(yule_cmd, common);
  yule_cmd->add_option("--n", yo.n, "Births per replicate");
  yule_cmd->add_option("--replicates", yo.replicates, "Replicates for the Exp(1) check");
  yule_cmd->add_option("--lambda", yo.lambda, "Split rate");
  yule_cmd->add_option("--burn-in", yo.burn_in, "Kendall burn-in index");
  yule_cmd->add_option("--kendall-paths", yo.kendall_paths, "Paths in the Kendall panel");
  yule_cmd->add_option("--kendall-n", yo.kendall_n, "Births per Kendall path");
  yule_cmd->add_option("--threshold", yo.threshold, "KS threshold for the Exp(1) check");
  yule_cmd->callback([&] { run = [&] { return run_yule(yo, common); }; });

  TreeOptions bst_o, rrt_o;
  for (auto [cmd_name, opts, kind] :
       {std::tuple{"tree-bst", &bst_o, trees::TreeKind::Bst},
        std::tuple{"tree-rrt", &rrt_o, trees::TreeKind::Rrt}}) {
    auto* cmd = app.add_subcommand(cmd_name, "Path-length CLT, prediction coverage, traces");
    add_common(cmd, common);
    cmd->add_option("--n", opts->n, "Tree size for the residual");
    cmd->add_option("--big", opts->big, "Tree size of the limit surrogate");
    cmd->add_option("--replicates", opts->replicates, "Independent trees");
    cmd->add_option("--alpha", opts->alpha, "Prediction interval level");
    cmd->add_option("--threshold", opts->threshold, "KS threshold");
    cmd->add_option("--traces", opts->traces, "Number of trace CSV files");
    cmd->callback([&, opts = opts, kind = kind] {
      run = [&, opts, kind] { return run_tree(kind, *opts, common); };
    });
  }

  PolyaOptions po;
  auto* polya_cmd = app.add_subcommand("polya", "Polya urn limit law");
  add_common(polya_cmd, common);
  polya_cmd->add_option("--b", po.b, "Initial black balls")->check(CLI::PositiveNumber);
  polya_cmd->add_option("--r", po.r, "Initial red balls")->check(CLI::PositiveNumber);
  polya_cmd->add_option("--c", po.c, "Balls added per draw")->check(CLI::PositiveNumber);
  polya_cmd->add_option("--n", po.n, "Draws per urn");
  polya_cmd->add_option("--replicates", po.replicates, "Independent urns");
  polya_cmd->add_option("--alpha", po.alpha, "Significance level reported for the KS p-value");
  polya_cmd->add_option("--threshold", po.threshold, "KS threshold");
  polya_cmd->callback([&] { run = [&] { return run_polya(po, common); }; });

  PredictOptions pr;
  auto* predict_cmd = app.add_subcommand("predict", "Prediction interval for the path-length limit");
  predict_cmd->add_option("--kind", pr.kind, "bst or rrt")->check(CLI::IsMember({"bst", "rrt"}));
  predict_cmd->add_option("--n", pr.n, "Tree size")->required();
  predict_cmd->add_option("--alpha", pr.alpha, "Level, 0 < alpha < 1");
  auto* value = predict_cmd->add_option("--epl", pr.value, "Observed EPL_n (bst)");
  predict_cmd->add_option("--ipl", pr.value, "Observed IPL_n (rrt)")->excludes(value);
  predict_cmd->callback([&] { run = [&] { return run_predict(pr); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return run();
  } catch (const BudgetExceeded& e) {
    std::cerr << Json{{"error", "budget_exceeded"},
                      {"requested", e.requested()},
                      {"budget", e.budget()},
                      {"message", e.what()}}
                     .dump()
              << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "invalid_input"}, {"message", e.what()}}.dump() << '\n';
    return kExitUsage;
  }
}
