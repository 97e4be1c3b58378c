// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Usage: acceptance [criterion ...]   (default: all of 1..10)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "brwsim/biggins.hpp"
#include "brwsim/brw.hpp"
#include "brwsim/gaf.hpp"
#include "brwsim/harness.hpp"
#include "brwsim/polya.hpp"
#include "brwsim/stats.hpp"
#include "brwsim/trees.hpp"
#include "brwsim/yule.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace brwsim;
using brwsim::testing::binary_lattice;
using brwsim::testing::builtin_laws;
using brwsim::testing::coin_cluster;

namespace {

constexpr std::uint64_t kSeed = 20240611;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects sub-checks of one criterion and prints their details.
class Criterion {
 public:
  Criterion(int id, std::string title, double budget_seconds)
      : id_(id), title_(std::move(title)), budget_(budget_seconds), start_(Clock::now()) {}

  void check(bool ok, const char* format, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    std::printf("    [%s] %s\n", ok ? "ok" : "FAIL", buf);
    std::fflush(stdout);
    pass_ = pass_ && ok;
  }

  void note(const char* format, ...) __attribute__((format(printf, 2, 3))) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    std::printf("    [info] %s\n", buf);
    std::fflush(stdout);
  }

  bool finish() {
    const double elapsed = seconds_since(start_);
    check(elapsed <= budget_, "elapsed %.1f s (budget %.0f s)", elapsed, budget_);
    std::printf("%s criterion %d: %s\n", pass_ ? "PASS" : "FAIL", id_, title_.c_str());
    std::fflush(stdout);
    return pass_;
  }

 private:
  int id_;
  std::string title_;
  double budget_;
  Clock::time_point start_;
  bool pass_ = true;
};

unsigned workers() { return harness::default_workers(); }

// ---------------------------------------------------------------- 1

bool exact_identities() {
  Criterion c(1, "exact identities", 4.0);

  auto t = Clock::now();
  double worst_w = 0.0;
  for (const auto& law : builtin_laws()) {
    for (std::size_t n = 0; n <= 10; ++n) {
      Stream rng = derive_stream(kSeed, {1, n});
      const auto traj = simulate(law, n, rng);
      const double expected = gw_normalized_count(traj, law.mean_count());
      const auto w = biggins::eval_W(traj, law, 0.0);
      worst_w = std::max(worst_w, std::abs(w.value - expected) / expected);
    }
  }
  c.check(worst_w <= 1e-12 && seconds_since(t) < 1.0, "W_n(0) = N_n/m^n: max rel. error %.2e (%.2f s)",
          worst_w, seconds_since(t));

  t = Clock::now();
  const std::vector<Complex> betas{0.0, 0.5, -0.5, Complex(0.3, 0.4), Complex(0.0, -0.5)};
  double worst_d = 0.0;
  bool genealogy = true;
  std::size_t cases = 0, skipped = 0;
  for (const auto& law : builtin_laws()) {
    for (std::size_t n : {0u, 2u, 5u, 10u}) {
      for (std::size_t l : {0u, 1u, 3u, 6u}) {
        // Both sides hold every particle of generation n + l; cap at ~2e5.
        if (std::pow(law.mean_count(), static_cast<double>(n + l)) > 2e5) {
          ++skipped;
          continue;
        }
        Stream rng = derive_stream(kSeed, {2, n, l});
        const auto traj = simulate(law, n, rng, {kDefaultParticleBudget, true});
        for (Complex b : betas) {
          Stream cont = derive_stream(kSeed, {3, n, l});
          const auto r = biggins::decomposition_check(traj, law, l, b, cont);
          worst_d = std::max(worst_d, r.relative_error);
          genealogy = genealogy && r.genealogy_consistent;
          ++cases;
        }
      }
    }
  }
  c.check(worst_d <= 1e-10 && genealogy && seconds_since(t) < 1.0,
          "decomposition over %zu cases (n <= 10, l <= 6, |beta| <= 0.5): max rel. residual %.2e "
          "(%.2f s)",
          cases, worst_d, seconds_since(t));
  c.note("%zu (law, n, l) combinations above 2e5 expected particles were not run", skipped);

  t = Clock::now();
  double worst_c = 0.0;
  for (const auto& law : builtin_laws()) {
    const ModelParams p = model_params(law);
    for (std::size_t n = 1; n <= 10; ++n) {
      Stream rng = derive_stream(kSeed, {4, n});
      const auto traj = simulate(law, n, rng);
      worst_c = std::max(worst_c, biggins::check_derivative(traj, law, p).error);
    }
  }
  c.check(worst_c <= 1e-8 && seconds_since(t) < 1.0,
          "contour derivative vs direct L_n: max error %.2e (%.2f s)", worst_c, seconds_since(t));

  t = Clock::now();
  double worst_y = 0.0;
  for (std::size_t n : {1u, 2u, 10u, 1000u, 1000000u}) {
    worst_y = std::max(worst_y, std::abs(yule::moment_product(n, 1.0).exact - 1.0));
  }
  const double r2 = yule::moment_product(10, 2.0).exact;
  c.check(worst_y <= 1e-12 && std::abs(r2 - 20.0 / 11.0) <= 1e-12 && seconds_since(t) < 1.0,
          "moment product: r=1 max |x-1| %.1e, r=2 n=10 %.15f vs 20/11", worst_y, r2);
  return c.finish();
}

// ---------------------------------------------------------------- 2

bool closed_form_means() {
  Criterion c(2, "closed-form means at 1e5 replicates", 60.0);
  constexpr std::size_t M = 100000;
  const auto law = coin_cluster();
  const ModelParams p = model_params(law);
  constexpr std::size_t n = 10;
  constexpr double beta = 0.3;

  std::vector<double> w(M), l(M), s(M);
  harness::parallel_for(M, workers(), [&](std::size_t i) {
    Stream rng = derive_stream(kSeed, {10, i});
    const auto h = simulate_histogram(law, n, rng);
    w[i] = biggins::eval_W(h, n, law, beta).value.real();
    l[i] = biggins::L_n(h.total(), h.position_sum(), n, p);
    s[i] = h.position_sum();
  });
  const auto report = [&](const char* what, const std::vector<double>& v, double target) {
    const auto e = stats::mean_estimate(v);
    c.check(e.within(target, 3.0), "%s: %.6f vs %.6f (z = %+.2f)", what, e.mean, target,
            e.z_score(target));
  };
  report("E W_10(0.3)", w, 1.0);
  report("E L_10", l, 0.0);
  report("E S_10 / (d n m^n)", [&] {
    std::vector<double> scaled(s);
    const double norm = p.d * n * std::pow(p.m, n);
    for (double& x : scaled) x /= norm;
    return scaled;
  }(), 1.0);

  constexpr std::uint64_t b = 2, r = 3, cc = 1;
  std::vector<double> z(M);
  harness::parallel_for(M, workers(), [&](std::size_t i) {
    Stream rng = derive_stream(kSeed, {11, i});
    z[i] = polya::draw_n(polya::UrnState::initial(b, r, cc), 100, rng).proportion();
  });
  report("E Z_100 urn (2,3,1)", z, 0.4);

  std::vector<double> epl(M), ipl(M);
  harness::parallel_for(M, workers(), [&](std::size_t i) {
    Stream rng = derive_stream(kSeed, {12, i});
    epl[i] = static_cast<double>(trees::path_lengths_at(trees::TreeKind::Bst, {3}, rng)[0]);
    Stream rng2 = derive_stream(kSeed, {13, i});
    ipl[i] = static_cast<double>(trees::path_lengths_at(trees::TreeKind::Rrt, {3}, rng2)[0]);
  });
  report("E EPL_3", epl, 26.0 / 3.0);
  report("E IPL_3", ipl, 2.5);
  return c.finish();
}

// ---------------------------------------------------------------- 3

bool gaf_suite() {
  Criterion c(3, "Gaussian analytic function", 60.0);
  constexpr std::size_t M = 100000;
  const std::vector<std::pair<Complex, Complex>> pairs{{0.0, 0.0}, {0.5, 0.5}, {1.0, -1.0}};
  std::uint64_t key = 0;
  for (const auto& [u, v] : pairs) {
    Stream rng = derive_stream(kSeed, {20, key++});
    const auto r = gaf::covariance_check(u, v, M, rng).product;
    const double z = (r.estimate.real() - r.target.real()) / r.standard_error.real();
    c.check(std::abs(z) <= 3.0 && std::abs(r.estimate.imag()) == 0.0,
            "E xi(%g) xi(%g) = %.5f vs e^{uv} = %.5f (z = %+.2f)", u.real(), v.real(),
            r.estimate.real(), r.target.real(), z);
  }
  {
    Stream rng = derive_stream(kSeed, {21});
    const auto s = gaf::stationarity_check(0.0, 1.0, M, rng);
    const double z = (s.estimate - s.target) / s.standard_error;
    c.check(std::abs(z) <= 3.0, "stationary covariance at gap 1: %.5f vs %.5f (z = %+.2f)",
            s.estimate, s.target, z);
    Stream rng2 = derive_stream(kSeed, {22});
    const auto s2 = gaf::stationarity_check(-0.75, 0.25, M, rng2);
    const double z2 = (s2.estimate - s2.target) / s2.standard_error;
    c.check(std::abs(z2) <= 3.0, "stationary covariance at gap 1, shifted: %.5f vs %.5f (z = %+.2f)",
            s2.estimate, s2.target, z2);
  }
  std::vector<double> at0(M), d0(M);
  for (std::size_t i = 0; i < M; ++i) {
    Stream rng = derive_stream(kSeed, {23, i});
    const auto g = gaf::sample_gaf(0.5, rng);
    at0[i] = g(0.0).real();
    d0[i] = g.derivative(0.0).real();
  }
  const auto k0 = stats::ks_statistic(at0, stats::normal(0.0, 1.0));
  const auto k1 = stats::ks_statistic(d0, stats::normal(0.0, 1.0));
  c.check(k0.statistic <= 0.01, "xi(0) KS vs N(0,1): %.4f", k0.statistic);
  c.check(k1.statistic <= 0.01, "xi'(0) KS vs N(0,1): %.4f", k1.statistic);
  return c.finish();
}

// ---------------------------------------------------------------- 4

bool yule_suite() {
  Criterion c(4, "Yule limit and Kendall spacings", 120.0);
  constexpr std::size_t n = 10000, reps = 10000;
  std::vector<double> limits(reps);
  harness::parallel_for(reps, workers(), [&](std::size_t r) {
    Stream rng = derive_stream(kSeed, {30, r});
    limits[r] = yule::sample_times(n, 1.0, rng).n_infty_estimate();
  });
  const auto ks = stats::ks_statistic(limits, [](double x) { return stats::exponential_cdf(x); });
  c.check(ks.statistic <= 0.02, "n e^{-T_n} KS vs Exp(1): %.4f", ks.statistic);

  constexpr std::size_t paths = 50, kn = 100000, burn = yule::kDefaultBurnIn;
  Stream null_rng = derive_stream(kSeed, {31});
  const double q99 = stats::ks_null_quantile(kn - burn, 0.99, 300, null_rng);
  std::vector<double> d(paths);
  harness::parallel_for(paths, workers(), [&](std::size_t p) {
    Stream rng = derive_stream(kSeed, {32, p});
    const auto t = yule::sample_times(kn, 1.0, rng);
    d[p] = yule::kendall_check(t, t.n_infty_estimate(), burn).statistic;
  });
  const auto passed = std::count_if(d.begin(), d.end(), [&](double x) { return x <= q99; });
  c.check(passed >= 45, "Kendall spacings under the null 99%% KS quantile %.4f: %ld/%zu paths", q99,
          static_cast<long>(passed), paths);
  return c.finish();
}

// ---------------------------------------------------------------- 5

bool conditional_gw_clt() {
  Criterion c(5, "conditional Galton-Watson CLT", 600.0);
  const auto law = ClusterLaw::count_and_shift(FinitePmf::from_pairs({{1.0, 0.5}, {3.0, 0.5}}),
                                               FinitePmf::point_mass(0.0));
  const auto sigma2 = harness::estimate_sigma2(law, 24, 100000, kSeed, workers());
  c.note("sigma2_hat = %.4f +- %.4f (closed form %.4f)", sigma2.value, sigma2.standard_error,
         sigma2.closed_form);
  for (auto stat : {harness::Statistic::GwResidual, harness::Statistic::GwSelfNormalized}) {
    const harness::ConditionalExperiment ex{law, 16, 8, 10000, stat, 0.0};
    const auto panel = harness::run_panel(ex, 50, sigma2.value, kSeed, 0.03, workers());
    double worst = 0.0;
    for (const auto& e : panel.entries) worst = std::max(worst, e.ks.statistic);
    c.check(panel.pass_fraction >= 0.9, "%s: %.0f%% of 50 paths with KS <= 0.03 (max %.4f)",
            harness::to_string(stat).c_str(), 100.0 * panel.pass_fraction, worst);
  }
  return c.finish();
}

// ---------------------------------------------------------------- 6

bool fclt_covariance() {
  Criterion c(6, "finite-dimensional covariance of D_n", 600.0);
  const std::vector<std::pair<double, double>> uv{{0.0, 0.0}, {0.5, 0.5}, {0.5, -0.5}};
  constexpr std::size_t n = 20;

  {
    const auto law = binary_lattice();
    const double tau2 = model_params(law).tau2;
    const auto frozen = harness::freeze(law, n, kSeed, 0);
    double worst = 0.0;
    for (const auto& [u, v] : uv) {
      const double target = frozen.normalized_count * std::exp(tau2 * u * v);
      const double ws = harness::weight_sum(frozen.cloud, n, law, u, v);
      worst = std::max(worst, std::abs(ws / target - 1.0));
      c.note("delta_0+delta_1 weight sum (%g, %g): %.6f vs %.6f", u, v, ws, target);
    }
    c.check(worst <= 0.05, "delta_0+delta_1 weight sums within 5%%: max deviation %.2e", worst);
  }

  // The covariance needs sigma^2 > 0; the coin-shift law has the same intensity.
  const auto law = coin_cluster();
  const auto sigma2 = harness::estimate_sigma2(law, 24, 100000, kSeed, workers());
  constexpr std::size_t frozen_paths = 20, M = 4000, h = 8;
  std::size_t cov_ok = 0, weight_ok = 0;
  double worst_cov = 0.0;
  for (std::size_t f = 0; f < frozen_paths; ++f) {
    const auto frozen = harness::freeze(law, n, kSeed, f);
    const auto r = harness::fdd_covariance_check(law, frozen, {0.0, 0.5, -0.5}, h, M, sigma2.value,
                                                 kSeed, workers());
    cov_ok += r.max_covariance_deviation <= 0.10 ? 1 : 0;
    weight_ok += r.max_weight_deviation <= 0.05 ? 1 : 0;
    worst_cov = std::max(worst_cov, r.max_covariance_deviation);
  }
  c.note("coin-shift law weight sums within 5%%: %zu/%zu paths", weight_ok, frozen_paths);
  c.check(cov_ok * 10 >= frozen_paths * 9,
          "coin-shift law covariance within 10%% entrywise: %zu/%zu paths (worst %.3f)", cov_ok,
          frozen_paths, worst_cov);
  return c.finish();
}

// ---------------------------------------------------------------- trees (7, 9, 10)

// Path lengths at these checkpoints for 5 batches of 1e4 trees per kind.
const std::vector<std::size_t> kTreeCheckpoints{100, 316, 1000, 10000, 100000};
constexpr std::size_t kTreeBatches = 5, kTreeBatchSize = 10000;

struct TreeData {
  std::vector<std::vector<std::uint64_t>> rows;  // kTreeBatches * kTreeBatchSize rows
};

const TreeData& tree_data(trees::TreeKind kind) {
  static TreeData bst, rrt;
  TreeData& d = kind == trees::TreeKind::Bst ? bst : rrt;
  if (d.rows.empty()) {
    const auto t = Clock::now();
    d.rows = harness::tree_checkpoints(kind, kTreeCheckpoints, kTreeBatches * kTreeBatchSize,
                                       kSeed + (kind == trees::TreeKind::Bst ? 0 : 1), workers());
    std::printf("    [info] grew %zu %s trees to 1e5 in %.0f s\n", d.rows.size(),
                trees::to_string(kind).c_str(), seconds_since(t));
  }
  return d;
}

std::vector<double> residuals(trees::TreeKind kind, std::size_t checkpoint, std::size_t first,
                              std::size_t count) {
  const auto& rows = tree_data(kind).rows;
  const std::size_t big = kTreeCheckpoints.size() - 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t r = first; r < first + count; ++r) {
    const double limit = trees::brw_value(rows[r][big], kTreeCheckpoints[big], kind);
    out.push_back(harness::tree_residual(rows[r][checkpoint], kTreeCheckpoints[checkpoint], limit, kind));
  }
  return out;
}

bool tree_clts() {
  Criterion c(7, "tree CLTs", 900.0);
  for (auto kind : {trees::TreeKind::Bst, trees::TreeKind::Rrt}) {
    std::vector<double> medians;
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<double> ks;
      for (std::size_t b = 0; b < kTreeBatches; ++b) {
        ks.push_back(stats::ks_statistic(residuals(kind, k, b * kTreeBatchSize, kTreeBatchSize),
                                         stats::normal(0.0, 1.0))
                         .statistic);
      }
      medians.push_back(stats::median(ks));
    }
    const char* name = kind == trees::TreeKind::Bst ? "BST" : "RRT";
    c.check(medians[2] <= 0.08, "%s KS at n = 1e3: %.4f", name, medians[2]);
    c.check(medians[0] > medians[1] && medians[1] > medians[2],
            "%s median KS decreasing over n = 1e2, 10^2.5, 1e3: %.4f, %.4f, %.4f", name, medians[0],
            medians[1], medians[2]);
  }
  return c.finish();
}

double coverage(std::size_t checkpoint, std::size_t count, double alpha) {
  const auto kind = trees::TreeKind::Bst;
  const auto& rows = tree_data(kind).rows;
  const std::size_t big = kTreeCheckpoints.size() - 1;
  std::size_t covered = 0;
  for (std::size_t r = 0; r < count; ++r) {
    const double limit = trees::brw_value(rows[r][big], kTreeCheckpoints[big], kind);
    const auto pi = trees::prediction_interval(static_cast<double>(rows[r][checkpoint]),
                                               kTreeCheckpoints[checkpoint], alpha, kind);
    covered += (limit >= pi.lower && limit <= pi.upper) ? 1 : 0;
  }
  return static_cast<double>(covered) / static_cast<double>(count);
}

bool prediction_coverage() {
  Criterion c(9, "prediction-interval coverage", 900.0);
  constexpr double alpha = 0.05;
  const double cov = coverage(2, 1000, alpha);
  c.check(cov >= 0.90 && cov <= 1.00, "BST n = 1e3 coverage over 1e3 replicates: %.3f", cov);
  const double c100 = coverage(0, kTreeBatchSize, alpha);
  const double c316 = coverage(1, kTreeBatchSize, alpha);
  const double c1000 = coverage(2, kTreeBatchSize, alpha);
  const double e100 = std::abs(c100 - (1 - alpha)), e316 = std::abs(c316 - (1 - alpha)),
               e1000 = std::abs(c1000 - (1 - alpha));
  c.check(e100 >= e316 && e316 >= e1000,
          "|coverage - 0.95| over 1e4 replicates non-increasing: %.4f (1e2), %.4f (10^2.5), %.4f (1e3)",
          e100, e316, e1000);
  return c.finish();
}

bool independence() {
  Criterion c(10, "residual independent of the limit", 300.0);
  constexpr std::size_t M = 1000;
  const std::size_t big = kTreeCheckpoints.size() - 1;
  for (auto kind : {trees::TreeKind::Bst, trees::TreeKind::Rrt}) {
    const auto& rows = tree_data(kind).rows;
    const char* name = kind == trees::TreeKind::Bst ? "BST" : "RRT";
    for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
      std::vector<double> limit;
      for (std::size_t r = 0; r < M; ++r) {
        limit.push_back(trees::brw_value(rows[r][big], kTreeCheckpoints[big], kind));
      }
      const auto res = residuals(kind, k, 0, M);
      const auto rep = harness::joint_independence_check(res, limit);
      if (kTreeCheckpoints[k] == 1000) {
        c.check(rep.pass, "%s n = 1e3: |corr| = %.4f vs 3/sqrt(M) = %.4f", name,
                std::abs(rep.correlation), rep.threshold);
      } else {
        c.note("%s n = 1e4: |corr| = %.4f vs 3/sqrt(M) = %.4f", name, std::abs(rep.correlation),
               rep.threshold);
      }
    }
  }
  return c.finish();
}

// ---------------------------------------------------------------- 8

bool polya_suite() {
  Criterion c(8, "Polya urn", 120.0);
  constexpr std::uint64_t b = 2, r = 2, cc = 2;
  {
    constexpr std::size_t M = 20000;
    std::vector<double> z(M);
    harness::parallel_for(M, workers(), [&](std::size_t i) {
      Stream rng = derive_stream(kSeed, {80, i});
      z[i] = polya::draw_n(polya::UrnState::initial(b, r, cc), 10000, rng).proportion();
    });
    const auto law = polya::limit_law(b, r, cc);
    const auto ks = stats::ks_statistic(
        z, [&](double x) { return stats::beta_cdf(x, law.alpha, law.beta); });
    c.check(ks.statistic <= 0.02, "Z_1e4 KS vs Beta(1, 1) over %zu urns: %.4f", M, ks.statistic);
  }
  {
    Stream rng = derive_stream(kSeed, {81});
    const auto ks = polya::beta_clt_check(3000.0, 7000.0, 100000, rng);
    c.check(ks.statistic <= 0.02, "Beta(3e3, 7e3) CLT KS: %.4f", ks.statistic);
  }
  {
    constexpr std::size_t paths = 50;
    std::size_t passed = 0;
    double worst = 0.0;
    for (std::size_t p = 0; p < paths; ++p) {
      Stream rng = derive_stream(kSeed, {82, p});
      const auto a = polya::asw_check(b, r, cc, 10000, 100000, rng);
      passed += a.ks.statistic <= 0.03 ? 1 : 0;
      worst = std::max(worst, a.ks.statistic);
    }
    c.check(passed * 10 >= paths * 9, "conditional panel: %zu/%zu paths with KS <= 0.03 (max %.4f)",
            passed, paths, worst);
  }
  {
    constexpr std::size_t M = 100000;
    const double tol = 4.0 / std::sqrt(static_cast<double>(M));
    double worst_sim = 0.0, worst_enum = 0.0;
    for (std::uint64_t n : {1u, 5u, 12u}) {
      for (auto [bb, rr, c0] : {std::tuple{1u, 1u, 1u}, std::tuple{2u, 1u, 3u}}) {
        const auto exact = polya::exact_black_law(bb, rr, c0, n);
        const auto enumerated = oracle::polya_sequence_enumeration(bb, rr, c0, n);
        std::vector<double> freq(exact.size(), 0.0);
        for (std::size_t i = 0; i < M; ++i) {
          Stream rng = derive_stream(kSeed, {83, n, bb, i});
          const auto s = polya::draw_n(polya::UrnState::initial(bb, rr, c0), n, rng);
          freq[(s.black - bb) / c0] += 1.0 / M;
        }
        for (std::size_t k = 0; k < exact.size(); ++k) {
          worst_sim = std::max(worst_sim, std::abs(freq[k] - exact[k]));
          worst_enum = std::max(worst_enum, std::abs(enumerated[k] - exact[k]));
        }
      }
    }
    c.check(worst_enum <= 1e-12, "dynamic programme vs sequence enumeration: max %.1e", worst_enum);
    c.check(worst_sim <= tol, "simulation vs dynamic programme: max cell error %.4f <= %.4f",
            worst_sim, tol);
  }
  return c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<bool()>> criteria{
      exact_identities, closed_form_means, gaf_suite,   yule_suite,          conditional_gw_clt,
      fclt_covariance,  tree_clts,         polya_suite, prediction_coverage, independence};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= 10; ++i) selected.insert(i);
  }
  int failed = 0;
  std::vector<int> failures;
  for (int id : selected) {
    if (id < 1 || id > 10) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    if (!criteria[id - 1]()) failures.push_back(id);
  }
  failed = static_cast<int>(failures.size());
  std::printf("\n%zu/%zu criteria passed", selected.size() - failures.size(), selected.size());
  if (failed > 0) {
    std::printf("; failed:");
    for (int id : failures) std::printf(" %d", id);
  }
  std::printf("\n");
  return failed == 0 ? 0 : 1;
}
