#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "brwsim/brw.hpp"
#include "brwsim/cluster_law.hpp"
#include "brwsim/stats.hpp"
#include "brwsim/trees.hpp"

namespace brwsim::harness {

inline constexpr std::size_t kDefaultFrozenPaths = 50;
inline constexpr double kDefaultKsThreshold = 0.03;

unsigned default_workers();

/// Runs body(i) for i in [0, count) on `workers` threads. Each index must
/// write only its own output slot; draws must come from streams keyed by i.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

/// One realization of the process up to generation n, kept as a position
/// histogram (exchangeable particles at one site are indistinguishable).
struct FrozenPath {
  std::size_t id = 0;
  std::size_t n = 0;
  PositionHistogram cloud;
  double normalized_count = 0;  // N_n / m^n, the frozen-path estimate of N_inf
};

FrozenPath freeze(const ClusterLaw& law, std::size_t n, std::uint64_t seed, std::size_t id);

enum class Statistic {
  GwResidual,        // m^{n/2} (N_{n+h}/m^{n+h} - N_n/m^n)
  GwSelfNormalized,  // the residual divided by sqrt(N_{n+h}/m^{n+h})
  Derivative,        // m^{n/2} (L_{n+h} - L_n) / sqrt(n)
  DiskPoint,         // Re D_n(u) at a real u
};

std::string to_string(Statistic s);

struct ConditionalExperiment {
  ClusterLaw law;
  std::size_t n = 16;
  std::size_t horizon = 8;
  std::size_t continuations = 10000;
  Statistic statistic = Statistic::GwResidual;
  double u = 0.0;  // DiskPoint only
};

struct ConditionalResult {
  std::vector<double> values;
  double n_infty_hat = 0;
  /// Variance of the limit law given the frozen path, for unit sigma^2.
  double kernel_variance = 0;
  bool degenerate = false;
};

/// Independent continuations of `frozen`; continuation i draws from the
/// stream keyed by (seed, frozen.id, i).
ConditionalResult run_conditional(const ConditionalExperiment& experiment, const FrozenPath& frozen,
                                  std::uint64_t seed, unsigned workers = 1);

struct Sigma2Estimate {
  double value = 0;
  double standard_error = 0;
  double closed_form = 0;
};

/// Replicate variance of N_n / m^n over count-only Galton-Watson paths.
Sigma2Estimate estimate_sigma2(const ClusterLaw& law, std::size_t n, std::size_t replicates,
                               std::uint64_t seed, unsigned workers = 1);

struct PanelEntry {
  std::size_t frozen_id = 0;
  double n_infty_hat = 0;
  double target_variance = 0;
  stats::KsReport ks;
  bool pass = false;
  bool degenerate = false;
};

struct PanelResult {
  std::vector<PanelEntry> entries;
  double threshold = 0;
  double pass_fraction = 0;
};

/// Runs the experiment over `frozen_paths` frozen paths and KS-tests each
/// conditional law against N(0, sigma2 * kernel variance).
PanelResult run_panel(const ConditionalExperiment& experiment, std::size_t frozen_paths,
                      double sigma2, std::uint64_t seed, double threshold = kDefaultKsThreshold,
                      unsigned workers = 1);

using Matrix = std::vector<std::vector<double>>;

struct FddCovarianceResult {
  std::vector<double> points;
  double n_infty_hat = 0;
  Matrix weight_sums;       // sum_j a_{j,n}(u_i) a_{j,n}(u_k), exact from the cloud
  Matrix weight_targets;    // N_inf_hat exp(tau2 u_i u_k)
  Matrix covariance;        // Monte Carlo covariance of (D(u_i)) given the frozen path
  Matrix covariance_target; // sigma2 N_inf_hat exp(tau2 u_i u_k)
  double max_weight_deviation = 0;
  double max_covariance_deviation = 0;
  double max_asymmetry = 0;
};

/// Weight sums and conditional covariance of D_n at real points u_i.
FddCovarianceResult fdd_covariance_check(const ClusterLaw& law, const FrozenPath& frozen,
                                         const std::vector<double>& points, std::size_t horizon,
                                         std::size_t continuations, double sigma2,
                                         std::uint64_t seed, unsigned workers = 1);

/// sum_j a_{j,n}(u) a_{j,n}(v) for real u, v.
double weight_sum(const PositionHistogram& cloud, std::size_t n, const ClusterLaw& law, double u,
                  double v);

struct IndependenceReport {
  double correlation = 0;
  double threshold = 0;  // 3 / sqrt(M)
  std::size_t paths = 0;
  bool pass = false;
};

IndependenceReport joint_independence_check(std::span<const double> residual,
                                            std::span<const double> limit);

/// Path lengths of independent trees at ascending checkpoints; row r is
/// replicate r, drawn from the stream keyed by (seed, r).
std::vector<std::vector<std::uint64_t>> tree_checkpoints(trees::TreeKind kind,
                                                         const std::vector<std::size_t>& checkpoints,
                                                         std::size_t replicates, std::uint64_t seed,
                                                         unsigned workers = 1);

/// sqrt(n / (tau2 ln n)) (limit - brw_value(path_length, n)).
double tree_residual(std::uint64_t path_length, std::size_t n, double limit, trees::TreeKind kind);

}  // namespace brwsim::harness
