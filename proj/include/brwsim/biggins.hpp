#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "brwsim/brw.hpp"
#include "brwsim/cluster_law.hpp"
#include "brwsim/random.hpp"

namespace brwsim::biggins {

inline constexpr double kDefaultDiskRadius = 0.5;
inline constexpr std::size_t kDefaultHorizon = 8;
inline constexpr double kCauchyRadius = 0.1;
inline constexpr int kCauchyPoints = 64;
inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kDerivativeTolerance = 1e-8;

/// Log-moment generating function phi(beta) of a model plus, when known, its
/// value and first two derivatives at 0.
struct CumulantSpec {
  std::function<Complex(Complex)> log_mgf;
  std::optional<std::array<double, 3>> closed_form;  // phi(0), phi'(0), phi''(0)
  double disk_radius = kDefaultDiskRadius;

  /// Discrete time: phi = log m(beta).
  static CumulantSpec discrete(const ClusterLaw& law, double disk_radius = kDefaultDiskRadius);
  /// Continuous time, no motion between splits at rate `rate`:
  /// phi = rate * (m(beta) - 1).
  static CumulantSpec continuous(const ClusterLaw& law, double rate = 1.0,
                                 double disk_radius = kDefaultDiskRadius);
  /// Arbitrary phi; derivatives come from finite differences.
  static CumulantSpec custom(std::function<Complex(Complex)> log_mgf,
                             double disk_radius = kDefaultDiskRadius);
};

struct Cumulants {
  double m = 0;     // exp(phi(0)); mean population after one time unit
  double phi0 = 0;  // phi(0): log m in discrete time, the split rate lambda in continuous time
  double d = 0;
  double tau2 = 0;
  bool closed_form = false;
};

/// Throws InvalidLaw if phi is not convex on a real grid over the disk.
Cumulants cumulants(const CumulantSpec& spec);

struct MartingaleValue {
  Complex beta;
  std::size_t n = 0;
  Complex value;     // W_n(beta)
  Complex log_norm;  // n log m(beta), kept apart so m(beta)^n never materializes
};

/// W_n(beta) = sum_j exp(beta z_j - n log m(beta)), compensated summation.
MartingaleValue eval_W(const BrwTrajectory& traj, const ClusterLaw& law, Complex beta,
                       double disk_radius = kDefaultDiskRadius);
MartingaleValue eval_W(const PositionHistogram& cloud, std::size_t n, const ClusterLaw& law,
                       Complex beta, double disk_radius = kDefaultDiskRadius);

/// L_n = W_n'(0) = (S_n - d n N_n) / m^n.
double L_n(const BrwTrajectory& traj, const ModelParams& params);
double L_n(std::uint64_t count, double position_sum, std::size_t n, const ModelParams& params);

/// f'(center) from K equispaced samples on the circle of radius r.
Complex cauchy_derivative(const std::function<Complex(Complex)>& f, Complex center, double r,
                          int points);

/// W_n'(0) by contour quadrature of W_n on |beta| = r.
Complex derivative_via_cauchy(const BrwTrajectory& traj, const ClusterLaw& law,
                              double r = kCauchyRadius, int points = kCauchyPoints);

struct DerivativeCheck {
  Complex cauchy;
  double direct = 0;
  double error = 0;  // |cauchy - direct| / max(1, |direct|)
  bool consistent = false;
};

DerivativeCheck check_derivative(const BrwTrajectory& traj, const ClusterLaw& law,
                                 const ModelParams& params, double r = kCauchyRadius,
                                 int points = kCauchyPoints,
                                 double tolerance = kDerivativeTolerance);

struct WInfinityEstimate {
  Complex value;  // W_{n+h}(beta)
  Complex w_n;    // W_n(beta)
  std::size_t horizon = 0;
  /// Tail bound |last increment| * rho / (1 - rho) with the geometric rate
  /// rho = sqrt(m(2 Re beta)) / |m(beta)|. Zero when horizon is 0.
  double error_estimate = 0;
};

WInfinityEstimate approx_W_infinity(const BrwTrajectory& traj, const ClusterLaw& law,
                                    std::size_t horizon, Complex beta, Stream& rng,
                                    double disk_radius = kDefaultDiskRadius);

/// One realization of the future of a frozen cloud: the horizon-h descendants
/// of every occupied position, with offsets relative to that position.
struct Continuation {
  std::vector<double> sources;
  std::vector<std::uint64_t> source_counts;
  std::vector<PositionHistogram> descendants;
  std::size_t horizon = 0;

  [[nodiscard]] std::uint64_t total_descendants() const;
  [[nodiscard]] double descendant_position_sum() const;
};

Continuation continue_cloud(const PositionHistogram& frozen, const ClusterLaw& law,
                            std::size_t horizon, Stream& rng,
                            std::uint64_t budget = kAggregateBudget);

/// m(beta)^n (W_{n+h} - W_n)(beta) = sum_x exp(beta x) (m(beta)^-h sum_k H_x(k) e^{beta k} - c_x),
/// evaluated position by position so the O(m^{n/2}) difference is never
/// formed by subtracting two O(m^n) totals.
Complex decomposition_tail(const Continuation& cont, const ClusterLaw& law, Complex beta);

struct DiskProfile {
  double radius = 0;
  std::size_t n = 0;
  std::size_t horizon = 0;
  std::vector<Complex> points;
  std::vector<Complex> values;
  std::vector<bool> degenerate;
  double n_infty_surrogate = 0;  // N_{n+h} / m^{n+h}
  double normalized_count = 0;   // N_n / m^n
};

/// u = 0 followed by `rings` x `spokes` polar points inside the closed disk of radius R.
std::vector<Complex> disk_grid(double radius, int rings, int spokes);

/// D_n(u) = m^{n/2} (W_inf - W_n)(u / sqrt n) on the given points, with W_inf
/// replaced by its horizon-h surrogate. Points with |u|/sqrt(n) beyond the
/// analyticity disk are set to 0 and flagged.
DiskProfile D_profile(const PositionHistogram& frozen, std::size_t n, const ClusterLaw& law,
                      std::size_t horizon, const std::vector<Complex>& points, Stream& rng,
                      double disk_radius = kDefaultDiskRadius);
DiskProfile D_profile(const BrwTrajectory& traj, const ClusterLaw& law, std::size_t horizon,
                      const std::vector<Complex>& points, Stream& rng,
                      double disk_radius = kDefaultDiskRadius);

/// Same evaluation for an already drawn continuation.
DiskProfile evaluate_profile(const Continuation& cont, std::size_t n, const ClusterLaw& law,
                             const std::vector<Complex>& points,
                             double disk_radius = kDefaultDiskRadius);

struct DecompositionResult {
  Complex lhs;  // m(beta)^n W_{n+l}(beta), from the assembled generation n+l
  Complex rhs;  // sum_j exp(beta z_j) W^{(l)}_j(beta), from the per-particle subtrees
  double relative_error = 0;
  bool genealogy_consistent = false;
};

/// Grows every generation-n particle's subtree `l` more generations from its
/// own child stream and compares both sides of the branching identity.
DecompositionResult decomposition_check(const BrwTrajectory& traj, const ClusterLaw& law,
                                        std::size_t l, Complex beta, Stream& rng,
                                        std::uint64_t particle_budget = kDefaultParticleBudget);

struct MomentMonitorRow {
  std::size_t n = 0;
  int p = 0;
  double max_moment = 0;  // max over the grid of the replicate mean of |W_n(beta)|^p
};

/// Diagnostic only: empirical p-th absolute moments of W_n over |beta| <= eps0.
std::vector<MomentMonitorRow> moment_monitor(const ClusterLaw& law, std::size_t n_max,
                                             std::size_t replicates, double eps0,
                                             std::uint64_t seed);

}  // namespace brwsim::biggins
