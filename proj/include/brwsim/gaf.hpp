#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "brwsim/cluster_law.hpp"
#include "brwsim/random.hpp"

namespace brwsim::gaf {

inline constexpr double kTailTolerance = 1e-12;

/// Smallest K with sum_{k >= K} R^{2k} / k! <= tolerance.
std::size_t truncation_order(double radius, double tolerance = kTailTolerance);

/// Truncated xi(u) = sum_k xi_k u^k / sqrt(k!) with real standard normal xi_k.
class GafSample {
 public:
  GafSample() = default;
  explicit GafSample(std::vector<double> normals, double radius = 0.0);

  [[nodiscard]] const std::vector<double>& normals() const noexcept { return normals_; }
  [[nodiscard]] std::size_t order() const noexcept { return normals_.size(); }
  [[nodiscard]] double radius() const noexcept { return radius_; }

  [[nodiscard]] Complex operator()(Complex u) const;
  [[nodiscard]] Complex derivative(Complex u) const;
  /// e^{-u^2/2} xi(u) for real u.
  [[nodiscard]] double stationary(double u) const;

 private:
  std::vector<double> normals_;
  std::vector<double> scaled_;  // xi_k / sqrt(k!)
  double radius_ = 0.0;
};

GafSample sample_gaf(double radius, Stream& rng);

struct CovarianceEstimate {
  Complex estimate;
  Complex standard_error;  // componentwise
  Complex target;
};

struct CovarianceCheck {
  Complex u, v;
  std::size_t replicates = 0;
  CovarianceEstimate product;    // E xi(u) xi(v) vs e^{uv}
  CovarianceEstimate conjugate;  // E xi(u) conj(xi(v)) vs e^{u conj v}
};

/// Monte Carlo covariance over M >= 1e4 independent samples.
CovarianceCheck covariance_check(Complex u, Complex v, std::size_t replicates, Stream& rng);

struct StationarityCheck {
  double u = 0, v = 0;
  double estimate = 0;
  double standard_error = 0;
  double target = 0;  // exp(-(u - v)^2 / 2)
};

StationarityCheck stationarity_check(double u, double v, std::size_t replicates, Stream& rng);

/// Xi(u) = sigma sqrt(N_inf) xi(tau u).
struct LimitKernelSample {
  GafSample gaf;
  double sigma = 0;
  double tau = 0;
  double n_infty = 1;

  [[nodiscard]] Complex operator()(Complex u) const;
};

/// Either a frozen N_inf(omega) or a sampler for its law.
using NInftySource = std::variant<double, std::function<double(Stream&)>>;

/// Draws the GAF and N_inf independently; `radius` bounds the |u| at which
/// the kernel will be evaluated.
LimitKernelSample sample_limit_kernel(double sigma, double tau, const NInftySource& n_infty,
                                      double radius, Stream& rng);

}  // namespace brwsim::gaf
