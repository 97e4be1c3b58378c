#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "brwsim/random.hpp"

namespace brwsim::stats {

/// Finite real sample with a cached sorted view.
class EmpiricalSample {
 public:
  EmpiricalSample() = default;
  /// Throws InvalidArgument on NaN or infinite values.
  explicit EmpiricalSample(std::vector<double> values);

  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] const std::vector<double>& sorted() const noexcept { return sorted_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double mean() const;
  /// Unbiased sample variance.
  [[nodiscard]] double variance() const;
  /// Fraction of values <= x.
  [[nodiscard]] double cdf(double x) const;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

struct KsReport {
  double statistic = 0;
  double p_value = 1;
  std::size_t n = 0;
  std::string target;
};

using Cdf = std::function<double(double)>;

/// Asymptotic Kolmogorov p-value 2 sum_k (-1)^{k-1} exp(-2 k^2 (D sqrt n)^2).
double kolmogorov_pvalue(double statistic, double effective_n);

/// One-sample KS distance sup |F_emp - F|. Needs n >= 2 and no NaN.
KsReport ks_statistic(std::span<const double> sample, const Cdf& cdf, std::string target = {});
KsReport ks_statistic(const EmpiricalSample& sample, const Cdf& cdf, std::string target = {});

KsReport ks_two_sample(std::span<const double> a, std::span<const double> b);

double normal_cdf(double x, double mean = 0.0, double sd = 1.0);
/// Standard normal quantile.
double normal_quantile(double p);
double exponential_cdf(double x, double rate = 1.0);
/// Regularized incomplete beta, i.e. the Beta(a, b) cdf.
double beta_cdf(double x, double a, double b);

Cdf normal(double mean, double variance);

/// x -> mean over v of Phi(x / sqrt(multiplier * v)).
Cdf normal_mixture_cdf(std::vector<double> variances, double multiplier = 1.0);

/// q-quantile of the KS distance for n i.i.d. draws from any continuous law,
/// estimated from `replicates` simulated uniform samples.
double ks_null_quantile(std::size_t n, double q, std::size_t replicates, Stream& rng);

struct MeanEstimate {
  double mean = 0;
  double standard_error = 0;
  std::size_t n = 0;

  [[nodiscard]] double z_score(double target) const;
  [[nodiscard]] bool within(double target, double k = 3.0) const;
};

MeanEstimate mean_estimate(std::span<const double> values);
double sample_variance(std::span<const double> values);
/// Standard error of the unbiased sample variance (fourth-moment formula).
double variance_standard_error(std::span<const double> values);
double correlation(std::span<const double> a, std::span<const double> b);
double median(std::vector<double> values);

}  // namespace brwsim::stats
