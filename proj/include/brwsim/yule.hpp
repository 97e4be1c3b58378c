#pragma once

#include <vector>

#include "brwsim/random.hpp"
#include "brwsim/stats.hpp"

namespace brwsim::yule {

inline constexpr std::size_t kDefaultBurnIn = 1000;

/// Birth times T_1 = 0 <= T_2 <= ... <= T_n of a rate-lambda Yule process
/// started from one particle, through lambda T_n = sum_{k<n} E_k / k.
class YuleTimes {
 public:
  YuleTimes(double lambda, std::vector<double> exponentials);

  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] std::size_t size() const noexcept { return scaled_.size(); }
  /// E_1..E_{n-1}.
  [[nodiscard]] const std::vector<double>& exponentials() const noexcept { return exponentials_; }
  /// lambda T_1 .. lambda T_n.
  [[nodiscard]] const std::vector<double>& scaled_times() const noexcept { return scaled_; }
  /// T_k for 1 <= k <= n.
  [[nodiscard]] double time(std::size_t k) const;
  [[nodiscard]] std::vector<double> times() const;
  /// n exp(-lambda T_n) at the last index.
  [[nodiscard]] double n_infty_estimate() const;
  /// Same times under another rate; exact rescaling of the stored draws.
  [[nodiscard]] YuleTimes with_rate(double lambda) const;

 private:
  double lambda_;
  std::vector<double> exponentials_;
  std::vector<double> scaled_;
};

YuleTimes sample_times(std::size_t n, double lambda, Stream& rng);

struct MomentProduct {
  double exact = 0;  // E (n / e^{lambda T_n})^r
  double limit = 0;  // Gamma(r + 1)
};

/// n^r prod_{k<n} (1 + r/k)^{-1}, evaluated in the log domain. Needs r > -1.
MomentProduct moment_product(std::size_t n, double r);

/// Spacings of P_k = y (e^{lambda T_k} - 1) for k >= burn_in.
std::vector<double> kendall_spacings(const YuleTimes& times, double n_infty_estimate,
                                     std::size_t burn_in = kDefaultBurnIn);

/// KS test of the Kendall spacings against Exp(1).
stats::KsReport kendall_check(const YuleTimes& times, double n_infty_estimate,
                              std::size_t burn_in = kDefaultBurnIn);

}  // namespace brwsim::yule
