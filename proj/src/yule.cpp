#include "brwsim/yule.hpp"

#include <cmath>

#include "brwsim/error.hpp"
#include "brwsim/numeric.hpp"

namespace brwsim::yule {

YuleTimes::YuleTimes(double lambda, std::vector<double> exponentials)
    : lambda_(lambda), exponentials_(std::move(exponentials)) {
  if (!(lambda > 0.0)) throw InvalidArgument("Yule rate must be positive");
  scaled_.resize(exponentials_.size() + 1);
  scaled_[0] = 0.0;
  CompensatedSum acc;
  for (std::size_t k = 1; k <= exponentials_.size(); ++k) {
    acc.add(exponentials_[k - 1] / static_cast<double>(k));
    scaled_[k] = acc.value();
  }
}

double YuleTimes::time(std::size_t k) const {
  if (k < 1 || k > scaled_.size()) throw InvalidArgument("Yule index out of range");
  return scaled_[k - 1] / lambda_;
}

std::vector<double> YuleTimes::times() const {
  std::vector<double> t(scaled_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = scaled_[i] / lambda_;
  return t;
}

double YuleTimes::n_infty_estimate() const {
  return std::exp(std::log(static_cast<double>(size())) - scaled_.back());
}

YuleTimes YuleTimes::with_rate(double lambda) const { return YuleTimes(lambda, exponentials_); }

YuleTimes sample_times(std::size_t n, double lambda, Stream& rng) {
  if (n < 1) throw InvalidArgument("Yule process needs n >= 1");
  std::vector<double> e(n - 1);
  for (double& x : e) x = unit_exponential(rng);
  return YuleTimes(lambda, std::move(e));
}

MomentProduct moment_product(std::size_t n, double r) {
  if (!(r > -1.0)) throw InvalidArgument("moment product needs r > -1");
  if (n < 1) throw InvalidArgument("moment product needs n >= 1");
  CompensatedSum log_prod;
  log_prod.add(r * std::log(static_cast<double>(n)));
  for (std::size_t k = 1; k < n; ++k) log_prod.add(-std::log1p(r / static_cast<double>(k)));
  return {std::exp(log_prod.value()), std::tgamma(r + 1.0)};
}

std::vector<double> kendall_spacings(const YuleTimes& times, double n_infty_estimate,
                                     std::size_t burn_in) {
  const auto& s = times.scaled_times();
  if (burn_in < 1) burn_in = 1;
  if (s.size() < burn_in + 3) {
    throw InvalidArgument("Yule trajectory too short for the requested burn-in");
  }
  std::vector<double> spacings;
  spacings.reserve(s.size() - burn_in);
  for (std::size_t k = burn_in; k < s.size(); ++k) {
    // y e^{lambda T_{k}} (e^{lambda (T_{k+1} - T_k)} - 1), indices 1-based in the math
    spacings.push_back(n_infty_estimate * std::exp(s[k - 1]) * std::expm1(s[k] - s[k - 1]));
  }
  return spacings;
}

stats::KsReport kendall_check(const YuleTimes& times, double n_infty_estimate,
                              std::size_t burn_in) {
  const auto spacings = kendall_spacings(times, n_infty_estimate, burn_in);
  return stats::ks_statistic(spacings, [](double x) { return stats::exponential_cdf(x); },
                             "Exp(1)");
}

}  // namespace brwsim::yule
