#include "brwsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "brwsim/error.hpp"
#include "brwsim/numeric.hpp"

namespace brwsim::stats {

namespace {

void require_finite(std::span<const double> values) {
  for (double x : values) {
    if (!std::isfinite(x)) throw InvalidArgument("sample contains a non-finite value");
  }
}

}  // namespace

EmpiricalSample::EmpiricalSample(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_);
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalSample::mean() const { return mean_estimate(values_).mean; }

double EmpiricalSample::variance() const { return sample_variance(values_); }

double EmpiricalSample::cdf(double x) const {
  if (sorted_.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double kolmogorov_pvalue(double statistic, double effective_n) {
  const double lambda = statistic * std::sqrt(effective_n);
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KsReport ks_statistic(const EmpiricalSample& sample, const Cdf& cdf, std::string target) {
  const auto& x = sample.sorted();
  const std::size_t n = x.size();
  if (n < 2) throw InvalidArgument("KS needs at least two observations");
  const double dn = static_cast<double>(n);
  double d = 0.0;
  // Walk blocks of tied values; the empirical cdf jumps from i/n to j/n at x[i].
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && x[j] == x[i]) ++j;
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(j) / dn - f, f - static_cast<double>(i) / dn});
    i = j;
  }
  KsReport r;
  r.statistic = std::clamp(d, 0.0, 1.0);
  r.n = n;
  r.p_value = kolmogorov_pvalue(r.statistic, dn);
  r.target = std::move(target);
  return r;
}

KsReport ks_statistic(std::span<const double> sample, const Cdf& cdf, std::string target) {
  return ks_statistic(EmpiricalSample(std::vector<double>(sample.begin(), sample.end())), cdf,
                      std::move(target));
}

KsReport ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw InvalidArgument("KS needs at least two observations");
  require_finite(a);
  require_finite(b);
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  KsReport r;
  r.statistic = d;
  r.n = x.size() + y.size();
  r.p_value = kolmogorov_pvalue(d, nx * ny / (nx + ny));
  r.target = "two-sample";
  return r;
}

double normal_cdf(double x, double mean, double sd) {
  if (sd == 0.0) return x < mean ? 0.0 : 1.0;
  return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("normal quantile needs 0 < p < 1");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double exponential_cdf(double x, double rate) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); }

double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

Cdf normal(double mean, double variance) {
  const double sd = std::sqrt(variance);
  return [mean, sd](double x) { return normal_cdf(x, mean, sd); };
}

Cdf normal_mixture_cdf(std::vector<double> variances, double multiplier) {
  if (variances.empty()) throw InvalidArgument("mixture needs at least one variance");
  auto sds = std::make_shared<std::vector<double>>();
  sds->reserve(variances.size());
  for (double v : variances) {
    if (!(v > 0.0) || !(multiplier > 0.0)) {
      throw InvalidArgument("mixture variances must be positive");
    }
    sds->push_back(std::sqrt(multiplier * v));
  }
  return [sds](double x) {
    CompensatedSum acc;
    for (double s : *sds) acc.add(normal_cdf(x, 0.0, s));
    return acc.value() / static_cast<double>(sds->size());
  };
}

double ks_null_quantile(std::size_t n, double q, std::size_t replicates, Stream& rng) {
  if (n < 2 || replicates < 1 || !(q > 0.0 && q < 1.0)) {
    throw InvalidArgument("invalid null calibration request");
  }
  std::vector<double> stats(replicates);
  std::vector<double> u(n);
  for (std::size_t r = 0; r < replicates; ++r) {
    for (double& x : u) x = rng.uniform_open();
    std::sort(u.begin(), u.end());
    double d = 0.0;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      d = std::max({d, static_cast<double>(i + 1) / dn - u[i], u[i] - static_cast<double>(i) / dn});
    }
    stats[r] = d;
  }
  std::sort(stats.begin(), stats.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(replicates))) - 1;
  return stats[std::min(idx, replicates - 1)];
}

double MeanEstimate::z_score(double target) const {
  if (standard_error == 0.0) return mean == target ? 0.0 : std::numeric_limits<double>::infinity();
  return (mean - target) / standard_error;
}

bool MeanEstimate::within(double target, double k) const {
  return std::abs(z_score(target)) <= k;
}

MeanEstimate mean_estimate(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("mean of an empty sample");
  CompensatedSum s;
  for (double x : values) s.add(x);
  MeanEstimate e;
  e.n = values.size();
  e.mean = s.value() / static_cast<double>(e.n);
  e.standard_error =
      e.n > 1 ? std::sqrt(sample_variance(values) / static_cast<double>(e.n)) : 0.0;
  return e;
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) throw InvalidArgument("variance needs at least two values");
  CompensatedSum s;
  for (double x : values) s.add(x);
  const double mean = s.value() / static_cast<double>(values.size());
  CompensatedSum ss;
  for (double x : values) ss.add((x - mean) * (x - mean));
  return ss.value() / static_cast<double>(values.size() - 1);
}

double variance_standard_error(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  if (n < 4) throw InvalidArgument("variance SE needs at least four values");
  CompensatedSum s;
  for (double x : values) s.add(x);
  const double mean = s.value() / n;
  CompensatedSum m2, m4;
  for (double x : values) {
    const double d2 = (x - mean) * (x - mean);
    m2.add(d2);
    m4.add(d2 * d2);
  }
  const double mu2 = m2.value() / n;
  const double mu4 = m4.value() / n;
  return std::sqrt(std::max(0.0, (mu4 - (n - 3.0) / (n - 1.0) * mu2 * mu2) / n));
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InvalidArgument("correlation needs two samples of equal length >= 2");
  }
  const double n = static_cast<double>(a.size());
  CompensatedSum sa, sb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa.add(a[i]);
    sb.add(b[i]);
  }
  const double ma = sa.value() / n, mb = sb.value() / n;
  CompensatedSum sab, saa, sbb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab.add((a[i] - ma) * (b[i] - mb));
    saa.add((a[i] - ma) * (a[i] - ma));
    sbb.add((b[i] - mb) * (b[i] - mb));
  }
  const double denom = std::sqrt(saa.value() * sbb.value());
  if (denom == 0.0) throw InvalidArgument("correlation of a constant sample");
  return sab.value() / denom;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace brwsim::stats
