#include "brwsim/gaf.hpp"

#include <cmath>

#include "brwsim/error.hpp"

namespace brwsim::gaf {

std::size_t truncation_order(double radius, double tolerance) {
  if (!(radius > 0.0)) throw InvalidArgument("working radius must be positive");
  const double x = radius * radius;
  // Terms t_k = x^k / k!. Once k + 1 > 2x the ratio x / (k + 1) is below 1/2 and
  // the tail from k on is at most 2 t_k, so walk forward until that bound holds,
  // then step back while the exact tail still satisfies the tolerance.
  std::vector<double> terms{1.0};
  for (std::size_t k = 1;; ++k) {
    terms.push_back(terms.back() * x / static_cast<double>(k));
    if (static_cast<double>(k + 1) > 2.0 * x && 2.0 * terms.back() <= tolerance * 1e-3) break;
  }
  double tail = 0.0;
  std::size_t order = terms.size();
  for (std::size_t k = terms.size(); k-- > 0;) {
    tail += terms[k];
    if (tail > tolerance) break;
    order = k;
  }
  return order;
}

GafSample::GafSample(std::vector<double> normals, double radius)
    : normals_(std::move(normals)), radius_(radius) {
  scaled_.resize(normals_.size());
  double inv_sqrt_factorial = 1.0;
  for (std::size_t k = 0; k < normals_.size(); ++k) {
    if (k > 0) inv_sqrt_factorial /= std::sqrt(static_cast<double>(k));
    scaled_[k] = normals_[k] * inv_sqrt_factorial;
  }
}

Complex GafSample::operator()(Complex u) const {
  Complex acc = 0.0;
  for (std::size_t k = scaled_.size(); k-- > 0;) acc = acc * u + scaled_[k];
  return acc;
}

Complex GafSample::derivative(Complex u) const {
  Complex acc = 0.0;
  for (std::size_t k = scaled_.size(); k-- > 1;) {
    acc = acc * u + static_cast<double>(k) * scaled_[k];
  }
  return acc;
}

double GafSample::stationary(double u) const { return std::exp(-0.5 * u * u) * (*this)(u).real(); }

GafSample sample_gaf(double radius, Stream& rng) {
  const std::size_t order = truncation_order(radius);
  std::vector<double> normals(order);
  for (double& z : normals) z = standard_normal(rng);
  return GafSample(std::move(normals), radius);
}

namespace {

struct ComplexMoments {
  double re = 0, re2 = 0, im = 0, im2 = 0;

  void add(Complex x) {
    re += x.real();
    re2 += x.real() * x.real();
    im += x.imag();
    im2 += x.imag() * x.imag();
  }

  CovarianceEstimate finish(std::size_t n, Complex target) const {
    const double dn = static_cast<double>(n);
    const double mr = re / dn;
    const double mi = im / dn;
    const double vr = std::max(0.0, (re2 - dn * mr * mr) / (dn - 1.0));
    const double vi = std::max(0.0, (im2 - dn * mi * mi) / (dn - 1.0));
    return {Complex(mr, mi), Complex(std::sqrt(vr / dn), std::sqrt(vi / dn)), target};
  }
};

}  // namespace

CovarianceCheck covariance_check(Complex u, Complex v, std::size_t replicates, Stream& rng) {
  if (replicates < 10000) throw InvalidArgument("covariance check needs M >= 1e4");
  const double radius = std::max({std::abs(u), std::abs(v), 1e-3});
  ComplexMoments prod, conj;
  for (std::size_t r = 0; r < replicates; ++r) {
    const GafSample xi = sample_gaf(radius, rng);
    const Complex a = xi(u);
    const Complex b = xi(v);
    prod.add(a * b);
    conj.add(a * std::conj(b));
  }
  CovarianceCheck check;
  check.u = u;
  check.v = v;
  check.replicates = replicates;
  check.product = prod.finish(replicates, std::exp(u * v));
  check.conjugate = conj.finish(replicates, std::exp(u * std::conj(v)));
  return check;
}

StationarityCheck stationarity_check(double u, double v, std::size_t replicates, Stream& rng) {
  if (replicates < 2) throw InvalidArgument("stationarity check needs at least 2 replicates");
  const double radius = std::max({std::abs(u), std::abs(v), 1e-3});
  double s = 0, s2 = 0;
  for (std::size_t r = 0; r < replicates; ++r) {
    const GafSample xi = sample_gaf(radius, rng);
    const double p = xi.stationary(u) * xi.stationary(v);
    s += p;
    s2 += p * p;
  }
  const double n = static_cast<double>(replicates);
  StationarityCheck check;
  check.u = u;
  check.v = v;
  check.estimate = s / n;
  check.standard_error =
      std::sqrt(std::max(0.0, (s2 - n * check.estimate * check.estimate) / (n - 1.0)) / n);
  check.target = std::exp(-0.5 * (u - v) * (u - v));
  return check;
}

Complex LimitKernelSample::operator()(Complex u) const {
  if (sigma == 0.0) return 0.0;
  return sigma * std::sqrt(n_infty) * gaf(tau * u);
}

LimitKernelSample sample_limit_kernel(double sigma, double tau, const NInftySource& n_infty,
                                      double radius, Stream& rng) {
  if (sigma < 0.0 || tau < 0.0) throw InvalidArgument("sigma and tau must be nonnegative");
  LimitKernelSample k;
  k.sigma = sigma;
  k.tau = tau;
  Stream gaf_stream(rng());
  Stream n_stream(rng());
  k.gaf = sample_gaf(std::max(tau * radius, 1e-3), gaf_stream);
  if (const double* fixed = std::get_if<double>(&n_infty)) {
    k.n_infty = *fixed;
  } else {
    k.n_infty = std::get<std::function<double(Stream&)>>(n_infty)(n_stream);
  }
  if (!(k.n_infty > 0.0)) throw InvalidArgument("N_inf must be positive");
  return k;
}

}  // namespace brwsim::gaf
