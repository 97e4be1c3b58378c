#include "brwsim/biggins.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "brwsim/error.hpp"
#include "brwsim/numeric.hpp"

namespace brwsim::biggins {

namespace {

constexpr double kSecondDifferenceStep = 1e-3;
constexpr int kConvexityGrid = 41;
constexpr double kMaxExponent = 700.0;

void require_in_disk(Complex beta, double disk_radius) {
  if (std::abs(beta) > disk_radius * (1.0 + 1e-12)) {
    throw InvalidArgument("|beta| = " + std::to_string(std::abs(beta)) +
                          " lies outside the working disk of radius " +
                          std::to_string(disk_radius));
  }
}

Complex normalized_exp_sum(const PositionHistogram& cloud, Complex beta, Complex log_norm) {
  ComplexCompensatedSum acc;
  for (const auto& [z, c] : cloud.bins()) {
    const Complex exponent = beta * z - log_norm;
    if (exponent.real() > kMaxExponent) throw Overflow("exp(beta z) / m(beta)^n overflows");
    acc.add(static_cast<double>(c) * std::exp(exponent));
  }
  return acc.value();
}

}  // namespace

CumulantSpec CumulantSpec::discrete(const ClusterLaw& law, double disk_radius) {
  CumulantSpec spec;
  spec.log_mgf = [law](Complex beta) { return std::log(law.mgf(beta)); };
  const double m = law.intensity_moment(0);
  const double m1 = law.intensity_moment(1) / m;
  const double m2 = law.intensity_moment(2) / m;
  spec.closed_form = std::array<double, 3>{std::log(m), m1, m2 - m1 * m1};
  spec.disk_radius = disk_radius;
  return spec;
}

CumulantSpec CumulantSpec::continuous(const ClusterLaw& law, double rate, double disk_radius) {
  if (!(rate > 0.0)) throw InvalidArgument("split rate must be positive");
  CumulantSpec spec;
  spec.log_mgf = [law, rate](Complex beta) { return rate * (law.mgf(beta) - 1.0); };
  spec.closed_form = std::array<double, 3>{rate * (law.intensity_moment(0) - 1.0),
                                           rate * law.intensity_moment(1),
                                           rate * law.intensity_moment(2)};
  spec.disk_radius = disk_radius;
  return spec;
}

CumulantSpec CumulantSpec::custom(std::function<Complex(Complex)> log_mgf, double disk_radius) {
  CumulantSpec spec;
  spec.log_mgf = std::move(log_mgf);
  spec.disk_radius = disk_radius;
  return spec;
}

Cumulants cumulants(const CumulantSpec& spec) {
  auto phi = [&](double x) { return spec.log_mgf(Complex(x, 0.0)).real(); };

  const double span = spec.disk_radius;
  const double delta = 2.0 * span / (kConvexityGrid - 1);
  for (int i = 1; i + 1 < kConvexityGrid; ++i) {
    const double x = -span + i * delta;
    const double second = phi(x + delta) - 2.0 * phi(x) + phi(x - delta);
    const double scale = std::abs(phi(x)) + 1.0;
    if (second < -1e-12 * scale) {
      throw InvalidLaw("phi is not convex near beta = " + std::to_string(x));
    }
  }

  Cumulants c;
  if (spec.closed_form) {
    c.phi0 = (*spec.closed_form)[0];
    c.d = (*spec.closed_form)[1];
    c.tau2 = (*spec.closed_form)[2];
    c.closed_form = true;
  } else {
    c.phi0 = phi(0.0);
    // Richardson extrapolation of central differences. The second derivative
    // uses a wider step: h = 1e-5 would leave ~1e-6 of cancellation noise.
    auto first = [&](double h) { return (phi(h) - phi(-h)) / (2.0 * h); };
    auto second = [&](double h) { return (phi(h) - 2.0 * c.phi0 + phi(-h)) / (h * h); };
    const double h1 = kFiniteDifferenceStep;
    const double h2 = kSecondDifferenceStep;
    c.d = (4.0 * first(h1 / 2.0) - first(h1)) / 3.0;
    c.tau2 = (4.0 * second(h2 / 2.0) - second(h2)) / 3.0;
  }
  c.m = std::exp(c.phi0);
  return c;
}

MartingaleValue eval_W(const PositionHistogram& cloud, std::size_t n, const ClusterLaw& law,
                       Complex beta, double disk_radius) {
  require_in_disk(beta, disk_radius);
  if (cloud.total() == 0) throw InvalidArgument("cannot evaluate W on an empty cloud");
  MartingaleValue w;
  w.beta = beta;
  w.n = n;
  w.log_norm = static_cast<double>(n) * std::log(law.mgf(beta));
  w.value = normalized_exp_sum(cloud, beta, w.log_norm);
  return w;
}

MartingaleValue eval_W(const BrwTrajectory& traj, const ClusterLaw& law, Complex beta,
                       double disk_radius) {
  require_in_disk(beta, disk_radius);
  const auto& cloud = traj.last();
  if (cloud.positions.empty()) throw InvalidArgument("cannot evaluate W on an empty cloud");
  MartingaleValue w;
  w.beta = beta;
  w.n = traj.generation();
  w.log_norm = static_cast<double>(w.n) * std::log(law.mgf(beta));
  ComplexCompensatedSum acc;
  for (double z : cloud.positions) {
    const Complex exponent = beta * z - w.log_norm;
    if (exponent.real() > kMaxExponent) throw Overflow("exp(beta z) / m(beta)^n overflows");
    acc.add(std::exp(exponent));
  }
  w.value = acc.value();
  return w;
}

double L_n(std::uint64_t count, double position_sum, std::size_t n, const ModelParams& params) {
  const double nd = static_cast<double>(n);
  const double centered = position_sum - params.d * nd * static_cast<double>(count);
  return centered / std::pow(params.m, nd);
}

double L_n(const BrwTrajectory& traj, const ModelParams& params) {
  const auto& s = traj.summaries.back();
  return L_n(s.count, s.position_sum, traj.generation(), params);
}

Complex cauchy_derivative(const std::function<Complex(Complex)>& f, Complex center, double r,
                          int points) {
  if (points < 1 || !(r > 0.0)) throw InvalidArgument("contour needs r > 0 and points >= 1");
  ComplexCompensatedSum acc;
  for (int k = 0; k < points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / points;
    const Complex unit = std::polar(1.0, theta);
    acc.add(f(center + r * unit) * std::conj(unit));
  }
  return acc.value() / (static_cast<double>(points) * r);
}

Complex derivative_via_cauchy(const BrwTrajectory& traj, const ClusterLaw& law, double r,
                              int points) {
  if (points < 16) throw InvalidArgument("Cauchy quadrature needs at least 16 points");
  return cauchy_derivative([&](Complex beta) { return eval_W(traj, law, beta, r).value; }, 0.0, r,
                           points);
}

DerivativeCheck check_derivative(const BrwTrajectory& traj, const ClusterLaw& law,
                                 const ModelParams& params, double r, int points,
                                 double tolerance) {
  DerivativeCheck check;
  check.cauchy = derivative_via_cauchy(traj, law, r, points);
  check.direct = L_n(traj, params);
  check.error = std::abs(check.cauchy - check.direct) / std::max(1.0, std::abs(check.direct));
  check.consistent = check.error <= tolerance;
  return check;
}

WInfinityEstimate approx_W_infinity(const BrwTrajectory& traj, const ClusterLaw& law,
                                    std::size_t horizon, Complex beta, Stream& rng,
                                    double disk_radius) {
  PositionHistogram cloud(traj.last());
  const std::size_t n = traj.generation();
  WInfinityEstimate est;
  est.horizon = horizon;
  est.w_n = eval_W(cloud, n, law, beta, disk_radius).value;
  est.value = est.w_n;
  Complex last_increment = 0.0;
  for (std::size_t k = 1; k <= horizon; ++k) {
    cloud = advance_histogram(cloud, law, 1, rng);
    const Complex next = eval_W(cloud, n + k, law, beta, disk_radius).value;
    last_increment = next - est.value;
    est.value = next;
  }
  if (horizon > 0) {
    const double rho = std::sqrt(std::abs(law.mgf(2.0 * beta.real()))) / std::abs(law.mgf(beta));
    est.error_estimate = rho < 1.0 ? std::abs(last_increment) * rho / (1.0 - rho)
                                   : std::numeric_limits<double>::infinity();
  }
  return est;
}

std::uint64_t Continuation::total_descendants() const {
  std::uint64_t total = 0;
  for (const auto& h : descendants) total += h.total();
  return total;
}

double Continuation::descendant_position_sum() const {
  CompensatedSum acc;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    acc.add(sources[i] * static_cast<double>(descendants[i].total()));
    acc.add(descendants[i].position_sum());
  }
  return acc.value();
}

Continuation continue_cloud(const PositionHistogram& frozen, const ClusterLaw& law,
                            std::size_t horizon, Stream& rng, std::uint64_t budget) {
  Continuation cont;
  cont.horizon = horizon;
  cont.sources.reserve(frozen.bins().size());
  cont.source_counts.reserve(frozen.bins().size());
  cont.descendants.reserve(frozen.bins().size());
  std::uint64_t total = 0;
  std::uint64_t index = 0;
  for (const auto& [z, c] : frozen.bins()) {
    Stream sub = rng.child(index++);
    cont.sources.push_back(z);
    cont.source_counts.push_back(c);
    cont.descendants.push_back(
        advance_histogram(PositionHistogram::single(0.0, c), law, horizon, sub, budget));
    total += cont.descendants.back().total();
    if (total > budget) throw BudgetExceeded(total, budget);
  }
  return cont;
}

Complex decomposition_tail(const Continuation& cont, const ClusterLaw& law, Complex beta) {
  const Complex log_norm = static_cast<double>(cont.horizon) * std::log(law.mgf(beta));
  ComplexCompensatedSum acc;
  for (std::size_t i = 0; i < cont.sources.size(); ++i) {
    const Complex w = normalized_exp_sum(cont.descendants[i], beta, log_norm);
    acc.add(std::exp(beta * cont.sources[i]) * (w - static_cast<double>(cont.source_counts[i])));
  }
  return acc.value();
}

std::vector<Complex> disk_grid(double radius, int rings, int spokes) {
  if (!(radius > 0.0) || rings < 0 || spokes < 1) throw InvalidArgument("invalid disk grid");
  std::vector<Complex> points{Complex(0.0, 0.0)};
  for (int i = 1; i <= rings; ++i) {
    const double r = radius * i / rings;
    for (int k = 0; k < spokes; ++k) {
      points.push_back(std::polar(r, 2.0 * std::numbers::pi * k / spokes));
    }
  }
  return points;
}

DiskProfile evaluate_profile(const Continuation& cont, std::size_t n, const ClusterLaw& law,
                             const std::vector<Complex>& points, double disk_radius) {
  DiskProfile profile;
  profile.n = n;
  profile.horizon = cont.horizon;
  profile.points = points;
  profile.values.assign(points.size(), Complex(0.0, 0.0));
  profile.degenerate.assign(points.size(), false);
  for (const Complex& u : points) profile.radius = std::max(profile.radius, std::abs(u));

  const double m = law.mean_count();
  const double nd = static_cast<double>(n);
  std::uint64_t frozen_total = 0;
  for (std::uint64_t c : cont.source_counts) frozen_total += c;
  profile.normalized_count = static_cast<double>(frozen_total) / std::pow(m, nd);
  profile.n_infty_surrogate = static_cast<double>(cont.total_descendants()) /
                              std::pow(m, nd + static_cast<double>(cont.horizon));

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (n == 0) {
      profile.degenerate[i] = true;
      continue;
    }
    const Complex beta = points[i] / std::sqrt(nd);
    if (std::abs(beta) > disk_radius) {
      profile.degenerate[i] = true;
      continue;
    }
    const Complex scale = std::exp(0.5 * nd * std::log(m) - nd * std::log(law.mgf(beta)));
    profile.values[i] = scale * decomposition_tail(cont, law, beta);
  }
  return profile;
}

DiskProfile D_profile(const PositionHistogram& frozen, std::size_t n, const ClusterLaw& law,
                      std::size_t horizon, const std::vector<Complex>& points, Stream& rng,
                      double disk_radius) {
  const Continuation cont = continue_cloud(frozen, law, horizon, rng);
  return evaluate_profile(cont, n, law, points, disk_radius);
}

DiskProfile D_profile(const BrwTrajectory& traj, const ClusterLaw& law, std::size_t horizon,
                      const std::vector<Complex>& points, Stream& rng, double disk_radius) {
  return D_profile(PositionHistogram(traj.last()), traj.generation(), law, horizon, points, rng,
                   disk_radius);
}

DecompositionResult decomposition_check(const BrwTrajectory& traj, const ClusterLaw& law,
                                        std::size_t l, Complex beta, Stream& rng,
                                        std::uint64_t particle_budget) {
  if (!traj.has_genealogy()) throw InvalidArgument("decomposition check needs the genealogy");
  const auto& base = traj.last().positions;
  const std::size_t roots = base.size();

  SimulationOptions options{particle_budget, true};
  std::vector<BrwTrajectory> subtrees;
  subtrees.reserve(roots);
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < roots; ++j) {
    Stream sub = rng.child(j);
    subtrees.push_back(simulate(law, l, sub, options));
    total += subtrees.back().last().size();
    if (total > particle_budget) throw BudgetExceeded(total, particle_budget);
  }

  const Complex log_norm = static_cast<double>(l) * std::log(law.mgf(beta));

  DecompositionResult result;
  ComplexCompensatedSum rhs;
  for (std::size_t j = 0; j < roots; ++j) {
    ComplexCompensatedSum w;
    for (double z : subtrees[j].last().positions) w.add(std::exp(beta * z - log_norm));
    rhs.add(std::exp(beta * base[j]) * w.value());
  }
  result.rhs = rhs.value();

  // Assemble generations n+1..n+l in global order with parent links.
  std::vector<double> positions(base);
  std::vector<std::vector<std::uint32_t>> global_parents;
  std::vector<std::size_t> prev_offset(roots);
  for (std::size_t j = 0; j < roots; ++j) prev_offset[j] = j;
  for (std::size_t k = 1; k <= l; ++k) {
    std::vector<double> next;
    std::vector<std::uint32_t> parents;
    std::vector<std::size_t> offset(roots);
    for (std::size_t j = 0; j < roots; ++j) {
      offset[j] = next.size();
      const auto& cloud = subtrees[j].clouds[k].positions;
      const auto& links = subtrees[j].parents[k - 1];
      for (std::size_t i = 0; i < cloud.size(); ++i) {
        next.push_back(base[j] + cloud[i]);
        parents.push_back(static_cast<std::uint32_t>(prev_offset[j] + links[i]));
      }
    }
    positions = std::move(next);
    global_parents.push_back(std::move(parents));
    prev_offset = std::move(offset);
  }

  ComplexCompensatedSum lhs;
  for (double z : positions) lhs.add(std::exp(beta * z - log_norm));
  result.lhs = lhs.value();
  result.relative_error = std::abs(result.lhs - result.rhs) / std::abs(result.lhs);

  std::vector<std::uint64_t> traced(roots, 0);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    std::size_t idx = i;
    for (std::size_t k = l; k-- > 0;) idx = global_parents[k][idx];
    ++traced[idx];
  }
  result.genealogy_consistent = true;
  for (std::size_t j = 0; j < roots; ++j) {
    if (traced[j] != subtrees[j].last().size()) result.genealogy_consistent = false;
  }
  return result;
}

std::vector<MomentMonitorRow> moment_monitor(const ClusterLaw& law, std::size_t n_max,
                                             std::size_t replicates, double eps0,
                                             std::uint64_t seed) {
  const std::vector<Complex> grid = disk_grid(eps0, 2, 8);
  // sums[(n-1) * grid * 2 + g * 2 + (p - 2)]
  std::vector<double> sums(n_max * grid.size() * 2, 0.0);
  for (std::size_t r = 0; r < replicates; ++r) {
    Stream rng = derive_stream(seed, {r});
    PositionHistogram cloud = PositionHistogram::single(0.0);
    for (std::size_t n = 1; n <= n_max; ++n) {
      cloud = advance_histogram(cloud, law, 1, rng);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const double a = std::abs(eval_W(cloud, n, law, grid[g], eps0).value);
        sums[((n - 1) * grid.size() + g) * 2 + 0] += a * a;
        sums[((n - 1) * grid.size() + g) * 2 + 1] += a * a * a;
      }
    }
  }
  std::vector<MomentMonitorRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (int p = 2; p <= 3; ++p) {
      double best = 0.0;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        best = std::max(best, sums[((n - 1) * grid.size() + g) * 2 + (p - 2)] /
                                  static_cast<double>(replicates));
      }
      rows.push_back({n, p, best});
    }
  }
  return rows;
}

}  // namespace brwsim::biggins
