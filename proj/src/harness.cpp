#include "brwsim/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "brwsim/biggins.hpp"
#include "brwsim/error.hpp"
#include "brwsim/numeric.hpp"

namespace brwsim::harness {

namespace {

// Stream tags, so that differently purposed draws never share a key.
constexpr std::uint64_t kFreezeTag = 0x46;
constexpr std::uint64_t kContinuationTag = 0x43;
constexpr std::uint64_t kSigmaTag = 0x53;
constexpr std::uint64_t kTreeTag = 0x54;

}  // namespace

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

FrozenPath freeze(const ClusterLaw& law, std::size_t n, std::uint64_t seed, std::size_t id) {
  Stream rng = derive_stream(seed, {kFreezeTag, id});
  FrozenPath f;
  f.id = id;
  f.n = n;
  f.cloud = simulate_histogram(law, n, rng);
  f.normalized_count =
      static_cast<double>(f.cloud.total()) / std::pow(law.mean_count(), static_cast<double>(n));
  return f;
}

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::GwResidual: return "gw_residual";
    case Statistic::GwSelfNormalized: return "gw_self_normalized";
    case Statistic::Derivative: return "derivative";
    case Statistic::DiskPoint: return "disk_point";
  }
  return "unknown";
}

ConditionalResult run_conditional(const ConditionalExperiment& ex, const FrozenPath& frozen,
                                  std::uint64_t seed, unsigned workers) {
  if (frozen.n != ex.n) throw InvalidArgument("frozen path generation does not match n");
  if (ex.continuations < 2) throw InvalidArgument("need at least two continuations");
  const ModelParams params = model_params(ex.law);
  const double m = params.m;
  const double nd = static_cast<double>(ex.n);
  const double hd = static_cast<double>(ex.horizon);
  const double m_half_n = std::pow(m, 0.5 * nd);
  const double m_h = std::pow(m, hd);
  const std::uint64_t count = frozen.cloud.total();
  const double count_d = static_cast<double>(count);

  ConditionalResult res;
  res.n_infty_hat = frozen.normalized_count;
  res.values.assign(ex.continuations, 0.0);

  switch (ex.statistic) {
    case Statistic::GwResidual:
      res.kernel_variance = res.n_infty_hat;
      break;
    case Statistic::GwSelfNormalized:
      res.kernel_variance = 1.0;
      break;
    case Statistic::Derivative:
      res.kernel_variance = res.n_infty_hat * params.tau2;
      break;
    case Statistic::DiskPoint:
      res.kernel_variance = res.n_infty_hat * std::exp(params.tau2 * ex.u * ex.u);
      if (ex.n == 0 || std::abs(ex.u) / std::sqrt(nd) > biggins::kDefaultDiskRadius) {
        res.degenerate = true;
        return res;
      }
      break;
  }

  const double s_n = frozen.cloud.position_sum();
  const double l_n = (s_n - params.d * nd * count_d) / std::pow(m, nd);

  parallel_for(ex.continuations, workers, [&](std::size_t i) {
    Stream rng = derive_stream(seed, {kContinuationTag, frozen.id, i});
    switch (ex.statistic) {
      case Statistic::GwResidual:
      case Statistic::GwSelfNormalized: {
        const double later = static_cast<double>(advance_count(ex.law, count, ex.horizon, rng));
        // m^{n/2} (N_{n+h}/m^{n+h} - N_n/m^n), arranged to avoid two large quotients.
        double value = (later - count_d * m_h) / (m_half_n * m_h);
        if (ex.statistic == Statistic::GwSelfNormalized) {
          value /= std::sqrt(later / (m_half_n * m_half_n * m_h));
        }
        res.values[i] = value;
        break;
      }
      case Statistic::Derivative: {
        const auto cont = biggins::continue_cloud(frozen.cloud, ex.law, ex.horizon, rng);
        const double later = static_cast<double>(cont.total_descendants());
        const double l_later = (cont.descendant_position_sum() - params.d * (nd + hd) * later) /
                               std::pow(m, nd + hd);
        res.values[i] = m_half_n * (l_later - l_n) / std::sqrt(nd);
        break;
      }
      case Statistic::DiskPoint: {
        const auto cont = biggins::continue_cloud(frozen.cloud, ex.law, ex.horizon, rng);
        res.values[i] =
            biggins::evaluate_profile(cont, ex.n, ex.law, {Complex(ex.u, 0.0)}).values[0].real();
        break;
      }
    }
  });

  bool constant = true;
  for (double v : res.values) constant = constant && v == res.values.front();
  if (constant) res.degenerate = true;
  return res;
}

Sigma2Estimate estimate_sigma2(const ClusterLaw& law, std::size_t n, std::size_t replicates,
                               std::uint64_t seed, unsigned workers) {
  if (replicates < 4) throw InvalidArgument("sigma^2 estimate needs at least four replicates");
  const double m = law.mean_count();
  std::vector<double> w(replicates);
  parallel_for(replicates, workers, [&](std::size_t r) {
    Stream rng = derive_stream(seed, {kSigmaTag, r});
    w[r] = gw_normalized_count(simulate_counts(law, n, rng), m);
  });
  Sigma2Estimate est;
  est.value = stats::sample_variance(w);
  est.standard_error = stats::variance_standard_error(w);
  est.closed_form = gw_limit_variance(law) * (1.0 - std::pow(m, -static_cast<double>(n)));
  return est;
}

PanelResult run_panel(const ConditionalExperiment& ex, std::size_t frozen_paths, double sigma2,
                      std::uint64_t seed, double threshold, unsigned workers) {
  PanelResult panel;
  panel.threshold = threshold;
  std::size_t passed = 0;
  for (std::size_t f = 0; f < frozen_paths; ++f) {
    const FrozenPath frozen = freeze(ex.law, ex.n, seed, f);
    const ConditionalResult res = run_conditional(ex, frozen, seed, workers);
    PanelEntry e;
    e.frozen_id = f;
    e.n_infty_hat = res.n_infty_hat;
    e.target_variance = sigma2 * res.kernel_variance;
    e.degenerate = res.degenerate;
    if (res.degenerate || e.target_variance == 0.0) {
      e.degenerate = true;
      // A degenerate law must produce a degenerate statistic: all zeros.
      bool zero = true;
      for (double v : res.values) zero = zero && v == 0.0;
      e.ks.n = res.values.size();
      e.ks.statistic = zero ? 0.0 : 1.0;
      e.ks.p_value = zero ? 1.0 : 0.0;
      e.ks.target = "point mass at 0";
      e.pass = zero && e.target_variance == 0.0;
    } else {
      e.ks = stats::ks_statistic(res.values, stats::normal(0.0, e.target_variance),
                                 "N(0, " + std::to_string(e.target_variance) + ")");
      e.pass = e.ks.statistic <= threshold;
    }
    passed += e.pass ? 1 : 0;
    panel.entries.push_back(std::move(e));
  }
  panel.pass_fraction =
      frozen_paths == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(frozen_paths);
  return panel;
}

double weight_sum(const PositionHistogram& cloud, std::size_t n, const ClusterLaw& law, double u,
                  double v) {
  if (n == 0) return static_cast<double>(cloud.total());
  const double nd = static_cast<double>(n);
  const double bu = u / std::sqrt(nd);
  const double bv = v / std::sqrt(nd);
  const double log_m = std::log(law.mean_count());
  const double log_mu = std::log(law.mgf(bu).real());
  const double log_mv = std::log(law.mgf(bv).real());
  CompensatedSum acc;
  for (const auto& [z, c] : cloud.bins()) {
    acc.add(static_cast<double>(c) * std::exp(nd * (log_m - log_mu - log_mv) + (bu + bv) * z));
  }
  return acc.value();
}

FddCovarianceResult fdd_covariance_check(const ClusterLaw& law, const FrozenPath& frozen,
                                         const std::vector<double>& points, std::size_t horizon,
                                         std::size_t continuations, double sigma2,
                                         std::uint64_t seed, unsigned workers) {
  if (points.empty()) throw InvalidArgument("fdd check needs at least one point");
  if (continuations < 2) throw InvalidArgument("fdd check needs at least two continuations");
  const std::size_t k = points.size();
  const double tau2 = model_params(law).tau2;
  for (double u : points) {
    if (frozen.n == 0 ||
        std::abs(u) / std::sqrt(static_cast<double>(frozen.n)) > biggins::kDefaultDiskRadius) {
      throw InvalidArgument("grid point lies outside the valid disk at this n");
    }
  }

  FddCovarianceResult out;
  out.points = points;
  out.n_infty_hat = frozen.normalized_count;
  out.weight_sums.assign(k, std::vector<double>(k));
  out.weight_targets.assign(k, std::vector<double>(k));
  out.covariance.assign(k, std::vector<double>(k));
  out.covariance_target.assign(k, std::vector<double>(k));

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double e = std::exp(tau2 * points[i] * points[j]);
      out.weight_sums[i][j] = weight_sum(frozen.cloud, frozen.n, law, points[i], points[j]);
      out.weight_targets[i][j] = out.n_infty_hat * e;
      out.covariance_target[i][j] = sigma2 * out.n_infty_hat * e;
      out.max_weight_deviation =
          std::max(out.max_weight_deviation,
                   std::abs(out.weight_sums[i][j] / out.weight_targets[i][j] - 1.0));
    }
  }

  std::vector<Complex> grid;
  for (double u : points) grid.emplace_back(u, 0.0);
  std::vector<std::vector<double>> samples(continuations);
  parallel_for(continuations, workers, [&](std::size_t c) {
    Stream rng = derive_stream(seed, {kContinuationTag, frozen.id, c});
    const auto cont = biggins::continue_cloud(frozen.cloud, law, horizon, rng);
    const auto profile = biggins::evaluate_profile(cont, frozen.n, law, grid);
    samples[c].resize(k);
    for (std::size_t i = 0; i < k; ++i) samples[c][i] = profile.values[i].real();
  });

  const double dm = static_cast<double>(continuations);
  std::vector<double> mean(k, 0.0);
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < k; ++i) mean[i] += s[i] / dm;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      CompensatedSum acc;
      for (const auto& s : samples) acc.add((s[i] - mean[i]) * (s[j] - mean[j]));
      out.covariance[i][j] = acc.value() / (dm - 1.0);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double target = out.covariance_target[i][j];
      const double dev = target != 0.0 ? std::abs(out.covariance[i][j] / target - 1.0)
                         : out.covariance[i][j] == 0.0
                             ? 0.0
                             : std::numeric_limits<double>::infinity();
      out.max_covariance_deviation = std::max(out.max_covariance_deviation, dev);
      out.max_asymmetry =
          std::max(out.max_asymmetry, std::abs(out.covariance[i][j] - out.covariance[j][i]));
    }
  }
  return out;
}

IndependenceReport joint_independence_check(std::span<const double> residual,
                                            std::span<const double> limit) {
  IndependenceReport r;
  r.paths = residual.size();
  r.correlation = stats::correlation(residual, limit);
  r.threshold = 3.0 / std::sqrt(static_cast<double>(r.paths));
  r.pass = std::abs(r.correlation) <= r.threshold;
  return r;
}

std::vector<std::vector<std::uint64_t>> tree_checkpoints(trees::TreeKind kind,
                                                         const std::vector<std::size_t>& checkpoints,
                                                         std::size_t replicates, std::uint64_t seed,
                                                         unsigned workers) {
  std::vector<std::vector<std::uint64_t>> rows(replicates);
  parallel_for(replicates, workers, [&](std::size_t r) {
    Stream rng = derive_stream(seed, {kTreeTag, r});
    rows[r] = trees::path_lengths_at(kind, checkpoints, rng);
  });
  return rows;
}

double tree_residual(std::uint64_t path_length, std::size_t n, double limit, trees::TreeKind kind) {
  const double nd = static_cast<double>(n);
  return std::sqrt(nd / (trees::tree_tau2(kind) * std::log(nd))) *
         (limit - trees::brw_value(path_length, n, kind));
}

}  // namespace brwsim::harness
