#include "brwsim/brw.hpp"

#include <cmath>
#include <limits>

#include "brwsim/error.hpp"
#include "brwsim/numeric.hpp"

namespace brwsim {

double ParticleCloud::position_sum() const {
  CompensatedSum acc;
  for (double z : positions) acc.add(z);
  return acc.value();
}

ParticleCloud step(const ParticleCloud& cloud, const ClusterLaw& law, Stream& rng,
                   std::uint64_t particle_budget, std::vector<std::uint32_t>* parents_out,
                   GenerationSummary* summary_out) {
  if (cloud.positions.empty()) throw InvalidArgument("cannot step an empty cloud");
  if (parents_out != nullptr && particle_budget > std::numeric_limits<std::uint32_t>::max()) {
    particle_budget = std::numeric_limits<std::uint32_t>::max();
  }

  ParticleCloud next;
  next.generation = cloud.generation + 1;
  next.positions.reserve(static_cast<std::size_t>(
      std::min<double>(static_cast<double>(particle_budget),
                       std::ceil(static_cast<double>(cloud.size()) * law.mean_count() * 1.1))));
  if (parents_out != nullptr) {
    parents_out->clear();
    parents_out->reserve(next.positions.capacity());
  }

  std::vector<double> cluster;
  CompensatedSum sum;
  for (std::size_t i = 0; i < cloud.positions.size(); ++i) {
    const double z = cloud.positions[i];
    cluster.clear();
    law.sample_cluster(rng, cluster);
    if (next.positions.size() + cluster.size() > particle_budget) {
      throw BudgetExceeded(next.positions.size() + cluster.size(), particle_budget);
    }
    // S_{k+1} picks up |cluster| * z plus the cluster's own displacement sum.
    double shift_sum = 0.0;
    for (double dz : cluster) {
      next.positions.push_back(z + dz);
      shift_sum += dz;
    }
    sum.add(static_cast<double>(cluster.size()) * z);
    sum.add(shift_sum);
    if (parents_out != nullptr) {
      parents_out->insert(parents_out->end(), cluster.size(), static_cast<std::uint32_t>(i));
    }
  }
  if (summary_out != nullptr) {
    summary_out->count = next.positions.size();
    summary_out->position_sum = sum.value();
  }
  return next;
}

BrwTrajectory initial_trajectory() {
  BrwTrajectory traj;
  traj.clouds.push_back(ParticleCloud{0, {0.0}});
  traj.summaries.push_back(GenerationSummary{1, 0.0});
  return traj;
}

void extend(BrwTrajectory& traj, const ClusterLaw& law, std::size_t extra, Stream& rng,
            const SimulationOptions& options) {
  const bool genealogy = options.keep_genealogy && traj.has_genealogy();
  if (!genealogy) traj.parents.clear();
  for (std::size_t k = 0; k < extra; ++k) {
    GenerationSummary summary;
    std::vector<std::uint32_t> parents;
    ParticleCloud next = step(traj.last(), law, rng, options.particle_budget,
                              genealogy ? &parents : nullptr, &summary);
    traj.clouds.push_back(std::move(next));
    traj.summaries.push_back(summary);
    if (genealogy) traj.parents.push_back(std::move(parents));
  }
}

BrwTrajectory simulate(const ClusterLaw& law, std::size_t generations, Stream& rng,
                       const SimulationOptions& options) {
  BrwTrajectory traj = initial_trajectory();
  extend(traj, law, generations, rng, options);
  return traj;
}

double gw_normalized_count(const BrwTrajectory& traj, double m) {
  return static_cast<double>(traj.summaries.back().count) /
         std::pow(m, static_cast<double>(traj.generation()));
}

std::uint64_t advance_count(const ClusterLaw& law, std::uint64_t count, std::size_t generations,
                            Stream& rng, std::uint64_t budget) {
  for (std::size_t k = 0; k < generations; ++k) {
    count = law.sample_total_offspring(rng, count);
    if (count > budget) throw BudgetExceeded(count, budget);
  }
  return count;
}

GwCountPath simulate_counts(const ClusterLaw& law, std::size_t generations, Stream& rng,
                            std::uint64_t budget) {
  GwCountPath path;
  path.counts.reserve(generations + 1);
  path.counts.push_back(1);
  for (std::size_t k = 0; k < generations; ++k) {
    path.counts.push_back(advance_count(law, path.counts.back(), 1, rng, budget));
  }
  return path;
}

double gw_normalized_count(const GwCountPath& path, double m) {
  return static_cast<double>(path.counts.back()) /
         std::pow(m, static_cast<double>(path.generation()));
}

PositionHistogram::PositionHistogram(const ParticleCloud& cloud) {
  for (double z : cloud.positions) add(z, 1);
}

PositionHistogram PositionHistogram::single(double position, std::uint64_t count) {
  PositionHistogram h;
  h.add(position, count);
  return h;
}

void PositionHistogram::add(double position, std::uint64_t count) {
  if (count == 0) return;
  bins_[position] += count;
  total_ += count;
}

double PositionHistogram::position_sum() const {
  CompensatedSum acc;
  for (const auto& [z, c] : bins_) acc.add(z * static_cast<double>(c));
  return acc.value();
}

Complex PositionHistogram::exp_sum(Complex beta) const {
  ComplexCompensatedSum acc;
  for (const auto& [z, c] : bins_) acc.add(static_cast<double>(c) * std::exp(beta * z));
  return acc.value();
}

PositionHistogram advance_histogram(const PositionHistogram& hist, const ClusterLaw& law,
                                    std::size_t generations, Stream& rng, std::uint64_t budget) {
  PositionHistogram current = hist;
  for (std::size_t k = 0; k < generations; ++k) {
    PositionHistogram next;
    for (const auto& [z, c] : current.bins()) {
      law.sample_aggregate(rng, c, [&](double dz, std::uint64_t n) { next.add(z + dz, n); });
    }
    if (next.total() > budget) throw BudgetExceeded(next.total(), budget);
    current = std::move(next);
  }
  return current;
}

PositionHistogram simulate_histogram(const ClusterLaw& law, std::size_t generations, Stream& rng,
                                     std::uint64_t budget) {
  return advance_histogram(PositionHistogram::single(0.0), law, generations, rng, budget);
}

double gw_limit_variance(const ClusterLaw& law) {
  const FinitePmf sizes = law.size_pmf();
  const double m = sizes.mean();
  return sizes.variance() / (m * m - m);
}

ModelParams model_params(const ClusterLaw& law) {
  ModelParams p;
  p.m = law.intensity_moment(0);
  const double m1 = law.intensity_moment(1) / p.m;
  const double m2 = law.intensity_moment(2) / p.m;
  p.d = m1;
  p.tau2 = m2 - m1 * m1;
  p.sigma2 = gw_limit_variance(law);
  p.analytic = true;
  return p;
}

}  // namespace brwsim
