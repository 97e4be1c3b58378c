#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "brwsim/cluster_law.hpp"
#include "brwsim/random.hpp"

namespace brwsim {

inline constexpr std::uint64_t kDefaultParticleBudget = std::uint64_t{1} << 24;

/// Positions of all particles alive at one generation.
struct ParticleCloud {
  std::size_t generation = 0;
  std::vector<double> positions;

  [[nodiscard]] std::size_t size() const noexcept { return positions.size(); }
  /// Direct (compensated) sum over the cloud.
  [[nodiscard]] double position_sum() const;
};

struct GenerationSummary {
  std::uint64_t count = 0;  // N_k
  double position_sum = 0;  // S_k, accumulated incrementally while stepping
};

struct SimulationOptions {
  std::uint64_t particle_budget = kDefaultParticleBudget;
  bool keep_genealogy = false;
};

/// Clouds of generations 0..n together with their summaries.
///
/// parents[k][i] is the index in clouds[k] of the parent of particle i in
/// clouds[k + 1]; the vector is empty unless genealogy was requested.
struct BrwTrajectory {
  std::vector<ParticleCloud> clouds;
  std::vector<GenerationSummary> summaries;
  std::vector<std::vector<std::uint32_t>> parents;

  [[nodiscard]] std::size_t generation() const noexcept { return clouds.size() - 1; }
  [[nodiscard]] const ParticleCloud& last() const { return clouds.back(); }
  [[nodiscard]] bool has_genealogy() const noexcept {
    return parents.size() + 1 == clouds.size();
  }
};

/// Replaces each particle of `cloud` by an independent cluster. Writes parent
/// indices into `parents_out` when it is non-null and the incremental
/// position sum into `summary_out` when non-null.
ParticleCloud step(const ParticleCloud& cloud, const ClusterLaw& law, Stream& rng,
                   std::uint64_t particle_budget = kDefaultParticleBudget,
                   std::vector<std::uint32_t>* parents_out = nullptr,
                   GenerationSummary* summary_out = nullptr);

BrwTrajectory initial_trajectory();

BrwTrajectory simulate(const ClusterLaw& law, std::size_t generations, Stream& rng,
                       const SimulationOptions& options = {});

/// Appends `extra` generations to `traj` in place.
void extend(BrwTrajectory& traj, const ClusterLaw& law, std::size_t extra, Stream& rng,
            const SimulationOptions& options = {});

/// N_n / m^n for the last generation of the trajectory.
double gw_normalized_count(const BrwTrajectory& traj, double m);

/// Galton-Watson population sizes N_0..N_n only.
struct GwCountPath {
  std::vector<std::uint64_t> counts;
  [[nodiscard]] std::size_t generation() const noexcept { return counts.size() - 1; }
};

inline constexpr std::uint64_t kAggregateBudget = std::uint64_t{1} << 52;

GwCountPath simulate_counts(const ClusterLaw& law, std::size_t generations, Stream& rng,
                            std::uint64_t budget = kAggregateBudget);

/// Advances a population of `count` particles by `generations` steps.
std::uint64_t advance_count(const ClusterLaw& law, std::uint64_t count, std::size_t generations,
                            Stream& rng, std::uint64_t budget = kAggregateBudget);

double gw_normalized_count(const GwCountPath& path, double m);

/// Particle counts keyed by position. Particles sharing a position are
/// exchangeable, so stepping the histogram is equal in law to stepping the
/// full cloud while costing O(#distinct positions) per generation.
class PositionHistogram {
 public:
  PositionHistogram() = default;
  explicit PositionHistogram(const ParticleCloud& cloud);
  static PositionHistogram single(double position, std::uint64_t count = 1);

  [[nodiscard]] const std::map<double, std::uint64_t>& bins() const noexcept { return bins_; }
  [[nodiscard]] std::uint64_t total() const noexcept { return total_; }
  [[nodiscard]] double position_sum() const;
  /// sum_j exp(beta z_j)
  [[nodiscard]] Complex exp_sum(Complex beta) const;

  void add(double position, std::uint64_t count);

 private:
  std::map<double, std::uint64_t> bins_;
  std::uint64_t total_ = 0;
};

PositionHistogram advance_histogram(const PositionHistogram& hist, const ClusterLaw& law,
                                    std::size_t generations, Stream& rng,
                                    std::uint64_t budget = kAggregateBudget);

PositionHistogram simulate_histogram(const ClusterLaw& law, std::size_t generations, Stream& rng,
                                     std::uint64_t budget = kAggregateBudget);

/// Scalars of the model that the limit theorems are phrased in.
struct ModelParams {
  double m = 0;       // mean cluster size, m(0)
  double d = 0;       // phi'(0)
  double tau2 = 0;    // phi''(0)
  double sigma2 = 0;  // Var N_infinity
  bool analytic = true;
};

/// m, d and tau2 from the closed form m(beta); sigma2 = Var(size)/(m^2 - m).
ModelParams model_params(const ClusterLaw& law);

/// Var N_infinity of the embedded Galton-Watson process.
double gw_limit_variance(const ClusterLaw& law);

}  // namespace brwsim
