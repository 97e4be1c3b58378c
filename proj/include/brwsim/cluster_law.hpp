#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "brwsim/random.hpp"

namespace brwsim {

using Complex = std::complex<double>;

/// Probability mass function with finite support.
class FinitePmf {
 public:
  FinitePmf() = default;

  /// Builds from (value, probability) pairs. Duplicate values are merged.
  /// Throws InvalidLaw unless probabilities are nonnegative and sum to
  /// 1 within 1e-12.
  static FinitePmf from_pairs(std::vector<std::pair<double, double>> pairs);
  static FinitePmf point_mass(double value) { return from_pairs({{value, 1.0}}); }

  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] const std::vector<double>& probs() const noexcept { return probs_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

  [[nodiscard]] double mean() const noexcept;
  [[nodiscard]] double moment(int k) const noexcept;
  [[nodiscard]] double variance() const noexcept;
  [[nodiscard]] double probability_of(double value) const noexcept;
  [[nodiscard]] double max_abs() const noexcept;

  /// E[exp(beta X)].
  [[nodiscard]] Complex mgf(Complex beta) const noexcept;

  double sample(Stream& rng) const { return values_[sample_index(rng, cumulative_)]; }

 private:
  std::vector<double> values_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

struct Deterministic {
  std::vector<double> displacements;
};

/// Random cluster size, each child shifted independently.
struct CountAndShift {
  FinitePmf count;
  FinitePmf shift;
};

/// delta_x -> 2 delta_{x+1}
struct BstSplit {};

/// delta_x -> delta_x + delta_{x+1}
struct RrtSplit {};

/// Law of the offspring displacement point process of a branching random walk.
///
/// Every law admitted here has nonempty, bounded clusters with finitely
/// supported displacements, and the probability of a single-child cluster is
/// strictly below one. Under those restrictions every exponential moment of
/// the cluster exists, so the p-th moment condition on sum_z exp(beta z) holds
/// for all p and there is nothing to verify numerically.
class ClusterLaw {
 public:
  using Variant = std::variant<Deterministic, CountAndShift, BstSplit, RrtSplit>;

  static ClusterLaw deterministic(std::vector<double> displacements);
  static ClusterLaw count_and_shift(FinitePmf count, FinitePmf shift);
  static ClusterLaw bst_split() { return ClusterLaw(BstSplit{}); }
  static ClusterLaw rrt_split() { return ClusterLaw(RrtSplit{}); }

  [[nodiscard]] const Variant& variant() const noexcept { return law_; }
  [[nodiscard]] std::string name() const;

  /// m(beta) = E sum_{z in cluster} exp(beta z), closed form for every variant.
  [[nodiscard]] Complex mgf(Complex beta) const;

  /// m = m(0), the mean cluster size.
  [[nodiscard]] double mean_count() const { return mgf(0.0).real(); }

  /// k-th derivative of m(beta) at 0, i.e. E sum_z z^k.
  [[nodiscard]] double intensity_moment(int k) const;

  /// k-th derivative of m(beta) at an arbitrary point.
  [[nodiscard]] Complex mgf_derivative(Complex beta, int k) const;

  /// Law of the number of children.
  [[nodiscard]] FinitePmf size_pmf() const;

  [[nodiscard]] double max_displacement() const;

  /// True if every displacement is an integer (positions stay on the lattice).
  [[nodiscard]] bool is_lattice() const;

  /// Appends the displacements of one freshly drawn cluster to `out`.
  void sample_cluster(Stream& rng, std::vector<double>& out) const;

  /// Offspring of `parents` particles sitting at the same point, aggregated by
  /// displacement. Calls `emit(offset, count)` once or more per occupied
  /// offset. Equal in law to drawing each cluster separately.
  void sample_aggregate(Stream& rng, std::uint64_t parents,
                        const std::function<void(double, std::uint64_t)>& emit) const;

  /// Total number of children of `parents` particles.
  [[nodiscard]] std::uint64_t sample_total_offspring(Stream& rng, std::uint64_t parents) const;

 private:
  explicit ClusterLaw(Variant law) : law_(std::move(law)) {}
  void validate() const;

  Variant law_;
};

}  // namespace brwsim
