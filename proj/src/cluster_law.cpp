#include "brwsim/cluster_law.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "brwsim/error.hpp"

namespace brwsim {

namespace {

constexpr double kPmfTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Complex ipow_exp(double z, int k, Complex beta) {
  return std::pow(z, k) * std::exp(beta * z);
}

}  // namespace

FinitePmf FinitePmf::from_pairs(std::vector<std::pair<double, double>> pairs) {
  if (pairs.empty()) throw InvalidLaw("pmf has empty support");
  std::map<double, double> merged;
  for (const auto& [value, prob] : pairs) {
    if (!std::isfinite(value) || !std::isfinite(prob)) throw InvalidLaw("pmf entry is not finite");
    if (prob < 0.0) throw InvalidLaw("pmf has a negative probability");
    merged[value] += prob;
  }
  double total = 0.0;
  for (const auto& [value, prob] : merged) total += prob;
  if (std::abs(total - 1.0) > kPmfTolerance) {
    throw InvalidLaw("pmf probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  FinitePmf pmf;
  double running = 0.0;
  for (const auto& [value, prob] : merged) {
    if (prob == 0.0) continue;
    pmf.values_.push_back(value);
    pmf.probs_.push_back(prob);
    running += prob;
    pmf.cumulative_.push_back(running);
  }
  pmf.cumulative_.back() = 1.0;
  return pmf;
}

double FinitePmf::mean() const noexcept { return moment(1); }

double FinitePmf::moment(int k) const noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) acc += probs_[i] * std::pow(values_[i], k);
  return acc;
}

double FinitePmf::variance() const noexcept {
  const double mu = mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    acc += probs_[i] * (values_[i] - mu) * (values_[i] - mu);
  }
  return acc;
}

double FinitePmf::probability_of(double value) const noexcept {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == value) return probs_[i];
  }
  return 0.0;
}

double FinitePmf::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Complex FinitePmf::mgf(Complex beta) const noexcept {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) acc += probs_[i] * std::exp(beta * values_[i]);
  return acc;
}

ClusterLaw ClusterLaw::deterministic(std::vector<double> displacements) {
  ClusterLaw law(Deterministic{std::move(displacements)});
  law.validate();
  return law;
}

ClusterLaw ClusterLaw::count_and_shift(FinitePmf count, FinitePmf shift) {
  ClusterLaw law(CountAndShift{std::move(count), std::move(shift)});
  law.validate();
  return law;
}

void ClusterLaw::validate() const {
  std::visit(Overloaded{
                 [](const Deterministic& d) {
                   if (d.displacements.empty()) throw InvalidLaw("cluster must be nonempty");
                   if (d.displacements.size() == 1) {
                     throw InvalidLaw("cluster of exactly one particle with probability 1");
                   }
                   for (double z : d.displacements) {
                     if (!std::isfinite(z)) throw InvalidLaw("displacement is not finite");
                   }
                 },
                 [](const CountAndShift& c) {
                   if (c.count.size() == 0 || c.shift.size() == 0) {
                     throw InvalidLaw("count and shift laws must be set");
                   }
                   for (double v : c.count.values()) {
                     if (v < 1.0 || v != std::floor(v)) {
                       throw InvalidLaw("cluster sizes must be positive integers");
                     }
                     if (v > 1e6) throw InvalidLaw("cluster size exceeds 1e6");
                   }
                   if (c.count.probability_of(1.0) >= 1.0) {
                     throw InvalidLaw("cluster of exactly one particle with probability 1");
                   }
                 },
                 [](const BstSplit&) {},
                 [](const RrtSplit&) {},
             },
             law_);
}

std::string ClusterLaw::name() const {
  return std::visit(Overloaded{
                        [](const Deterministic&) { return std::string("Deterministic"); },
                        [](const CountAndShift&) { return std::string("CountAndShift"); },
                        [](const BstSplit&) { return std::string("BstSplit"); },
                        [](const RrtSplit&) { return std::string("RrtSplit"); },
                    },
                    law_);
}

Complex ClusterLaw::mgf(Complex beta) const { return mgf_derivative(beta, 0); }

Complex ClusterLaw::mgf_derivative(Complex beta, int k) const {
  return std::visit(Overloaded{
                        [&](const Deterministic& d) {
                          Complex acc = 0.0;
                          for (double z : d.displacements) acc += ipow_exp(z, k, beta);
                          return acc;
                        },
                        [&](const CountAndShift& c) {
                          Complex acc = 0.0;
                          const auto& v = c.shift.values();
                          const auto& p = c.shift.probs();
                          for (std::size_t i = 0; i < v.size(); ++i) acc += p[i] * ipow_exp(v[i], k, beta);
                          return c.count.mean() * acc;
                        },
                        [&](const BstSplit&) { return Complex(2.0) * std::exp(beta); },
                        [&](const RrtSplit&) { return Complex(k == 0 ? 1.0 : 0.0) + std::exp(beta); },
                    },
                    law_);
}

double ClusterLaw::intensity_moment(int k) const { return mgf_derivative(0.0, k).real(); }

FinitePmf ClusterLaw::size_pmf() const {
  return std::visit(
      Overloaded{
          [](const Deterministic& d) {
            return FinitePmf::point_mass(static_cast<double>(d.displacements.size()));
          },
          [](const CountAndShift& c) { return c.count; },
          [](const BstSplit&) { return FinitePmf::point_mass(2.0); },
          [](const RrtSplit&) { return FinitePmf::point_mass(2.0); },
      },
      law_);
}

double ClusterLaw::max_displacement() const {
  return std::visit(Overloaded{
                        [](const Deterministic& d) {
                          double m = 0.0;
                          for (double z : d.displacements) m = std::max(m, std::abs(z));
                          return m;
                        },
                        [](const CountAndShift& c) { return c.shift.max_abs(); },
                        [](const BstSplit&) { return 1.0; },
                        [](const RrtSplit&) { return 1.0; },
                    },
                    law_);
}

bool ClusterLaw::is_lattice() const {
  auto integral = [](double z) { return z == std::floor(z); };
  return std::visit(Overloaded{
                        [&](const Deterministic& d) {
                          return std::all_of(d.displacements.begin(), d.displacements.end(), integral);
                        },
                        [&](const CountAndShift& c) {
                          return std::all_of(c.shift.values().begin(), c.shift.values().end(), integral);
                        },
                        [](const BstSplit&) { return true; },
                        [](const RrtSplit&) { return true; },
                    },
                    law_);
}

void ClusterLaw::sample_cluster(Stream& rng, std::vector<double>& out) const {
  std::visit(Overloaded{
                 [&](const Deterministic& d) {
                   out.insert(out.end(), d.displacements.begin(), d.displacements.end());
                 },
                 [&](const CountAndShift& c) {
                   const auto size = static_cast<std::size_t>(c.count.sample(rng));
                   for (std::size_t i = 0; i < size; ++i) out.push_back(c.shift.sample(rng));
                 },
                 [&](const BstSplit&) {
                   out.push_back(1.0);
                   out.push_back(1.0);
                 },
                 [&](const RrtSplit&) {
                   out.push_back(0.0);
                   out.push_back(1.0);
                 },
             },
             law_);
}

void ClusterLaw::sample_aggregate(Stream& rng, std::uint64_t parents,
                                  const std::function<void(double, std::uint64_t)>& emit) const {
  if (parents == 0) return;
  std::visit(Overloaded{
                 [&](const Deterministic& d) {
                   for (double z : d.displacements) emit(z, parents);
                 },
                 [&](const CountAndShift& c) {
                   const std::uint64_t children = sample_total_offspring(rng, parents);
                   std::vector<std::uint64_t> split(c.shift.size());
                   multinomial(rng, children, c.shift.probs(), split);
                   for (std::size_t i = 0; i < split.size(); ++i) {
                     if (split[i] > 0) emit(c.shift.values()[i], split[i]);
                   }
                 },
                 [&](const BstSplit&) { emit(1.0, 2 * parents); },
                 [&](const RrtSplit&) {
                   emit(0.0, parents);
                   emit(1.0, parents);
                 },
             },
             law_);
}

std::uint64_t ClusterLaw::sample_total_offspring(Stream& rng, std::uint64_t parents) const {
  if (const auto* c = std::get_if<CountAndShift>(&law_)) {
    std::vector<std::uint64_t> split(c->count.size());
    multinomial(rng, parents, c->count.probs(), split);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < split.size(); ++i) {
      total += split[i] * static_cast<std::uint64_t>(c->count.values()[i]);
    }
    return total;
  }
  return parents * static_cast<std::uint64_t>(size_pmf().values().front());
}

}  // namespace brwsim
