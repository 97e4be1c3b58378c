#include "brwsim/random.hpp"

#include <algorithm>
#include <cmath>

namespace brwsim {

std::uint64_t Stream::below(std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

Stream derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  Stream s(seed);
  for (std::uint64_t k : keys) s = s.child(k);
  return s;
}

double standard_normal(Stream& rng) {
  // A fresh distribution per call: std::normal_distribution caches its second
  // variate, which would couple consecutive calls through hidden state.
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

double unit_exponential(Stream& rng) { return -std::log(rng.uniform_open()); }

double gamma_variate(Stream& rng, double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(rng);
}

double beta_variate(Stream& rng, double a, double b) {
  const double x = gamma_variate(rng, a);
  const double y = gamma_variate(rng, b);
  return x / (x + y);
}

std::uint64_t binomial(Stream& rng, std::uint64_t trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<std::uint64_t> dist(trials, p);
  return dist(rng);
}

std::size_t sample_index(Stream& rng, std::span<const double> cumulative) {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) return cumulative.size() - 1;
  return static_cast<std::size_t>(it - cumulative.begin());
}

void multinomial(Stream& rng, std::uint64_t trials, std::span<const double> probs,
                 std::span<std::uint64_t> out) {
  double remaining_mass = 1.0;
  std::uint64_t remaining = trials;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (i + 1 == probs.size() || remaining == 0) {
      out[i] = remaining;
      for (std::size_t j = i + 1; j < probs.size(); ++j) out[j] = 0;
      return;
    }
    const double p = remaining_mass > 0.0 ? std::clamp(probs[i] / remaining_mass, 0.0, 1.0) : 0.0;
    out[i] = binomial(rng, remaining, p);
    remaining -= out[i];
    remaining_mass -= probs[i];
  }
}

}  // namespace brwsim
