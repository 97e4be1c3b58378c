#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace brwsim {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream.
///
/// A stream is identified by a 64-bit key; the i-th output is a pure function
/// of (key, i). Child streams are derived from the key alone, so the draws a
/// child sees never depend on how much of the parent has been consumed. This
/// is what makes replicate-parallel runs bit-identical for any worker count.
///
/// Satisfies UniformRandomBitGenerator, so it plugs into <random>
/// distributions.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key = 0) noexcept : key_(mix64(key ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform double on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform double on (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer on [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  [[nodiscard]] Stream child(std::uint64_t index) const noexcept {
    Stream s;
    s.key_ = mix64(key_ ^ mix64(index + 0x3c6ef372fe94f82bULL));
    return s;
  }

  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
  [[nodiscard]] std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stream keyed by (seed, k0, k1, ...).
Stream derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

double standard_normal(Stream& rng);
double unit_exponential(Stream& rng);
double gamma_variate(Stream& rng, double shape);
double beta_variate(Stream& rng, double a, double b);
std::uint64_t binomial(Stream& rng, std::uint64_t trials, double p);

/// Inverse-CDF draw of an index from a small table of cumulative weights.
/// `cumulative` must be nondecreasing with cumulative.back() == 1.
std::size_t sample_index(Stream& rng, std::span<const double> cumulative);

/// Multinomial split of `trials` over `probs` by sequential conditional
/// binomials; writes one count per category into `out`.
void multinomial(Stream& rng, std::uint64_t trials, std::span<const double> probs,
                 std::span<std::uint64_t> out);

}  // namespace brwsim
