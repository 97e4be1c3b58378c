#pragma once

#include <cstdint>
#include <vector>

#include "brwsim/random.hpp"
#include "brwsim/stats.hpp"

namespace brwsim::polya {

/// Two-colour Polya urn: draw a ball, return it with c more of its colour.
struct UrnState {
  std::uint64_t b = 1, r = 1, c = 1;  // initial black, red, replacement
  std::uint64_t black = 1, red = 1;   // B_n, R_n
  std::uint64_t draws = 0;            // n

  static UrnState initial(std::uint64_t b, std::uint64_t r, std::uint64_t c);
  [[nodiscard]] double proportion() const noexcept {
    return static_cast<double>(black) / static_cast<double>(black + red);
  }
  /// Throws InvalidArgument unless the counts are reachable from (b, r, c).
  void validate() const;
};

UrnState draw(const UrnState& state, Stream& rng);
UrnState draw_n(UrnState state, std::uint64_t n, Stream& rng);

struct BetaParams {
  double alpha = 0;
  double beta = 0;
};

/// Law of Z_inf given the current counts: Beta(B_n/c, R_n/c).
BetaParams conditional_limit_law(const UrnState& state);

/// Z_inf ~ Beta(b/c, r/c).
BetaParams limit_law(std::uint64_t b, std::uint64_t r, std::uint64_t c);

/// sqrt(a+b) (Beta(a,b) - a/(a+b)) over M Gamma-ratio draws vs N(0, p(1-p)).
stats::KsReport beta_clt_check(double alpha, double beta, std::size_t replicates, Stream& rng);

struct AswResult {
  UrnState frozen;
  std::vector<double> statistic;  // sqrt(n) (Z_inf - Z_n) per continuation
  double variance_target = 0;     // Z_n (1 - Z_n)
  stats::KsReport ks;
};

/// Freezes one urn path at `prefix` draws and tests the conditional law of
/// sqrt(n)(Z_inf - Z_n) against N(0, Z_n(1 - Z_n)).
AswResult asw_check(std::uint64_t b, std::uint64_t r, std::uint64_t c, std::uint64_t prefix,
                    std::size_t replicates, Stream& rng);

/// Exact law of B_n by dynamic programming over draw sequences; entry k is
/// P(B_n = b + k c).
std::vector<double> exact_black_law(std::uint64_t b, std::uint64_t r, std::uint64_t c,
                                    std::uint64_t n);

}  // namespace brwsim::polya
