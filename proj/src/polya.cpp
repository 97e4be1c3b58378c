#include "brwsim/polya.hpp"

#include <cmath>

#include "brwsim/error.hpp"

namespace brwsim::polya {

UrnState UrnState::initial(std::uint64_t b, std::uint64_t r, std::uint64_t c) {
  if (b == 0 || r == 0 || c == 0) throw InvalidArgument("urn needs b, r, c >= 1");
  return UrnState{b, r, c, b, r, 0};
}

void UrnState::validate() const {
  if (b == 0 || r == 0 || c == 0) throw InvalidArgument("urn needs b, r, c >= 1");
  if (black < b || red < r || (black - b) % c != 0 || (red - r) % c != 0 ||
      black + red != b + r + c * draws) {
    throw InvalidArgument("urn counts are not reachable from the initial state");
  }
}

UrnState draw(const UrnState& state, Stream& rng) {
  UrnState next = state;
  if (rng.below(state.black + state.red) < state.black) {
    next.black += state.c;
  } else {
    next.red += state.c;
  }
  ++next.draws;
  return next;
}

UrnState draw_n(UrnState state, std::uint64_t n, Stream& rng) {
  for (std::uint64_t k = 0; k < n; ++k) state = draw(state, rng);
  return state;
}

BetaParams conditional_limit_law(const UrnState& state) {
  state.validate();
  const double c = static_cast<double>(state.c);
  return {static_cast<double>(state.black) / c, static_cast<double>(state.red) / c};
}

BetaParams limit_law(std::uint64_t b, std::uint64_t r, std::uint64_t c) {
  return conditional_limit_law(UrnState::initial(b, r, c));
}

stats::KsReport beta_clt_check(double alpha, double beta, std::size_t replicates, Stream& rng) {
  if (!(alpha > 0.0 && beta > 0.0)) throw InvalidArgument("Beta parameters must be positive");
  const double s = alpha + beta;
  const double p = alpha / s;
  if (p <= 0.0 || p >= 1.0) throw InvalidArgument("degenerate limit proportion");
  std::vector<double> stat(replicates);
  const double root = std::sqrt(s);
  for (auto& x : stat) x = root * (beta_variate(rng, alpha, beta) - p);
  return stats::ks_statistic(stat, stats::normal(0.0, p * (1.0 - p)), "N(0, p(1-p))");
}

AswResult asw_check(std::uint64_t b, std::uint64_t r, std::uint64_t c, std::uint64_t prefix,
                    std::size_t replicates, Stream& rng) {
  if (prefix < 1) throw InvalidArgument("prefix must be at least one draw");
  AswResult out;
  Stream path = rng.child(0);
  out.frozen = draw_n(UrnState::initial(b, r, c), prefix, path);
  const BetaParams law = conditional_limit_law(out.frozen);
  const double z = out.frozen.proportion();
  const double root = std::sqrt(static_cast<double>(prefix));
  Stream cont = rng.child(1);
  out.statistic.resize(replicates);
  for (auto& x : out.statistic) x = root * (beta_variate(cont, law.alpha, law.beta) - z);
  out.variance_target = z * (1.0 - z);
  out.ks = stats::ks_statistic(out.statistic, stats::normal(0.0, out.variance_target),
                               "N(0, Z_n(1-Z_n))");
  return out;
}

std::vector<double> exact_black_law(std::uint64_t b, std::uint64_t r, std::uint64_t c,
                                    std::uint64_t n) {
  if (b == 0 || r == 0 || c == 0) throw InvalidArgument("urn needs b, r, c >= 1");
  std::vector<double> law{1.0};
  for (std::uint64_t step = 0; step < n; ++step) {
    std::vector<double> next(law.size() + 1, 0.0);
    const double total = static_cast<double>(b + r + c * step);
    for (std::size_t k = 0; k < law.size(); ++k) {
      const double black = static_cast<double>(b + c * k);
      next[k + 1] += law[k] * black / total;
      next[k] += law[k] * (total - black) / total;
    }
    law = std::move(next);
  }
  return law;
}

}  // namespace brwsim::polya
