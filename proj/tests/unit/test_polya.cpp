#include <cmath>
#include <vector>

#include "brwsim/error.hpp"
#include "brwsim/polya.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace brwsim;
using namespace brwsim::polya;

TEST_CASE("one draw from a symmetric urn") {
  int black = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    Stream rng = derive_stream(1, {static_cast<std::uint64_t>(i)});
    const auto s = draw(UrnState::initial(1, 1, 1), rng);
    CHECK((s.black == 1 || s.black == 2));
    CHECK(s.black + s.red == 3);
    black += s.black == 2 ? 1 : 0;
  }
  CHECK(std::abs(black - n / 2) < 3.5 * std::sqrt(n * 0.25));
}

TEST_CASE("state invariants") {
  Stream rng(2);
  auto s = UrnState::initial(3, 5, 2);
  for (int i = 0; i < 100; ++i) {
    s = draw(s, rng);
    CHECK_NOTHROW(s.validate());
    CHECK(s.black + s.red == 3 + 5 + 2 * s.draws);
    CHECK(s.proportion() > 0.0);
    CHECK(s.proportion() < 1.0);
  }
  UrnState bad = UrnState::initial(1, 1, 2);
  bad.black = 2;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK_THROWS_AS(UrnState::initial(0, 1, 1), InvalidArgument);
}

TEST_CASE("conditional limit law") {
  const auto u = conditional_limit_law(UrnState::initial(1, 1, 1));
  CHECK(u.alpha == 1.0);
  CHECK(u.beta == 1.0);
  UrnState s{1, 1, 1, 30, 20, 48};
  const auto b = conditional_limit_law(s);
  CHECK(b.alpha == 30.0);
  CHECK(b.beta == 20.0);
  CHECK(b.alpha / (b.alpha + b.beta) == doctest::Approx(s.proportion()));
  UrnState s2{2, 2, 2, 30, 20, 23};
  CHECK(conditional_limit_law(s2).alpha == 15.0);
  CHECK(conditional_limit_law(s2).beta == 10.0);
}

TEST_CASE("dynamic programme matches sequence enumeration") {
  for (int n = 0; n <= 12; ++n) {
    const auto dp = exact_black_law(1, 2, 1, static_cast<std::uint64_t>(n));
    const auto brute = oracle::polya_sequence_enumeration(1, 2, 1, n);
    REQUIRE(dp.size() == brute.size());
    for (std::size_t k = 0; k < dp.size(); ++k) CHECK(dp[k] == doctest::Approx(brute[k]).epsilon(1e-12));
  }
  const auto law = exact_black_law(2, 3, 2, 7);
  const auto brute = oracle::polya_sequence_enumeration(2, 3, 2, 7);
  for (std::size_t k = 0; k < law.size(); ++k) CHECK(law[k] == doctest::Approx(brute[k]));
}

TEST_CASE("martingale property in the exact law") {
  // E Z_{n+1} = E Z_n = b/(b+r) for every n.
  for (std::uint64_t n = 0; n <= 12; ++n) {
    const auto law = exact_black_law(1, 2, 1, n);
    double ez = 0.0;
    for (std::size_t k = 0; k < law.size(); ++k) ez += law[k] * (1.0 + k) / (3.0 + n);
    CHECK(ez == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  }
}

TEST_CASE("proportion is a martingale in simulation") {
  std::vector<double> z;
  for (std::uint64_t i = 0; i < 40000; ++i) {
    Stream rng = derive_stream(3, {i});
    z.push_back(draw_n(UrnState::initial(1, 2, 1), 50, rng).proportion());
  }
  CHECK(stats::mean_estimate(z).within(1.0 / 3.0, 3.5));
}

TEST_CASE("Beta CLT") {
  Stream rng(4);
  const auto sym = beta_clt_check(10000, 10000, 40000, rng);
  CHECK(sym.statistic < 0.02);
  const auto skew = beta_clt_check(20000, 10000, 40000, rng);
  CHECK(skew.statistic < 0.02);
}

TEST_CASE("a.s.w. check on one frozen path") {
  Stream rng(5);
  const auto r = asw_check(1, 1, 1, 10000, 20000, rng);
  CHECK(r.frozen.draws == 10000);
  CHECK(r.variance_target == doctest::Approx(r.frozen.proportion() * (1 - r.frozen.proportion())));
  CHECK(r.ks.statistic < 0.03);

  Stream rng2(6);
  const auto d = asw_check(1000000, 1, 1, 10, 2000, rng2);
  for (double x : d.statistic) CHECK(std::abs(x) < 0.05);
}
