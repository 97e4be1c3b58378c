#include <cmath>
#include <vector>

#include "brwsim/error.hpp"
#include "brwsim/yule.hpp"
#include "doctest.h"

using namespace brwsim;
using namespace brwsim::yule;

TEST_CASE("first birth is at time zero") {
  Stream rng(1);
  const auto t = sample_times(1, 2.0, rng);
  CHECK(t.size() == 1);
  CHECK(t.time(1) == 0.0);
  CHECK_THROWS_AS(sample_times(0, 1.0, rng), InvalidArgument);
  CHECK_THROWS_AS(sample_times(3, 0.0, rng), InvalidArgument);
}

TEST_CASE("times follow the harmonic representation and increase") {
  Stream rng(2);
  const auto t = sample_times(50, 1.5, rng);
  double acc = 0.0;
  for (std::size_t k = 1; k < 50; ++k) {
    acc += t.exponentials()[k - 1] / static_cast<double>(k);
    CHECK(t.scaled_times()[k] == doctest::Approx(acc).epsilon(1e-14));
    CHECK(t.time(k + 1) > t.time(k));
  }
}

TEST_CASE("changing lambda rescales the times exactly") {
  Stream rng(3);
  const auto unit = sample_times(200, 1.0, rng);
  const auto fast = unit.with_rate(3.0);
  const auto a = unit.times();
  const auto b = fast.times();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == a[i] / 3.0);
}

TEST_CASE("mean of lambda T_4 is H_3") {
  std::vector<double> v;
  for (std::uint64_t r = 0; r < 100000; ++r) {
    Stream rng = derive_stream(4, {r});
    v.push_back(sample_times(4, 1.0, rng).scaled_times().back());
  }
  const auto e = stats::mean_estimate(v);
  CHECK(e.within(1.0 + 0.5 + 1.0 / 3.0));
}

TEST_CASE("moment product") {
  for (std::size_t n : {1u, 2u, 10u, 1000u, 1000000u}) {
    CHECK(std::abs(moment_product(n, 1.0).exact - 1.0) <= 1e-12);
    CHECK(moment_product(n, 0.0).exact == 1.0);
  }
  CHECK(std::abs(moment_product(10, 2.0).exact - 20.0 / 11.0) <= 1e-12);
  CHECK(moment_product(10, 2.0).limit == doctest::Approx(2.0));
  CHECK(moment_product(100, 0.5).exact == doctest::Approx(0.88734).epsilon(1e-4));
  CHECK(moment_product(100, 0.5).limit == doctest::Approx(std::tgamma(1.5)));
  CHECK_THROWS_AS(moment_product(10, -1.0), InvalidArgument);
}

TEST_CASE("Monte Carlo moments match the exact product") {
  for (std::size_t n : {10u, 100u}) {
    for (double r : {0.5, 1.0, 2.0}) {
      std::vector<double> v;
      for (std::uint64_t k = 0; k < 40000; ++k) {
        Stream rng = derive_stream(5, {n, k});
        v.push_back(std::pow(sample_times(n, 1.0, rng).n_infty_estimate(), r));
      }
      CHECK(stats::mean_estimate(v).within(moment_product(n, r).exact, 3.5));
    }
  }
}

TEST_CASE("Kendall spacings of a long path look exponential") {
  Stream rng(6);
  const auto t = sample_times(100000, 1.0, rng);
  const auto report = kendall_check(t, t.n_infty_estimate());
  CHECK(report.n == 99000);
  CHECK(report.statistic < 0.01);
  CHECK_THROWS_AS(kendall_check(sample_times(500, 1.0, rng), 1.0), InvalidArgument);
}

TEST_CASE("KS rejects equal spacings") {
  std::vector<double> equal(5000, 1.0);
  const auto r = stats::ks_statistic(equal, [](double x) { return stats::exponential_cdf(x); });
  CHECK(r.statistic == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(r.p_value < 0.01);
}
