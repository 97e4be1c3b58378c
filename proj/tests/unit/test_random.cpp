#include <cmath>
#include <numeric>
#include <vector>

#include "brwsim/random.hpp"
#include "doctest.h"

using namespace brwsim;

TEST_CASE("stream output is a pure function of key and counter") {
  Stream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  Stream c(43);
  CHECK(Stream(42)() != c());
}

TEST_CASE("child streams ignore how much of the parent was consumed") {
  Stream fresh(7);
  Stream used(7);
  for (int i = 0; i < 1000; ++i) used();
  Stream c1 = fresh.child(3);
  Stream c2 = used.child(3);
  for (int i = 0; i < 10; ++i) CHECK(c1() == c2());
  CHECK(fresh.child(3)() != fresh.child(4)());
}

TEST_CASE("derive_stream distinguishes key tuples") {
  CHECK(derive_stream(1, {0, 1})() != derive_stream(1, {1, 0})());
  CHECK(derive_stream(1, {5})() == derive_stream(1, {5})());
}

TEST_CASE("uniform draws stay in range and have the right mean") {
  Stream rng(1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = rng.uniform_open();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("below is unbiased over a small range") {
  Stream rng(2);
  std::vector<int> counts(5, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto k = rng.below(5);
    REQUIRE(k < 5);
    ++counts[k];
  }
  for (int c : counts) CHECK(std::abs(c - n / 5) < 5 * std::sqrt(n * 0.2 * 0.8));
}

TEST_CASE("multinomial conserves the trial count") {
  Stream rng(3);
  const std::vector<double> probs{0.2, 0.5, 0.3};
  std::vector<std::uint64_t> out(3);
  double first = 0.0;
  for (int i = 0; i < 2000; ++i) {
    multinomial(rng, 1000, probs, out);
    CHECK(std::accumulate(out.begin(), out.end(), std::uint64_t{0}) == 1000);
    first += static_cast<double>(out[0]);
  }
  CHECK(std::abs(first / 2000.0 - 200.0) < 4.0 * std::sqrt(160.0 / 2000.0));
}

TEST_CASE("beta variate mean") {
  Stream rng(4);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += beta_variate(rng, 2.0, 3.0);
  const double var = 2.0 * 3.0 / (25.0 * 6.0);
  CHECK(std::abs(sum / n - 0.4) < 4.0 * std::sqrt(var / n));
}

TEST_CASE("sample_index follows the cumulative table") {
  Stream rng(5);
  const std::vector<double> cumulative{0.25, 1.0};
  int zeros = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) zeros += sample_index(rng, cumulative) == 0 ? 1 : 0;
  CHECK(std::abs(zeros - n / 4) < 4 * std::sqrt(n * 0.25 * 0.75));
}
