//
// Copyright 2026 The privcov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "privcov/errors.hpp"
#include "privcov/random.hpp"
#include "privcov/stats.hpp"
#include "test_oracles.hpp"

using namespace privcov;

TEST_CASE("identical (seed, stream) pairs reproduce bit-exact sequences") {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  for (int i = 0; i < 2000; ++i) {
    switch (i % 5) {
      case 0: CHECK(a.next_u64() == b.next_u64()); break;
      case 1: CHECK(a.uniform() == b.uniform()); break;
      case 2: CHECK(a.gaussian() == b.gaussian()); break;
      case 3: CHECK(a.exponential() == b.exponential()); break;
      case 4: CHECK(a.gamma(3.5, 0.8) == b.gamma(3.5, 0.8)); break;
    }
  }
  RandomStream c(42, 8);
  CHECK(a.next_u64() != c.next_u64());
}

TEST_CASE("child streams are reproducible and distinct") {
  RandomStream parent(9001, 3);
  RandomStream c0 = parent.child(0);
  RandomStream c0_again = RandomStream(9001, 3).child(0);
  RandomStream c1 = parent.child(1);
  CHECK(c0.next_u64() == c0_again.next_u64());
  CHECK(c0.next_u64() != c1.next_u64());
}

TEST_CASE("distinct streams are empirically uncorrelated") {
  const int n = 100000;
  RandomStream s0(271828, 0);
  RandomStream s1(271828, 1);
  std::vector<double> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = s0.uniform();
    b[i] = s1.uniform();
  }
  CHECK(std::abs(stats::correlation(a, b)) < 0.01);
}

TEST_CASE("uniform stays inside the open interval") {
  RandomStream rng(5);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian moments") {
  const int n = 1000000;
  RandomStream rng(77);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.gaussian();
  CHECK(std::abs(stats::mean(x)) < 0.005);
  CHECK(std::abs(stats::stddev(x) * stats::stddev(x) - 1.0) < 0.01);
}

TEST_CASE("exponential mean") {
  const int n = 1000000;
  RandomStream rng(78);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.exponential();
  CHECK(std::abs(stats::mean(x) - 1.0) < 0.01);
}

TEST_CASE("laplace moments, tail mass and parameter validation") {
  const int n = 1000000;
  RandomStream rng(79);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.laplace(1.0);
  CHECK(std::abs(stats::mean(x)) < 0.005);

  // Variance oracle: int x^2 (1/2) e^{-|x|} dx = int_0^inf x^2 e^{-x} dx = 2.
  const double var_oracle = test_oracles::simpson(
      [](double t) { return t * t * std::exp(-t); }, 0.0, 60.0, 60000);
  CHECK(var_oracle == doctest::Approx(2.0).epsilon(1e-8));
  const double sd = stats::stddev(x);
  CHECK(std::abs(sd * sd - var_oracle) < 0.02);

  // P(|x| > b ln 2) = 1/2 by CDF inversion.
  double tail = 0.0;
  for (double v : x) {
    if (std::abs(v) > std::log(2.0)) tail += 1.0;
  }
  CHECK(std::abs(tail / n - 0.5) < 0.005);

  CHECK_THROWS_AS(rng.laplace(0.0), ParameterError);
  CHECK_THROWS_AS(rng.laplace(-1.0), ParameterError);
}

TEST_CASE("gamma moments at shape d^2 = 100") {
  const int n = 100000;
  const double rho = 0.37;
  RandomStream rng(80);
  std::vector<double> x(n), x2(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.gamma(100.0, rho);
    x2[i] = x[i] * x[i];
  }
  // mean = shape * scale, second moment = shape (shape + 1) scale^2.
  CHECK(std::abs(stats::mean(x) - 100.0 * rho) < 0.03 * 100.0 * rho);
  const double m2 = 100.0 * 101.0 * rho * rho;
  CHECK(std::abs(stats::mean(x2) - m2) < 0.05 * m2);
}

TEST_CASE("gamma with unit shape is exponential") {
  const int n = 200000;
  const double scale = 1.7;
  RandomStream rng(81);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.gamma(1.0, scale);
  const double med = stats::median(x);
  CHECK(std::abs(med - scale * std::log(2.0)) < 0.02 * scale * std::log(2.0));
}

TEST_CASE("gamma handles sub-unit and very large shapes") {
  RandomStream rng(82);
  std::vector<double> small(200000);
  for (auto& v : small) v = rng.gamma(0.5, 2.0);
  CHECK(std::abs(stats::mean(small) - 1.0) < 0.02);  // mean = shape * scale

  // shape = 1e6 is the d = 1000 radial case; relative std is 1e-3.
  std::vector<double> big(2000);
  for (auto& v : big) v = rng.gamma(1e6, 1.0);
  CHECK(std::abs(stats::mean(big) / 1e6 - 1.0) < 1e-3);
  CHECK_THROWS_AS(rng.gamma(0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(rng.gamma(2.0, 0.0), ParameterError);
}

TEST_CASE("gamma additivity: sum of unit shapes matches a single draw") {
  const int n = 10000;
  const double scale = 0.9;
  RandomStream rng(83);
  std::vector<double> sums(n), direct(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = 0; k < 100; ++k) acc += rng.gamma(1.0, scale);
    sums[i] = acc;
    direct[i] = rng.gamma(100.0, scale);
  }
  const double ks = stats::ks_statistic(sums, direct);
  CHECK(ks < stats::ks_critical(n, n, 0.01));
}

TEST_CASE("entropy streams differ run to run") {
  RandomStream a = RandomStream::from_entropy();
  RandomStream b = RandomStream::from_entropy();
  CHECK(a.next_u64() != b.next_u64());
}
