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
#include "privcov/mechanisms.hpp"
#include "privcov/stats.hpp"

using namespace privcov;

namespace {

Matrix unit_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  const int d = static_cast<int>(rows.begin()->size());
  Matrix m(n, d);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Vector ball_vector(int d, RandomStream& rng) {
  Vector g(d);
  for (int i = 0; i < d; ++i) g[i] = rng.gaussian();
  g /= g.norm();
  return g * std::pow(rng.uniform(), 1.0 / d);
}

Dataset random_dataset(int n, int d, RandomStream& rng) {
  Matrix rows(n, d);
  for (int i = 0; i < n; ++i) rows.row(i) = ball_vector(d, rng).transpose();
  return Dataset::checked(std::move(rows));
}

}  // namespace

TEST_CASE("dataset validation") {
  CHECK_THROWS_AS(Dataset::checked(unit_rows({{1.2, 0.0}, {0.0, 0.5}})),
                  InputError);
  Dataset clipped = Dataset::clipped(unit_rows({{1.5, 0.0}, {0.0, 0.5}}));
  CHECK(clipped.rows().row(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(clipped.rows()(1, 1) == 0.5);  // inside rows untouched

  Matrix nan_rows = unit_rows({{0.1, 0.2}});
  nan_rows(0, 0) = std::nan("");
  CHECK_THROWS_AS(Dataset::checked(std::move(nan_rows)), InputError);
}

TEST_CASE("covariance of pinned datasets") {
  Dataset e1 = Dataset::checked(unit_rows({{1.0, 0.0}}));
  CovarianceMatrix s1 = compute_covariance(e1);
  CHECK(s1.mat(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(s1.mat(0, 1)) + std::abs(s1.mat(1, 0)) +
            std::abs(s1.mat(1, 1)) ==
        0.0);

  Dataset two = Dataset::checked(unit_rows({{1.0, 0.0}, {0.0, 1.0}}));
  CovarianceMatrix s2 = compute_covariance(two);
  CHECK(s2.mat(0, 0) == doctest::Approx(0.5));
  CHECK(s2.mat(1, 1) == doctest::Approx(0.5));
  CHECK(s2.n == 2);
}

TEST_CASE("covariance of random unit-ball data is PSD with trace <= 1") {
  RandomStream rng(101);
  Dataset data = random_dataset(200, 7, rng);
  CovarianceMatrix sigma = compute_covariance(data);
  CHECK(sigma.trace() <= 1.0 + 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma.mat);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-12);
  // PSD: nuclear norm equals trace.
  CHECK(nuclear_norm(sigma.mat) == doctest::Approx(sigma.trace()).epsilon(1e-9));
}

TEST_CASE("privacy parameter arithmetic") {
  PrivacyParams p = PrivacyParams::checked(2.0, 1000);
  CHECK(p.sensitivity() == doctest::Approx(0.002));
  CHECK(p.rho_perturb() == doctest::Approx(2.0 / 2000.0));
  CHECK(p.rho_perturb_half() == doctest::Approx(4.0 / 2000.0));
  CHECK(p.radius_laplace_scale() == doctest::Approx(10.0 / 2000.0));
  CHECK_THROWS_AS(PrivacyParams::checked(0.0, 10), ParameterError);
  CHECK_THROWS_AS(PrivacyParams::checked(1.0, 0), ParameterError);
}

TEST_CASE("perturbation with a huge budget returns nearly Sigma") {
  RandomStream rng(102);
  Dataset data = random_dataset(40, 4, rng);
  CovarianceMatrix sigma = compute_covariance(data);
  // rho = 2/(eps n) = 1e-12 at eps = 2e12 / n.
  const double eps = 2e12 / static_cast<double>(data.n());
  PrivacyParams params = PrivacyParams::checked(eps, data.n());
  CHECK(params.rho_perturb() == doctest::Approx(1e-12).epsilon(1e-10));
  MechanismOutput out =
      perturb_mechanism(sigma, params, ChainConfig::defaults(4), rng);
  CHECK((out.estimate - sigma.mat).norm() <= 1e-6);
  CHECK(out.budget_spent == eps);
  CHECK(out.mechanism == MechanismKind::kPerturb);
  CHECK(!out.realized_radius.has_value());
}

TEST_CASE("d=1 perturbation output is scalar Laplace around Sigma") {
  Matrix m(1, 1);
  m(0, 0) = 0.5;
  CovarianceMatrix sigma{m, 100};
  PrivacyParams params = PrivacyParams::checked(1.0, 100);
  const double rho = params.rho_perturb();  // 0.02
  const int n = 10000;
  std::vector<double> noise(n);
  for (int i = 0; i < n; ++i) {
    RandomStream rng(103, i);
    noise[i] =
        perturb_mechanism(sigma, params, ChainConfig::defaults(1), rng)
            .estimate(0, 0) -
        0.5;
  }
  CHECK(stats::ks_statistic(
            noise, [&](double x) { return stats::laplace_cdf(x, rho); }) <
        stats::ks_critical(n, 0.01));
}

TEST_CASE("private radius deterministic core and distribution") {
  Matrix m = 0.15 * Matrix::Identity(2, 2);  // trace 0.3
  CovarianceMatrix sigma{m, 50};
  CHECK(radius_from_draw(sigma, 0.0) == doctest::Approx(0.6));
  CHECK(radius_from_draw(sigma, -5.0) == 0.0);

  PrivacyParams params = PrivacyParams::checked(1.0, 50);
  const double scale = params.radius_laplace_scale();
  const int n = 20000;
  std::vector<double> shifted(n);
  for (int i = 0; i < n; ++i) {
    RandomStream rng(104, i);
    shifted[i] = private_radius(sigma, params, rng) - 2.0 * sigma.trace();
  }
  CHECK(std::abs(stats::median(shifted)) <= 3.0 * scale / std::sqrt(n));
}

TEST_CASE("projection mechanism with pinned draws is the identity") {
  Matrix m = 0.2 * Matrix::Identity(3, 3);
  CovarianceMatrix sigma{m, 100};
  // Zero noise and zero Laplace: radius = 2 tr Sigma >= ||Sigma||_*, so the
  // projection returns Sigma + 0 unchanged.
  const double radius = radius_from_draw(sigma, 0.0);
  Matrix projected = project_nuclear_ball(
      apply_noise(sigma, Matrix::Zero(3, 3)), radius);
  CHECK((projected - sigma.mat).norm() == 0.0);
}

TEST_CASE("projection mechanism budget, radius record and error contracts") {
  RandomStream rng(105);
  Dataset data = random_dataset(300, 8, rng);
  CovarianceMatrix sigma = compute_covariance(data);
  PrivacyParams params = PrivacyParams::checked(1.5, data.n());
  const double trace = sigma.trace();
  for (int rep = 0; rep < 40; ++rep) {
    RandomStream trial(106, rep);
    ProjectTrace t =
        project_mechanism_traced(sigma, params, ChainConfig::defaults(8), trial);
    CHECK(t.output.budget_spent == doctest::Approx(0.9 * params.epsilon));
    CHECK(t.output.mechanism == MechanismKind::kProject);
    REQUIRE(t.output.realized_radius.has_value());
    CHECK(*t.output.realized_radius == t.radius);
    CHECK(nuclear_norm(t.output.estimate) <= t.radius + 1e-8);
    const double err_proj = (t.output.estimate - sigma.mat).norm();
    const double err_hat = (t.perturbed - sigma.mat).norm();
    if (t.radius >= trace) {
      CHECK(err_proj <= err_hat + 1e-12);
    } else {
      const double err_nuc = nuclear_norm(t.output.estimate - sigma.mat);
      CHECK(err_proj <= err_nuc + 1e-12);
      CHECK(err_nuc <= t.radius + trace + 1e-9);
    }
  }
}

TEST_CASE("symmetrize_psd") {
  Matrix psd(2, 2);
  psd << 2.0, 0.3, 0.3, 1.0;
  CHECK((symmetrize_psd(psd) - psd).norm() < 1e-12);

  Matrix indef = Matrix::Zero(2, 2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -1.0;
  Matrix fixed = symmetrize_psd(indef);
  CHECK(fixed(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(fixed(1, 1)) < 1e-12);

  Matrix anti(2, 2);
  anti << 0.0, 0.7, -0.7, 0.0;
  CHECK(symmetrize_psd(anti).norm() < 1e-12);
}

TEST_CASE("log-ratio bound: identities and the audit inequality") {
  RandomStream rng(107);
  Dataset data = random_dataset(60, 5, rng);
  CovarianceMatrix sigma = compute_covariance(data);
  const NoiseScale rho{PrivacyParams::checked(1.0, data.n()).rho_perturb()};

  LogRatioBound same = dp_log_ratio_bound(sigma, sigma, sigma.mat, rho);
  CHECK(same.observed == 0.0);
  CHECK(same.bound == 0.0);

  for (int rep = 0; rep < 100; ++rep) {
    RandomStream pair_rng(108, rep);
    Dataset swapped = data.with_row(
        static_cast<std::int64_t>(pair_rng.uniform() * data.n()),
        ball_vector(5, pair_rng));
    CovarianceMatrix sigma_prime = compute_covariance(swapped);

    // Row swap moves the covariance by at most 2/n in nuclear norm.
    const double sens = nuclear_norm(sigma.mat - sigma_prime.mat);
    CHECK(sens <= 2.0 / data.n() + 1e-12);

    // Tight case y = Sigma.
    LogRatioBound tight = dp_log_ratio_bound(sigma, sigma_prime, sigma.mat, rho);
    CHECK(tight.observed == doctest::Approx(tight.bound).epsilon(1e-12));

    Matrix y(5, 5);
    for (int j = 0; j < 5; ++j) {
      for (int i = 0; i < 5; ++i) {
        y(i, j) = sigma.mat(i, j) + 0.01 * pair_rng.gaussian();
      }
    }
    LogRatioBound lrb = dp_log_ratio_bound(sigma, sigma_prime, y, rho);
    CHECK(lrb.observed <= lrb.bound + 1e-9);
    CHECK(-lrb.observed <= lrb.bound + 1e-9);
    CHECK(lrb.bound <= 1.0 + 1e-9);  // = epsilon
  }
}
