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

// Brute-force and quadrature oracles for the test suites. Everything in
// here deliberately avoids the code paths it is used to check: the l1
// projection enumerates KKT candidates instead of sorting, the projection
// certificate tests the variational inequality directly, and expectations
// come from low-tech quadrature.

#ifndef PRIVCOV_TESTS_TEST_ORACLES_HPP_
#define PRIVCOV_TESTS_TEST_ORACLES_HPP_

#include <cmath>
#include <functional>
#include <limits>

#include "privcov/random.hpp"
#include "privcov/spectra.hpp"

namespace test_oracles {

// Exact minimizer of ||w - s||_2 over {w >= 0, sum w <= r} by enumerating
// all 2^d support sets and checking the KKT conditions of each candidate.
inline privcov::Vector l1_projection_bruteforce(const privcov::Vector& s,
                                                double r) {
  const int d = static_cast<int>(s.size());
  if (s.sum() <= r) return s;
  privcov::Vector best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < d; ++i) {
      if (mask & (1u << i)) {
        sum += s[i];
        ++count;
      }
    }
    const double theta = (sum - r) / count;
    if (theta < -1e-12) continue;  // multiplier must be nonnegative
    privcov::Vector w = privcov::Vector::Zero(d);
    bool feasible = true;
    for (int i = 0; i < d; ++i) {
      if (mask & (1u << i)) {
        w[i] = s[i] - theta;
        if (w[i] < -1e-12) feasible = false;
      } else if (s[i] > theta + 1e-12) {
        feasible = false;  // dropped coordinate must satisfy s_i <= theta
      }
    }
    if (!feasible) continue;
    w = w.cwiseMax(0.0);
    const double dist = (w - s).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = w;
    }
  }
  return best;
}

// Certifies that y is the Frobenius projection of m onto the nuclear ball
// of radius r through the variational inequality
//   <m - y, c - y> <= 0  for all feasible c,
// probed at random ball points and corners, plus direct distance
// domination. Independent of how y was computed.
inline bool verify_nuclear_projection(const privcov::Matrix& m,
                                      const privcov::Matrix& y, double r,
                                      privcov::RandomStream& rng) {
  namespace pc = privcov;
  const int d = static_cast<int>(m.rows());
  if (pc::nuclear_norm(y) > r + 1e-8) return false;
  const double dist = (m - y).norm();
  for (int probe = 0; probe < 200; ++probe) {
    pc::Matrix c(d, d);
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) c(i, j) = rng.gaussian();
    }
    const double nuc = pc::nuclear_norm(c);
    if (nuc > 0.0) c *= (r * rng.uniform()) / nuc;
    const double inner = ((m - y).array() * (c - y).array()).sum();
    if (inner > 1e-8 * std::max(1.0, dist)) return false;
    if (dist > (m - c).norm() + 1e-8) return false;
  }
  return true;
}

// Composite Simpson rule.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int intervals) {
  if (intervals % 2 == 1) ++intervals;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

// E[max(w_1, w_2)] for the d=2 weight law, by quadrature of the density
// 2|2t-1| on (0,1). Equals 5/6.
inline double d2_mean_max_quadrature() {
  auto integrand = [](double t) {
    return std::max(t, 1.0 - t) * 2.0 * std::abs(2.0 * t - 1.0);
  };
  return simpson(integrand, 0.0, 1.0, 200000);
}

// E[max w] for the d=4 weight law by midpoint quadrature over the simplex.
inline double d4_mean_max_quadrature(int grid = 220) {
  double norm = 0.0, acc = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double w1 = (i + 0.5) / grid;
    for (int j = 0; j < grid; ++j) {
      const double w2 = (j + 0.5) / grid;
      if (w1 + w2 >= 1.0) break;
      for (int k = 0; k < grid; ++k) {
        const double w3 = (k + 0.5) / grid;
        const double w4 = 1.0 - w1 - w2 - w3;
        if (w4 <= 0.0) break;
        const double x1 = w1 * w1, x2 = w2 * w2, x3 = w3 * w3, x4 = w4 * w4;
        const double f = std::abs(x1 - x2) * std::abs(x1 - x3) *
                         std::abs(x1 - x4) * std::abs(x2 - x3) *
                         std::abs(x2 - x4) * std::abs(x3 - x4);
        norm += f;
        acc += f * std::max(std::max(w1, w2), std::max(w3, w4));
      }
    }
  }
  return acc / norm;
}

// E[max w] for the d=3 weight law by midpoint quadrature over the simplex.
inline double d3_mean_max_quadrature(int grid = 1500) {
  double norm = 0.0, acc = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double w1 = (i + 0.5) / grid;
    for (int j = 0; j < grid; ++j) {
      const double w2 = (j + 0.5) / grid;
      const double w3 = 1.0 - w1 - w2;
      if (w3 <= 0.0) continue;
      const double f = std::abs(w1 * w1 - w2 * w2) *
                       std::abs(w1 * w1 - w3 * w3) *
                       std::abs(w2 * w2 - w3 * w3);
      norm += f;
      acc += f * std::max(w1, std::max(w2, w3));
    }
  }
  return acc / norm;
}

}  // namespace test_oracles

#endif  // PRIVCOV_TESTS_TEST_ORACLES_HPP_
