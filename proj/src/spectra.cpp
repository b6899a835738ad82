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

#include "privcov/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "privcov/errors.hpp"

namespace privcov {

void require_square_finite(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InputError(std::string(who) + ": matrix must be square and nonempty");
  }
  if (!m.allFinite()) {
    throw InputError(std::string(who) + ": matrix has non-finite entries");
  }
}

SvdTriple svd(const Matrix& m) {
  require_square_finite(m, "svd");
  Eigen::BDCSVD<Matrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SvdTriple{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double schatten_norm_from_singular_values(const Vector& sigma, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw ParameterError("schatten_norm: p must be >= 1 (or infinity)");
  }
  const double top = sigma.size() > 0 ? sigma.maxCoeff() : 0.0;
  if (std::isinf(p) || top == 0.0) return top;
  // Factor out the largest value so sigma_i^p cannot overflow for large p.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    acc += std::pow(sigma[i] / top, p);
  }
  return top * std::pow(acc, 1.0 / p);
}

double schatten_norm(const Matrix& m, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw ParameterError("schatten_norm: p must be >= 1 (or infinity)");
  }
  require_square_finite(m, "schatten_norm");
  if (p == 2.0) return m.norm();  // Frobenius, no SVD needed
  Eigen::BDCSVD<Matrix> dec(m);
  return schatten_norm_from_singular_values(dec.singularValues(), p);
}

double nuclear_norm(const Matrix& m) { return schatten_norm(m, 1.0); }

double spectral_norm(const Matrix& m) {
  return schatten_norm(m, std::numeric_limits<double>::infinity());
}

Vector project_l1_ball(const Vector& s, double r) {
  if (!(r >= 0.0)) throw InputError("project_l1_ball: radius must be >= 0");
  if (!s.allFinite() || (s.array() < 0.0).any()) {
    throw InputError("project_l1_ball: entries must be finite and >= 0");
  }
  if (s.sum() <= r) return s;
  // Threshold theta solves sum_i max(s_i - theta, 0) = r over the active
  // prefix of the sorted spectrum.
  std::vector<double> sorted(s.data(), s.data() + s.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumsum += sorted[k];
    double candidate = (cumsum - r) / static_cast<double>(k + 1);
    if (k + 1 == sorted.size() || sorted[k + 1] <= candidate) {
      theta = candidate;
      break;
    }
  }
  return (s.array() - theta).max(0.0).matrix();
}

Matrix project_nuclear_ball(const Matrix& m, double r) {
  if (!(r >= 0.0)) throw InputError("project_nuclear_ball: radius must be >= 0");
  SvdTriple t = svd(m);
  if (t.singular_values.sum() <= r) return m;
  Vector clipped = project_l1_ball(t.singular_values, r);
  return t.left * clipped.asDiagonal() * t.right.transpose();
}

}  // namespace privcov
