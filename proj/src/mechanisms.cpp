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

#include "privcov/mechanisms.hpp"

#include <cmath>

#include "privcov/errors.hpp"

namespace privcov {

namespace {
constexpr double kRowNormSlack = 1e-12;
}

Dataset Dataset::checked(Matrix rows) {
  if (rows.rows() < 1 || rows.cols() < 1) {
    throw InputError("Dataset: need at least one row and one column");
  }
  if (!rows.allFinite()) {
    throw InputError("Dataset: non-finite entries");
  }
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    if (rows.row(i).norm() > 1.0 + kRowNormSlack) {
      throw InputError("Dataset: row " + std::to_string(i) +
                       " has Euclidean norm > 1");
    }
  }
  return Dataset(std::move(rows));
}

Dataset Dataset::clipped(Matrix rows) {
  if (rows.rows() < 1 || rows.cols() < 1) {
    throw InputError("Dataset: need at least one row and one column");
  }
  if (!rows.allFinite()) {
    throw InputError("Dataset: non-finite entries");
  }
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 1.0) rows.row(i) /= norm;
  }
  return Dataset(std::move(rows));
}

Dataset Dataset::with_row(std::int64_t i, const Vector& row) const {
  if (i < 0 || i >= n()) throw InputError("Dataset::with_row: index out of range");
  if (row.size() != dim()) throw InputError("Dataset::with_row: dimension mismatch");
  if (row.norm() > 1.0 + kRowNormSlack) {
    throw InputError("Dataset::with_row: row has Euclidean norm > 1");
  }
  Matrix rows = rows_;
  rows.row(i) = row.transpose();
  return Dataset(std::move(rows));
}

PrivacyParams PrivacyParams::checked(double epsilon, std::int64_t n) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("PrivacyParams: epsilon must be finite and > 0");
  }
  if (n < 1) throw ParameterError("PrivacyParams: n must be >= 1");
  return PrivacyParams{epsilon, n};
}

std::string to_string(MechanismKind m) {
  return m == MechanismKind::kPerturb ? "perturb" : "project";
}

MechanismKind mechanism_from_string(const std::string& s) {
  if (s == "perturb") return MechanismKind::kPerturb;
  if (s == "project") return MechanismKind::kProject;
  throw ParameterError("unknown mechanism: " + s);
}

CovarianceMatrix compute_covariance(const Dataset& x) {
  const double n = static_cast<double>(x.n());
  Matrix sigma = (x.rows().transpose() * x.rows()) / n;
  // Numerical symmetrization only; the Gram sum is symmetric by
  // construction.
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  return CovarianceMatrix{std::move(sigma), x.n()};
}

Matrix apply_noise(const CovarianceMatrix& sigma, const Matrix& noise) {
  if (noise.rows() != sigma.mat.rows() || noise.cols() != sigma.mat.cols()) {
    throw InputError("apply_noise: dimension mismatch");
  }
  return sigma.mat + noise;
}

double radius_from_draw(const CovarianceMatrix& sigma, double laplace_draw) {
  return std::max(0.0, 2.0 * sigma.trace() + laplace_draw);
}

PerturbTrace perturb_mechanism_traced(const CovarianceMatrix& sigma,
                                      const PrivacyParams& params,
                                      const ChainConfig& cfg,
                                      RandomStream& rng) {
  PrivacyParams::checked(params.epsilon, params.n);
  const NoiseScale rho{params.rho_perturb()};
  SpectralNoise noise = sample_noise(sigma.dim(), rho, cfg, rng);
  MechanismOutput out{apply_noise(sigma, noise.matrix), MechanismKind::kPerturb,
                      std::nullopt, params.epsilon};
  return PerturbTrace{std::move(out), std::move(noise)};
}

MechanismOutput perturb_mechanism(const CovarianceMatrix& sigma,
                                  const PrivacyParams& params,
                                  const ChainConfig& cfg, RandomStream& rng) {
  return perturb_mechanism_traced(sigma, params, cfg, rng).output;
}

double private_radius(const CovarianceMatrix& sigma,
                      const PrivacyParams& params, RandomStream& rng) {
  PrivacyParams::checked(params.epsilon, params.n);
  return radius_from_draw(sigma, rng.laplace(params.radius_laplace_scale()));
}

ProjectTrace project_mechanism_traced(const CovarianceMatrix& sigma,
                                      const PrivacyParams& params,
                                      const ChainConfig& cfg,
                                      RandomStream& rng) {
  PrivacyParams::checked(params.epsilon, params.n);
  const PrivacyParams half{params.epsilon / 2.0, params.n};
  PerturbTrace perturbed = perturb_mechanism_traced(sigma, half, cfg, rng);
  const double radius = private_radius(sigma, params, rng);
  Matrix estimate = project_nuclear_ball(perturbed.output.estimate, radius);
  const double budget = params.epsilon / 2.0 + 0.4 * params.epsilon;
  MechanismOutput out{std::move(estimate), MechanismKind::kProject, radius,
                      budget};
  return ProjectTrace{std::move(out), std::move(perturbed.output.estimate),
                      std::move(perturbed.noise), radius};
}

MechanismOutput project_mechanism(const CovarianceMatrix& sigma,
                                  const PrivacyParams& params,
                                  const ChainConfig& cfg, RandomStream& rng) {
  return project_mechanism_traced(sigma, params, cfg, rng).output;
}

Matrix symmetrize_psd(const Matrix& m) {
  require_square_finite(m, "symmetrize_psd");
  Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  Vector clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() *
         eig.eigenvectors().transpose();
}

LogRatioBound dp_log_ratio_bound(const CovarianceMatrix& sigma,
                                 const CovarianceMatrix& sigma_prime,
                                 const Matrix& y, NoiseScale rho) {
  NoiseScale::checked(rho.rho);
  const double observed =
      noise_log_density_unnormalized(y - sigma.mat, rho) -
      noise_log_density_unnormalized(y - sigma_prime.mat, rho);
  const double bound = nuclear_norm(sigma.mat - sigma_prime.mat) / rho.rho;
  return LogRatioBound{observed, bound};
}

}  // namespace privcov
