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

#ifndef PRIVCOV_MECHANISMS_HPP_
#define PRIVCOV_MECHANISMS_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "privcov/nucsampler.hpp"
#include "privcov/random.hpp"
#include "privcov/spectra.hpp"

namespace privcov {

// n rows of d-dimensional vectors, each inside the Euclidean unit ball.
// This is the private input; everything downstream sees only its
// covariance.
class Dataset {
 public:
  // Validates every row norm <= 1 (+ tiny slack); throws InputError.
  static Dataset checked(Matrix rows);

  // Rescales rows with norm > 1 back onto the unit sphere. Clipping is
  // part of the private computation, so the 2/n sensitivity model is
  // preserved.
  static Dataset clipped(Matrix rows);

  std::int64_t n() const { return rows_.rows(); }
  int dim() const { return static_cast<int>(rows_.cols()); }
  const Matrix& rows() const { return rows_; }

  // Copy with row i replaced; the adjacency move used by the DP audit.
  Dataset with_row(std::int64_t i, const Vector& row) const;

 private:
  explicit Dataset(Matrix rows) : rows_(std::move(rows)) {}
  Matrix rows_;
};

// Sample second-moment matrix (1/n) sum_i x_i x_i^T with the count it was
// computed from. Symmetric PSD, trace <= 1, nuclear norm = trace.
struct CovarianceMatrix {
  Matrix mat;
  std::int64_t n;

  int dim() const { return static_cast<int>(mat.rows()); }
  double trace() const { return mat.trace(); }
};

// Privacy accounting for one release. Replacing one dataset row moves the
// covariance by at most 2/n in nuclear norm; that bound drives every scale
// below.
struct PrivacyParams {
  double epsilon;
  std::int64_t n;

  static PrivacyParams checked(double epsilon, std::int64_t n);

  double sensitivity() const { return 2.0 / static_cast<double>(n); }
  // Full-budget perturbation scale.
  double rho_perturb() const {
    return 2.0 / (epsilon * static_cast<double>(n));
  }
  // Perturbation scale when only epsilon/2 goes to the additive step.
  double rho_perturb_half() const {
    return 4.0 / (epsilon * static_cast<double>(n));
  }
  // Laplace scale of the private radius estimate; its 4/n sensitivity
  // makes this cost 0.4 * epsilon.
  double radius_laplace_scale() const {
    return 10.0 / (epsilon * static_cast<double>(n));
  }
};

enum class MechanismKind { kPerturb, kProject };

std::string to_string(MechanismKind m);
MechanismKind mechanism_from_string(const std::string& s);

struct MechanismOutput {
  Matrix estimate;
  MechanismKind mechanism;
  std::optional<double> realized_radius;  // project only
  double budget_spent = 0.0;
};

CovarianceMatrix compute_covariance(const Dataset& x);

// Deterministic cores. The random mechanisms below are thin shells over
// these; tests drive the cores directly with pinned noise instead of
// patching the samplers.
Matrix apply_noise(const CovarianceMatrix& sigma, const Matrix& noise);
double radius_from_draw(const CovarianceMatrix& sigma, double laplace_draw);

// Additive release: Sigma + Z, Z from the nuclear-Laplace law at
// rho = 2/(epsilon n). Spends the full budget.
MechanismOutput perturb_mechanism(const CovarianceMatrix& sigma,
                                  const PrivacyParams& params,
                                  const ChainConfig& cfg, RandomStream& rng);

// Private nuclear-ball radius max(0, 2 tr Sigma + Lap(10/(epsilon n))).
double private_radius(const CovarianceMatrix& sigma,
                      const PrivacyParams& params, RandomStream& rng);

// Projection release: perturb at half budget, then project onto the
// nuclear ball of privately estimated radius. Spends 0.9 * epsilon
// (0.5 additive + 0.4 radius); the leftover slack is not reallocated.
MechanismOutput project_mechanism(const CovarianceMatrix& sigma,
                                  const PrivacyParams& params,
                                  const ChainConfig& cfg, RandomStream& rng);

// Trace-carrying variants so experiments can correlate the output with
// the very noise draw that produced it.
struct PerturbTrace {
  MechanismOutput output;
  SpectralNoise noise;
};
PerturbTrace perturb_mechanism_traced(const CovarianceMatrix& sigma,
                                      const PrivacyParams& params,
                                      const ChainConfig& cfg,
                                      RandomStream& rng);

struct ProjectTrace {
  MechanismOutput output;
  Matrix perturbed;  // the internal half-budget perturbation
  SpectralNoise noise;
  double radius;
};
ProjectTrace project_mechanism_traced(const CovarianceMatrix& sigma,
                                      const PrivacyParams& params,
                                      const ChainConfig& cfg,
                                      RandomStream& rng);

// Optional post-processing: PSD projection of the symmetrized matrix.
// Never applied unless explicitly requested; the release mechanisms
// return the raw (generally non-symmetric) estimate.
Matrix symmetrize_psd(const Matrix& m);

struct LogRatioBound {
  double observed;
  double bound;
};

// Unnormalized log-density ratio of the additive mechanism between two
// inputs at output y, and the nuclear-sensitivity bound it can never
// exceed. observed <= bound is an exact triangle-inequality identity.
LogRatioBound dp_log_ratio_bound(const CovarianceMatrix& sigma,
                                 const CovarianceMatrix& sigma_prime,
                                 const Matrix& y, NoiseScale rho);

}  // namespace privcov

#endif  // PRIVCOV_MECHANISMS_HPP_
