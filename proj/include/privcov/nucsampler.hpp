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

#ifndef PRIVCOV_NUCSAMPLER_HPP_
#define PRIVCOV_NUCSAMPLER_HPP_

#include <string>

#include "privcov/random.hpp"
#include "privcov/spectra.hpp"

namespace privcov {

// Scale of the matrix noise law density(Z) proportional to exp(-||Z||_* / rho).
struct NoiseScale {
  double rho;

  static NoiseScale checked(double rho);
};

// Point strictly inside the probability simplex: w_i > 0, sum w_i = 1.
struct SimplexWeights {
  Vector w;

  static SimplexWeights checked(Vector w);
  int dim() const { return static_cast<int>(w.size()); }
};

// One draw of the matrix noise law together with its generating factors.
// matrix = radius * left * diag(weights) * right^T, so the nuclear norm of
// matrix equals radius and its singular values equal radius * weights by
// construction.
struct SpectralNoise {
  double radius;
  Matrix left;
  SimplexWeights weights;
  Matrix right;
  Matrix matrix;
};

enum class ChainMethod { kHitAndRun, kPreconditionedLangevin };

std::string to_string(ChainMethod m);
ChainMethod chain_method_from_string(const std::string& s);

// Markov chain settings for the simplex weight sampler. One draw runs a
// fresh chain for n_steps updates from a perturbed-barycenter start;
// burn_in is the prefix regarded as equilibration (burn_in < n_steps).
// step_size is used by the Langevin proposal only; hit-and-run proposes
// uniformly along full random chords and needs no scale.
struct ChainConfig {
  int n_steps = 0;
  int burn_in = 0;
  double step_size = 0.0;
  ChainMethod method = ChainMethod::kHitAndRun;

  static ChainConfig defaults(int d);
  void validate() const;
};

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
// diagonal of R forced positive.
Matrix sample_haar_orthogonal(int d, RandomStream& rng);

// Unnormalized log density of the simplex weight law,
//   sum_{i<j} log|w_i - w_j| + sum_{i<j} log(w_i + w_j),
// i.e. log prod_{i<j} |w_i^2 - w_j^2|. Returns -infinity at coincidences.
// The Vector overload checks the point lies in the open simplex and
// throws DomainError otherwise.
double weight_log_density(const SimplexWeights& w);
double weight_log_density(const Vector& w);

// One draw of the simplex weight law. d = 1 and d = 2 use exact samplers;
// d >= 3 runs the configured Markov chain. Chain draws follow the target
// up to the chain's total-variation error, which is the sole approximation
// in the whole noise sampler; raise n_steps to tighten it.
SimplexWeights sample_weights(int d, const ChainConfig& cfg, RandomStream& rng);

// The Markov chain sampler regardless of d (d >= 2). Exposed so the chain
// can be validated against the exact d = 2 and rejection d <= 4 samplers.
SimplexWeights sample_weights_mcmc(int d, const ChainConfig& cfg,
                                   RandomStream& rng);

// Exact d = 2 sampler by CDF inversion of the marginal density 2|2t - 1|.
SimplexWeights sample_weights_exact_d2(RandomStream& rng);

// Exact rejection sampler for d in {2, 3, 4}: uniform simplex proposals
// accepted with probability prod_{i<j} |w_i^2 - w_j^2| (each factor <= 1).
// Throws SamplerError after 1e7 consecutive rejections. When given,
// proposal_count accumulates the number of proposals consumed.
SimplexWeights sample_weights_rejection(int d, RandomStream& rng,
                                        long* proposal_count = nullptr);

// Nuclear radius ||Z||_*: Gamma(shape = d^2, scale = rho).
double sample_radius(int d, NoiseScale scale, RandomStream& rng);

// Full noise draw: independent radius, Haar factors and simplex weights.
SpectralNoise sample_noise(int d, NoiseScale scale, const ChainConfig& cfg,
                           RandomStream& rng);

// log density(Z) up to the normalizing constant: -||Z||_* / rho.
double noise_log_density_unnormalized(const Matrix& z, NoiseScale scale);

}  // namespace privcov

#endif  // PRIVCOV_NUCSAMPLER_HPP_
