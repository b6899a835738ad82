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

#include "privcov/nucsampler.hpp"

#include <cmath>
#include <limits>

#include "privcov/errors.hpp"

namespace privcov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

// log prod_{i<j} |w_i^2 - w_j^2| via a running product with manual exponent
// extraction; one log total instead of d(d-1)/2 of them.
double log_vandermonde_sq(const Vector& w) {
  const Eigen::Index d = w.size();
  double mant = 1.0;
  long exp2 = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double wi = w[i];
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double f = (wi - w[j]) * (wi + w[j]);
      if (f == 0.0) return -kInf;
      mant *= f;
      const double a = std::abs(mant);
      if (a < 0x1.0p-512 || a > 0x1.0p512) {
        int e;
        mant = std::frexp(mant, &e);
        exp2 += e;
      }
    }
  }
  return std::log(std::abs(mant)) + static_cast<double>(exp2) * kLn2;
}

// Start state: barycenter blended with a small Dirichlet(1) draw, which is
// strictly inside the simplex and off the coincidence set almost surely.
Vector chain_start(int d, RandomStream& rng) {
  Vector w(d);
  for (int attempt = 0; attempt < 100; ++attempt) {
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
      w[i] = rng.exponential();
      total += w[i];
    }
    for (int i = 0; i < d; ++i) {
      w[i] = 0.9 / d + 0.1 * (w[i] / total);
    }
    if (std::isfinite(log_vandermonde_sq(w))) return w;
  }
  throw SamplerError("sample_weights: could not find a valid start state");
}

// Tangent-space gradient of the log density at a coincidence-free point.
Vector tangent_gradient(const Vector& w) {
  const Eigen::Index d = w.size();
  Vector g = Vector::Zero(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double diff = w[i] - w[j];
      const double sum = w[i] + w[j];
      const double a = 1.0 / diff + 1.0 / sum;
      const double b = -1.0 / diff + 1.0 / sum;
      g[i] += a;
      g[j] += b;
    }
  }
  g.array() -= g.mean();
  return g;
}

// Gaussian direction in the tangent hyperplane {u : sum u_i = 0}.
Vector tangent_gaussian(int d, RandomStream& rng) {
  Vector u(d);
  for (int i = 0; i < d; ++i) u[i] = rng.gaussian();
  u.array() -= u.mean();
  return u;
}

struct HitAndRunKernel {
  double log_f;

  void init(const Vector& w) { log_f = log_vandermonde_sq(w); }

  bool step(Vector& w, RandomStream& rng) {
    const int d = static_cast<int>(w.size());
    Vector u = tangent_gaussian(d, rng);
    const double norm = u.norm();
    if (norm < 1e-12) return false;
    u /= norm;
    // Chord of the simplex through w in direction u.
    double t_lo = -kInf, t_hi = kInf;
    for (int i = 0; i < d; ++i) {
      if (u[i] > 0.0) {
        t_lo = std::max(t_lo, -w[i] / u[i]);
      } else if (u[i] < 0.0) {
        t_hi = std::min(t_hi, -w[i] / u[i]);
      }
    }
    if (!(t_lo < t_hi)) return false;
    const double t = t_lo + (t_hi - t_lo) * rng.uniform();
    Vector prop = w + t * u;
    if ((prop.array() <= 0.0).any()) return false;
    const double log_fp = log_vandermonde_sq(prop);
    if (std::log(rng.uniform()) < log_fp - log_f) {
      w = std::move(prop);
      log_f = log_fp;
      return true;
    }
    return false;
  }
};

struct LangevinKernel {
  double log_f;
  Vector drift;
  double h;

  // Drift capped at one step scale. The log gradient blows up near the
  // coincidence set, and an uncapped drift throws every proposal out of
  // the simplex, freezing the chain; the cap keeps proposals local while
  // the Hastings ratio (which uses the same capped drift both ways) keeps
  // the stationary law exact.
  Vector tamed_drift(const Vector& w) const {
    Vector g = tangent_gradient(w);
    Vector d = 0.5 * h * h * g;
    const double norm = d.norm();
    if (norm > h) d *= h / norm;
    return d;
  }

  void init(const Vector& w) {
    log_f = log_vandermonde_sq(w);
    drift = tamed_drift(w);
  }

  bool step(Vector& w, RandomStream& rng) {
    const int d = static_cast<int>(w.size());
    const Vector noise = tangent_gaussian(d, rng);
    Vector prop = w + drift + h * noise;
    if ((prop.array() <= 0.0).any()) return false;
    const double log_fp = log_vandermonde_sq(prop);
    if (!std::isfinite(log_fp)) return false;
    const Vector drift_p = tamed_drift(prop);
    const Vector fwd = prop - w - drift;
    const Vector bwd = w - prop - drift_p;
    const double log_q_fwd = -fwd.squaredNorm() / (2.0 * h * h);
    const double log_q_bwd = -bwd.squaredNorm() / (2.0 * h * h);
    if (std::log(rng.uniform()) < (log_fp - log_f) + (log_q_bwd - log_q_fwd)) {
      w = std::move(prop);
      log_f = log_fp;
      drift = drift_p;
      return true;
    }
    return false;
  }
};

template <typename Kernel>
Vector run_chain(Kernel kernel, int d, const ChainConfig& cfg,
                 RandomStream& rng) {
  Vector w = chain_start(d, rng);
  kernel.init(w);
  for (int step = 0; step < cfg.n_steps; ++step) {
    kernel.step(w, rng);
    if ((step & 127) == 127) {
      w /= w.sum();  // shed accumulated rounding drift
      kernel.init(w);
    }
  }
  w /= w.sum();
  if (!std::isfinite(log_vandermonde_sq(w))) {
    throw SamplerError("sample_weights: chain ended in a non-finite state");
  }
  return w;
}

}  // namespace

NoiseScale NoiseScale::checked(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw ParameterError("NoiseScale: rho must be finite and > 0");
  }
  return NoiseScale{rho};
}

SimplexWeights SimplexWeights::checked(Vector w) {
  if (w.size() < 1 || !w.allFinite() || (w.array() <= 0.0).any()) {
    throw DomainError("SimplexWeights: entries must be finite and > 0");
  }
  if (std::abs(w.sum() - 1.0) > 1e-12 * static_cast<double>(w.size())) {
    throw DomainError("SimplexWeights: entries must sum to 1");
  }
  return SimplexWeights{std::move(w)};
}

std::string to_string(ChainMethod m) {
  return m == ChainMethod::kHitAndRun ? "hit-and-run" : "preconditioned-langevin";
}

ChainMethod chain_method_from_string(const std::string& s) {
  if (s == "hit-and-run") return ChainMethod::kHitAndRun;
  if (s == "preconditioned-langevin") return ChainMethod::kPreconditionedLangevin;
  throw ParameterError("unknown chain method: " + s);
}

ChainConfig ChainConfig::defaults(int d) {
  if (d < 1) throw ParameterError("ChainConfig::defaults: d must be >= 1");
  ChainConfig cfg;
  cfg.burn_in = 50 * d;
  cfg.n_steps = 60 * d;
  cfg.step_size = 0.5 / d;
  cfg.method = ChainMethod::kHitAndRun;
  return cfg;
}

void ChainConfig::validate() const {
  if (n_steps < 1) throw ParameterError("ChainConfig: n_steps must be >= 1");
  if (burn_in < 1 || burn_in >= n_steps) {
    throw ParameterError("ChainConfig: need 1 <= burn_in < n_steps");
  }
  if (!(step_size > 0.0)) {
    throw ParameterError("ChainConfig: step_size must be > 0");
  }
}

Matrix sample_haar_orthogonal(int d, RandomStream& rng) {
  if (d < 1) throw ParameterError("sample_haar_orthogonal: d must be >= 1");
  Matrix g(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      g(i, j) = rng.gaussian();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  // Fix the gauge: make diag(R) positive so Q follows the Haar measure
  // rather than the QR routine's sign convention.
  const Matrix& packed = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

double weight_log_density(const Vector& w) {
  if (w.size() < 1 || !w.allFinite() || (w.array() <= 0.0).any() ||
      std::abs(w.sum() - 1.0) > 1e-9) {
    throw DomainError("weight_log_density: point is outside the open simplex");
  }
  return log_vandermonde_sq(w);
}

double weight_log_density(const SimplexWeights& w) {
  return log_vandermonde_sq(w.w);
}

SimplexWeights sample_weights_exact_d2(RandomStream& rng) {
  const double p = rng.uniform();
  const double t = p <= 0.5 ? 0.5 * (1.0 - std::sqrt(1.0 - 2.0 * p))
                            : 0.5 * (1.0 + std::sqrt(2.0 * p - 1.0));
  Vector w(2);
  w << t, 1.0 - t;
  return SimplexWeights{std::move(w)};
}

SimplexWeights sample_weights_rejection(int d, RandomStream& rng,
                                        long* proposal_count) {
  if (d < 2 || d > 4) {
    throw ParameterError("sample_weights_rejection: d must be in {2,3,4}");
  }
  constexpr long kMaxProposals = 10'000'000;
  Vector w(d);
  for (long attempt = 0; attempt < kMaxProposals; ++attempt) {
    if (proposal_count) ++*proposal_count;
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
      w[i] = rng.exponential();
      total += w[i];
    }
    w /= total;
    double accept = 1.0;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        accept *= std::abs(w[i] * w[i] - w[j] * w[j]);
      }
    }
    if (rng.uniform() < accept) return SimplexWeights{std::move(w)};
  }
  throw SamplerError("sample_weights_rejection: acceptance stall");
}

SimplexWeights sample_weights_mcmc(int d, const ChainConfig& cfg,
                                   RandomStream& rng) {
  if (d < 2) throw ParameterError("sample_weights_mcmc: d must be >= 2");
  cfg.validate();
  Vector w;
  if (cfg.method == ChainMethod::kHitAndRun) {
    w = run_chain(HitAndRunKernel{}, d, cfg, rng);
  } else {
    LangevinKernel kernel;
    kernel.h = cfg.step_size;
    w = run_chain(kernel, d, cfg, rng);
  }
  return SimplexWeights{std::move(w)};
}

SimplexWeights sample_weights(int d, const ChainConfig& cfg,
                              RandomStream& rng) {
  if (d < 1) throw ParameterError("sample_weights: d must be >= 1");
  if (d == 1) return SimplexWeights{Vector::Ones(1)};
  if (d == 2) return sample_weights_exact_d2(rng);
  return sample_weights_mcmc(d, cfg, rng);
}

double sample_radius(int d, NoiseScale scale, RandomStream& rng) {
  if (d < 1) throw ParameterError("sample_radius: d must be >= 1");
  NoiseScale::checked(scale.rho);
  return rng.gamma(static_cast<double>(d) * static_cast<double>(d), scale.rho);
}

SpectralNoise sample_noise(int d, NoiseScale scale, const ChainConfig& cfg,
                           RandomStream& rng) {
  if (d < 1) throw ParameterError("sample_noise: d must be >= 1");
  NoiseScale::checked(scale.rho);
  const double radius = sample_radius(d, scale, rng);
  Matrix left = sample_haar_orthogonal(d, rng);
  Matrix right = sample_haar_orthogonal(d, rng);
  SimplexWeights weights = sample_weights(d, cfg, rng);
  Matrix z = radius * left * weights.w.asDiagonal() * right.transpose();
  return SpectralNoise{radius, std::move(left), std::move(weights),
                       std::move(right), std::move(z)};
}

double noise_log_density_unnormalized(const Matrix& z, NoiseScale scale) {
  NoiseScale::checked(scale.rho);
  return -nuclear_norm(z) / scale.rho;
}

}  // namespace privcov
