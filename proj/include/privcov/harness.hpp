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

#ifndef PRIVCOV_HARNESS_HPP_
#define PRIVCOV_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "privcov/mechanisms.hpp"
#include "privcov/nucsampler.hpp"

namespace privcov {

enum class DataProfile { kIsotropic, kLowTrace, kRankOne };

std::string to_string(DataProfile p);
DataProfile data_profile_from_string(const std::string& s);

// One named pass/fail check inside a report.
struct Verdict {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string note;
};

// Per-trial table plus summary statistics and verdicts. Reproducible
// bit-exact from (config, seed): trials map to fixed substreams, rows are
// keyed by trial index, and summaries sort copies before reduction, so
// thread scheduling never changes the content. Wall-clock is reported on
// the side and never serialized.
struct ExperimentReport {
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> quantiles;
  std::vector<Verdict> verdicts;
  double wall_seconds = 0.0;

  bool all_pass() const;
  const Verdict* find_verdict(const std::string& name) const;
};

// Monte Carlo configuration for the mechanism error experiment.
struct ExperimentConfig {
  int d = 0;
  std::int64_t n = 0;
  double epsilon = 0.0;
  int trials = 0;
  MechanismKind mechanism = MechanismKind::kPerturb;
  DataProfile profile = DataProfile::kIsotropic;
  double tau = 1.0;  // target trace for the low-trace profile
  std::uint64_t seed = 0;
  ChainConfig chain;  // zero-initialized -> per-d defaults

  void validate() const;
};

struct ConcentrationConfig {
  std::vector<int> dims;
  double rho = 1.0;
  int trials = 0;
  std::uint64_t seed = 0;
  ChainConfig chain;  // zero-initialized -> per-d defaults

  void validate() const;
};

struct ValidationConfig {
  int samples = 10000;
  std::uint64_t seed = 0;
  ChainConfig chain;  // zero-initialized -> per-d defaults
};

struct AuditConfig {
  int d = 10;
  std::int64_t n = 500;
  double epsilon = 1.0;
  int pairs = 100;
  int samples = 100;
  std::uint64_t seed = 0;
  ChainConfig chain;  // zero-initialized -> per-d defaults

  void validate() const;
};

// Row generators for the synthetic data profiles. The covariance variant
// streams the Gram accumulation so n can be large without materializing
// the dataset; it matches compute_covariance(synthesize_dataset) up to
// floating-point rounding and consumes the stream identically.
Dataset synthesize_dataset(DataProfile profile, int d, std::int64_t n,
                           double tau, RandomStream& rng);
CovarianceMatrix synthesize_covariance(DataProfile profile, int d,
                                       std::int64_t n, double tau,
                                       RandomStream& rng);

// Mechanism error experiment: one synthetic dataset per config, one
// mechanism run per trial, Schatten errors for p in {1, 2, 4, inf}
// against the 3 d^{1+1/p} / (epsilon n) theory bounds.
ExperimentReport run_error_experiment(const ExperimentConfig& cfg);

// Noise-law concentration: per-trial R/(rho d^2), d * max w_i and
// ||Z|| / (rho d); radial moment checks, the spectral-norm fraction and
// median checks, per-coordinate weight symmetry, and (when more than one
// dimension is given) the d * max w_i trend across dims.
ExperimentReport run_concentration_experiment(const ConcentrationConfig& cfg);

// Chain-vs-oracle validation: d = 2 KS against the exact sampler, d = 3
// mean-of-max against the rejection sampler, radius/angular independence,
// and per-coordinate symmetry.
ExperimentReport run_sampler_validation(const ValidationConfig& cfg);

// Privacy audit over random adjacent dataset pairs: the unnormalized
// log-density ratio must stay below the nuclear-sensitivity bound, which
// in turn must stay below epsilon. Violations are build bugs, not bad luck.
ExperimentReport run_dp_audit(const AuditConfig& cfg);

}  // namespace privcov

#endif  // PRIVCOV_HARNESS_HPP_
