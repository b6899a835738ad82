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

#include "privcov/cli.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "privcov/errors.hpp"
#include "privcov/harness.hpp"
#include "privcov/io.hpp"
#include "privcov/mechanisms.hpp"
#include "privcov/nucsampler.hpp"
#include "privcov/random.hpp"

namespace privcov {

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 2;
constexpr int kValidationError = 3;
constexpr int kVerdictFailure = 4;

// Options shared by every subcommand: seeding and chain overrides.
struct CommonOpts {
  std::optional<std::uint64_t> seed;
  bool test_mode = false;
  std::optional<int> chain_steps;
  std::optional<int> chain_burn_in;
  std::optional<double> chain_step_size;
  std::optional<std::string> chain_method;
  std::optional<std::string> chain_config_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed,
                    "Fixed RNG seed; requires --test-mode (a seeded release "
                    "is not private)");
    cmd->add_flag("--test-mode", test_mode,
                  "Allow fixed seeds; for tests and benchmarks only");
    cmd->add_option("--chain-steps", chain_steps,
                    "Markov chain steps per weight draw");
    cmd->add_option("--chain-burn-in", chain_burn_in, "Chain burn-in steps");
    cmd->add_option("--chain-step-size", chain_step_size,
                    "Langevin proposal step size");
    cmd->add_option("--chain-method", chain_method,
                    "hit-and-run | preconditioned-langevin");
    cmd->add_option("--chain-config", chain_config_path,
                    "JSON file with keys steps, burn_in, step_size, method");
  }

  // The privacy-safety interlock.
  void check_seed_policy() const {
    if (seed.has_value() && !test_mode) {
      throw ParameterError(
          "--seed requires --test-mode: publishing output generated from a "
          "known seed voids the privacy guarantee");
    }
  }

  RandomStream make_stream() const {
    check_seed_policy();
    if (seed.has_value()) return RandomStream(*seed, 0);
    return RandomStream::from_entropy();
  }

  std::uint64_t harness_seed() const {
    check_seed_policy();
    if (seed.has_value()) return *seed;
    RandomStream entropy = RandomStream::from_entropy();
    return entropy.seed();
  }

  void apply_overrides(ChainConfig& cfg) const {
    if (chain_steps) cfg.n_steps = *chain_steps;
    if (chain_burn_in) cfg.burn_in = *chain_burn_in;
    // Keep burn_in < n_steps when only one of the pair is overridden.
    if (chain_steps && !chain_burn_in && cfg.burn_in >= cfg.n_steps) {
      cfg.burn_in = std::max(1, cfg.n_steps * 5 / 6);
    }
    if (chain_burn_in && !chain_steps && cfg.burn_in >= cfg.n_steps) {
      cfg.n_steps = cfg.burn_in + std::max(1, cfg.burn_in / 5);
    }
    if (chain_step_size) cfg.step_size = *chain_step_size;
    if (chain_method) cfg.method = chain_method_from_string(*chain_method);
    cfg.validate();
  }

  ChainConfig resolve_chain(int d) const {
    ChainConfig cfg = ChainConfig::defaults(d);
    if (chain_config_path.has_value()) {
      cfg = io::chain_config_from_json(
          nlohmann::json::parse(io::read_file(*chain_config_path)));
    }
    apply_overrides(cfg);
    return cfg;
  }

  // Zero-initialized marker tells the harness to use per-d defaults.
  ChainConfig resolve_chain_or_default() const {
    if (!chain_config_path && !chain_steps && !chain_burn_in &&
        !chain_step_size && !chain_method) {
      return ChainConfig{};
    }
    ChainConfig cfg = ChainConfig::defaults(8);  // base for partial overrides
    if (chain_config_path.has_value()) {
      cfg = io::chain_config_from_json(
          nlohmann::json::parse(io::read_file(*chain_config_path)));
    }
    apply_overrides(cfg);
    return cfg;
  }
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    io::write_file(path, content);
  }
}

int finish_experiment(const ExperimentReport& report,
                      const std::string& output_prefix) {
  if (!output_prefix.empty()) {
    io::write_file(output_prefix + ".csv", io::report_to_csv(report));
    io::write_file(output_prefix + ".json",
                   io::report_to_json(report).dump(2) + "\n");
  }
  for (const Verdict& v : report.verdicts) {
    std::cerr << (v.pass ? "[PASS] " : "[FAIL] ") << v.name
              << "  observed=" << v.observed << " threshold=" << v.threshold
              << "  (" << v.note << ")\n";
  }
  std::cerr << "wall_seconds=" << report.wall_seconds << "\n";
  return report.all_pass() ? kOk : kVerdictFailure;
}

int cmd_estimate(const CommonOpts& common, const std::string& input,
                 const std::string& output, const std::string& format,
                 double epsilon, const std::string& mechanism, bool clip_rows,
                 bool symmetrize) {
  Matrix raw = io::read_dataset_csv(input);
  Dataset data =
      clip_rows ? Dataset::clipped(std::move(raw)) : Dataset::checked(std::move(raw));
  const CovarianceMatrix sigma = compute_covariance(data);
  const PrivacyParams params = PrivacyParams::checked(epsilon, data.n());
  const MechanismKind kind = mechanism_from_string(mechanism);
  const ChainConfig chain = common.resolve_chain(data.dim());
  RandomStream rng = common.make_stream();

  MechanismOutput out = kind == MechanismKind::kPerturb
                            ? perturb_mechanism(sigma, params, chain, rng)
                            : project_mechanism(sigma, params, chain, rng);
  if (symmetrize) out.estimate = symmetrize_psd(out.estimate);
  if (format == "json") {
    emit(output, io::mechanism_output_to_json(out, epsilon).dump(2) + "\n");
  } else if (format == "csv") {
    emit(output, io::matrix_to_csv(out.estimate));
  } else {
    throw ParameterError("unknown format: " + format);
  }
  return kOk;
}

int cmd_sample_noise(const CommonOpts& common, int dim, double rho,
                     double epsilon, std::int64_t n, int count,
                     const std::string& output) {
  if (dim < 1) throw ParameterError("sample-noise: --dim must be >= 1");
  if (count < 1) throw ParameterError("sample-noise: --count must be >= 1");
  double resolved_rho = rho;
  if (!(resolved_rho > 0.0)) {
    if (!(epsilon > 0.0) || n < 1) {
      throw ParameterError(
          "sample-noise: provide --rho, or both --epsilon and --n");
    }
    resolved_rho = PrivacyParams::checked(epsilon, n).rho_perturb();
  }
  const ChainConfig chain = common.resolve_chain(dim);
  RandomStream rng = common.make_stream();
  std::vector<SpectralNoise> samples;
  samples.reserve(count);
  for (int i = 0; i < count; ++i) {
    samples.push_back(sample_noise(dim, NoiseScale{resolved_rho}, chain, rng));
  }
  emit(output, io::noise_samples_to_json(samples, resolved_rho).dump(2) + "\n");
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "privcov: pure differentially private covariance release via "
      "nuclear-norm-calibrated matrix noise"};
  app.require_subcommand(1);

  // estimate
  auto* est = app.add_subcommand(
      "estimate", "Read a dataset CSV and release a private covariance");
  CommonOpts est_common;
  std::string est_input, est_output, est_format = "json";
  std::string est_mechanism = "perturb";
  double est_epsilon = 0.0;
  bool est_clip = false;
  bool est_symmetrize = false;
  est->add_option("--input", est_input, "Dataset CSV (rows = samples)")
      ->required();
  est->add_option("--epsilon", est_epsilon, "Privacy budget")->required();
  est->add_option("--mechanism", est_mechanism, "perturb | project");
  est->add_option("--output", est_output, "Output path (default stdout)");
  est->add_option("--format", est_format, "json | csv");
  est->add_flag("--clip-rows", est_clip,
                "Rescale rows with Euclidean norm > 1 onto the unit sphere");
  est->add_flag("--symmetrize-psd", est_symmetrize,
                "Post-process the release onto the PSD cone (off by default; "
                "the raw release is generally non-symmetric)");
  est_common.attach(est);

  // sample-noise
  auto* sn = app.add_subcommand("sample-noise",
                                "Draw matrices from the noise law");
  CommonOpts sn_common;
  int sn_dim = 0, sn_count = 1;
  double sn_rho = 0.0, sn_epsilon = 0.0;
  std::int64_t sn_n = 0;
  std::string sn_output;
  sn->add_option("--dim", sn_dim, "Matrix dimension")->required();
  sn->add_option("--rho", sn_rho, "Noise scale rho");
  sn->add_option("--epsilon", sn_epsilon, "Derive rho = 2/(epsilon n)");
  sn->add_option("--n", sn_n, "Dataset size for rho derivation");
  sn->add_option("--count", sn_count, "Number of draws");
  sn->add_option("--output", sn_output, "Output path (default stdout)");
  sn_common.attach(sn);

  // bench
  auto* bench = app.add_subcommand("bench", "Monte Carlo error benchmarks");
  CommonOpts bench_common;
  std::string bench_experiment = "error";
  int bench_dim = 50, bench_trials = 500;
  std::int64_t bench_n = 1'000'000;
  double bench_epsilon = 1.0, bench_tau = 1.0, bench_rho = 1.0;
  std::string bench_mechanism = "perturb", bench_profile = "isotropic";
  std::vector<int> bench_dims;
  std::string bench_output;
  bench->add_option("--experiment", bench_experiment, "error | concentration");
  bench->add_option("--dim", bench_dim, "Dimension (error experiment)");
  bench->add_option("--n", bench_n, "Dataset size (error experiment)");
  bench->add_option("--epsilon", bench_epsilon, "Privacy budget");
  bench->add_option("--trials", bench_trials, "Monte Carlo trials");
  bench->add_option("--mechanism", bench_mechanism, "perturb | project");
  bench->add_option("--profile", bench_profile,
                    "isotropic | low-trace | rank-one");
  bench->add_option("--tau", bench_tau, "Trace target for low-trace");
  bench->add_option("--dims", bench_dims,
                    "Dimension grid (concentration experiment)");
  bench->add_option("--rho", bench_rho, "Noise scale (concentration)");
  bench->add_option("--output", bench_output,
                    "Report path prefix (.csv/.json)");
  bench_common.attach(bench);

  // validate
  auto* val = app.add_subcommand(
      "validate", "Check the weight chain against its exact oracles");
  CommonOpts val_common;
  int val_samples = 10000;
  std::string val_output;
  val->add_option("--samples", val_samples, "Draws per check");
  val->add_option("--output", val_output, "Report path prefix");
  val_common.attach(val);

  // audit
  auto* audit = app.add_subcommand(
      "audit", "Density-ratio privacy audit over adjacent datasets");
  CommonOpts audit_common;
  int audit_dim = 10, audit_pairs = 100, audit_samples = 100;
  std::int64_t audit_n = 500;
  double audit_epsilon = 1.0;
  std::string audit_output;
  audit->add_option("--dim", audit_dim, "Dimension");
  audit->add_option("--n", audit_n, "Rows per dataset");
  audit->add_option("--epsilon", audit_epsilon, "Privacy budget");
  audit->add_option("--pairs", audit_pairs, "Adjacent dataset pairs");
  audit->add_option("--samples", audit_samples, "Mechanism outputs per pair");
  audit->add_option("--output", audit_output, "Report path prefix");
  audit_common.attach(audit);

  try {
    app.parse(argc, argv);

    if (est->parsed()) {
      return cmd_estimate(est_common, est_input, est_output, est_format,
                          est_epsilon, est_mechanism, est_clip,
                          est_symmetrize);
    }
    if (sn->parsed()) {
      return cmd_sample_noise(sn_common, sn_dim, sn_rho, sn_epsilon, sn_n,
                              sn_count, sn_output);
    }
    if (bench->parsed()) {
      if (bench_experiment == "error") {
        ExperimentConfig cfg;
        cfg.d = bench_dim;
        cfg.n = bench_n;
        cfg.epsilon = bench_epsilon;
        cfg.trials = bench_trials;
        cfg.mechanism = mechanism_from_string(bench_mechanism);
        cfg.profile = data_profile_from_string(bench_profile);
        cfg.tau = bench_tau;
        cfg.seed = bench_common.harness_seed();
        cfg.chain = bench_common.resolve_chain_or_default();
        return finish_experiment(run_error_experiment(cfg), bench_output);
      }
      if (bench_experiment == "concentration") {
        ConcentrationConfig cfg;
        cfg.dims = bench_dims.empty() ? std::vector<int>{4, 16, 64} : bench_dims;
        cfg.rho = bench_rho;
        cfg.trials = bench_trials;
        cfg.seed = bench_common.harness_seed();
        cfg.chain = bench_common.resolve_chain_or_default();
        return finish_experiment(run_concentration_experiment(cfg),
                                 bench_output);
      }
      throw ParameterError("unknown experiment: " + bench_experiment);
    }
    if (val->parsed()) {
      ValidationConfig cfg;
      cfg.samples = val_samples;
      cfg.seed = val_common.harness_seed();
      cfg.chain = val_common.resolve_chain_or_default();
      return finish_experiment(run_sampler_validation(cfg), val_output);
    }
    if (audit->parsed()) {
      AuditConfig cfg;
      cfg.d = audit_dim;
      cfg.n = audit_n;
      cfg.epsilon = audit_epsilon;
      cfg.pairs = audit_pairs;
      cfg.samples = audit_samples;
      cfg.seed = audit_common.harness_seed();
      cfg.chain = audit_common.resolve_chain_or_default();
      return finish_experiment(run_dp_audit(cfg), audit_output);
    }
    return kUsageError;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace privcov
