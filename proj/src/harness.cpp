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

#include "privcov/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "privcov/errors.hpp"
#include "privcov/stats.hpp"

namespace privcov {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ChainConfig resolved_chain(const ChainConfig& cfg, int d) {
  if (cfg.n_steps == 0 && cfg.burn_in == 0) return ChainConfig::defaults(d);
  cfg.validate();
  return cfg;
}

// Dynamic parallel map; safe because every task writes only slots keyed by
// its own index.
void parallel_for(int count, const std::function<void(int)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  int workers = static_cast<int>(hw == 0 ? 1 : hw);
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Vector sphere_row(int d, RandomStream& rng) {
  Vector g(d);
  for (;;) {
    for (int i = 0; i < d; ++i) g[i] = rng.gaussian();
    const double norm = g.norm();
    if (norm > 1e-12) return g / norm;
  }
}

Vector ball_row(int d, RandomStream& rng) {
  return sphere_row(d, rng) *
         std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
}

double profile_scale(DataProfile profile, double tau) {
  return profile == DataProfile::kLowTrace ? std::sqrt(tau) : 1.0;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void push_quantiles(ExperimentReport& report, const std::string& name,
                    const std::vector<double>& values) {
  report.quantiles.emplace_back(name + "_p50", stats::quantile(values, 0.50));
  report.quantiles.emplace_back(name + "_p95", stats::quantile(values, 0.95));
  report.quantiles.emplace_back(name + "_p99", stats::quantile(values, 0.99));
}

std::vector<double> column(const ExperimentReport& report,
                           const std::string& name) {
  std::size_t idx = report.columns.size();
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (report.columns[i] == name) {
      idx = i;
      break;
    }
  }
  if (idx == report.columns.size()) {
    throw ParameterError("report column not found: " + name);
  }
  std::vector<double> out;
  out.reserve(report.rows.size());
  for (const auto& row : report.rows) out.push_back(row[idx]);
  return out;
}

// max_i |mean w_i - 1/d| measured in units of 3 standard errors.
Verdict coordinate_symmetry_verdict(const std::string& name,
                                    const std::vector<Vector>& weights,
                                    int d) {
  const double n = static_cast<double>(weights.size());
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    double m = 0.0;
    for (const Vector& w : weights) m += w[i];
    m /= n;
    double var = 0.0;
    for (const Vector& w : weights) var += (w[i] - m) * (w[i] - m);
    const double se = std::sqrt(var / (n - 1.0) / n);
    const double dev = std::abs(m - 1.0 / d) / (3.0 * se);
    worst = std::max(worst, dev);
  }
  return Verdict{name, worst <= 1.0, worst, 1.0,
                 "max_i |mean(w_i) - 1/d| / (3 SE)"};
}

}  // namespace

std::string to_string(DataProfile p) {
  switch (p) {
    case DataProfile::kIsotropic: return "isotropic";
    case DataProfile::kLowTrace: return "low-trace";
    case DataProfile::kRankOne: return "rank-one";
  }
  return "isotropic";
}

DataProfile data_profile_from_string(const std::string& s) {
  if (s == "isotropic") return DataProfile::kIsotropic;
  if (s == "low-trace") return DataProfile::kLowTrace;
  if (s == "rank-one") return DataProfile::kRankOne;
  throw ParameterError("unknown data profile: " + s);
}

bool ExperimentReport::all_pass() const {
  for (const Verdict& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

const Verdict* ExperimentReport::find_verdict(const std::string& name) const {
  for (const Verdict& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

void ExperimentConfig::validate() const {
  if (d < 1) throw ParameterError("ExperimentConfig: d must be >= 1");
  if (n < 1) throw ParameterError("ExperimentConfig: n must be >= 1");
  if (!(epsilon > 0.0)) throw ParameterError("ExperimentConfig: epsilon must be > 0");
  if (trials < 1) throw ParameterError("ExperimentConfig: trials must be >= 1");
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw ParameterError("ExperimentConfig: tau must be in (0, 1]");
  }
}

void ConcentrationConfig::validate() const {
  if (dims.empty()) throw ParameterError("ConcentrationConfig: dims is empty");
  for (int d : dims) {
    if (d < 1) throw ParameterError("ConcentrationConfig: dims must be >= 1");
  }
  if (!(rho > 0.0)) throw ParameterError("ConcentrationConfig: rho must be > 0");
  if (trials < 2) throw ParameterError("ConcentrationConfig: trials must be >= 2");
}

void AuditConfig::validate() const {
  if (d < 1) throw ParameterError("AuditConfig: d must be >= 1");
  if (n < 1) throw ParameterError("AuditConfig: n must be >= 1");
  if (!(epsilon > 0.0)) throw ParameterError("AuditConfig: epsilon must be > 0");
  if (pairs < 1 || samples < 1) {
    throw ParameterError("AuditConfig: pairs and samples must be >= 1");
  }
}

Dataset synthesize_dataset(DataProfile profile, int d, std::int64_t n,
                           double tau, RandomStream& rng) {
  if (d < 1 || n < 1) throw ParameterError("synthesize_dataset: bad d or n");
  const double scale = profile_scale(profile, tau);
  Matrix rows(n, d);
  if (profile == DataProfile::kRankOne) {
    const Vector v = sphere_row(d, rng);
    for (std::int64_t i = 0; i < n; ++i) {
      rows.row(i) = (rng.uniform() < 0.5 ? -v : v).transpose();
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      rows.row(i) = (scale * sphere_row(d, rng)).transpose();
    }
  }
  return Dataset::checked(std::move(rows));
}

CovarianceMatrix synthesize_covariance(DataProfile profile, int d,
                                       std::int64_t n, double tau,
                                       RandomStream& rng) {
  if (d < 1 || n < 1) throw ParameterError("synthesize_covariance: bad d or n");
  const double scale = profile_scale(profile, tau);
  Matrix gram = Matrix::Zero(d, d);
  if (profile == DataProfile::kRankOne) {
    const Vector v = sphere_row(d, rng);
    for (std::int64_t i = 0; i < n; ++i) {
      (void)rng.uniform();  // sign draw, kept for stream parity
    }
    gram = static_cast<double>(n) * (v * v.transpose());
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      const Vector x = scale * sphere_row(d, rng);
      gram.selfadjointView<Eigen::Lower>().rankUpdate(x);
    }
    gram = Matrix(gram.selfadjointView<Eigen::Lower>());
  }
  Matrix sigma = gram / static_cast<double>(n);
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  return CovarianceMatrix{std::move(sigma), n};
}

ExperimentReport run_error_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Timer timer;
  const ChainConfig chain = resolved_chain(cfg.chain, cfg.d);
  const PrivacyParams params = PrivacyParams::checked(cfg.epsilon, cfg.n);
  const bool project = cfg.mechanism == MechanismKind::kProject;
  const double rho_used =
      project ? params.rho_perturb_half() : params.rho_perturb();

  RandomStream data_rng(cfg.seed, 0);
  const CovarianceMatrix sigma =
      synthesize_covariance(cfg.profile, cfg.d, cfg.n, cfg.tau, data_rng);
  const double trace = sigma.trace();

  const double en = cfg.epsilon * static_cast<double>(cfg.n);
  const double ps[4] = {1.0, 2.0, 4.0, kInfinity};
  double bounds[4];
  for (int k = 0; k < 4; ++k) {
    const double inv_p = std::isinf(ps[k]) ? 0.0 : 1.0 / ps[k];
    bounds[k] = 3.0 * std::pow(static_cast<double>(cfg.d), 1.0 + inv_p) / en;
  }

  ExperimentReport report;
  report.config_echo = {{"experiment", "error"},
                        {"d", std::to_string(cfg.d)},
                        {"n", std::to_string(cfg.n)},
                        {"epsilon", fmt(cfg.epsilon)},
                        {"trials", std::to_string(cfg.trials)},
                        {"mechanism", to_string(cfg.mechanism)},
                        {"profile", to_string(cfg.profile)},
                        {"tau", fmt(cfg.tau)},
                        {"seed", std::to_string(cfg.seed)},
                        {"chain_steps", std::to_string(chain.n_steps)},
                        {"chain_burn_in", std::to_string(chain.burn_in)},
                        {"chain_step_size", fmt(chain.step_size)},
                        {"chain_method", to_string(chain.method)},
                        {"trace", fmt(trace)}};
  report.columns = {"trial",    "err_s1",   "err_s2",   "err_s4",
                    "err_sinf", "bound_s1", "bound_s2", "bound_s4",
                    "bound_sinf", "radius_ratio", "d_max_w"};
  if (project) {
    report.columns.insert(report.columns.end(),
                          {"err_hat_f", "ratio_f", "realized_radius",
                           "radius_ge_trace", "nonworsen_ok", "fallback_ok"});
  }
  report.rows.assign(cfg.trials,
                     std::vector<double>(report.columns.size(), 0.0));

  parallel_for(cfg.trials, [&](int t) {
    RandomStream rng(cfg.seed, 1 + static_cast<std::uint64_t>(t));
    std::vector<double>& row = report.rows[t];
    Matrix err;
    const SpectralNoise* noise = nullptr;
    PerturbTrace perturb_trace;
    ProjectTrace project_trace;
    if (project) {
      project_trace = project_mechanism_traced(sigma, params, chain, rng);
      err = project_trace.output.estimate - sigma.mat;
      noise = &project_trace.noise;
    } else {
      perturb_trace = perturb_mechanism_traced(sigma, params, chain, rng);
      err = perturb_trace.output.estimate - sigma.mat;
      noise = &perturb_trace.noise;
    }
    Eigen::BDCSVD<Matrix> dec(err);
    const Vector sv = dec.singularValues();
    row[0] = t;
    for (int k = 0; k < 4; ++k) {
      row[1 + k] = schatten_norm_from_singular_values(sv, ps[k]);
      row[5 + k] = bounds[k];
    }
    const double d2 = static_cast<double>(cfg.d) * static_cast<double>(cfg.d);
    row[9] = noise->radius / (rho_used * d2);
    row[10] = cfg.d * noise->weights.w.maxCoeff();
    if (project) {
      const double err_hat_f =
          (project_trace.perturbed - sigma.mat).norm();
      const double err_f = row[2];
      row[11] = err_hat_f;
      row[12] = err_hat_f > 0.0 ? err_f / err_hat_f : 0.0;
      row[13] = project_trace.radius;
      const bool radius_covers = project_trace.radius >= trace;
      row[14] = radius_covers ? 1.0 : 0.0;
      if (radius_covers) {
        row[15] = err_f <= err_hat_f + 1e-12 ? 1.0 : 0.0;
        row[16] = 1.0;
      } else {
        row[15] = 1.0;
        const double nuclear_err = row[1];
        row[16] = (err_f <= nuclear_err + 1e-12 &&
                   nuclear_err <= project_trace.radius + trace + 1e-9)
                      ? 1.0
                      : 0.0;
      }
    }
  });

  for (const char* name : {"err_s1", "err_s2", "err_s4", "err_sinf"}) {
    push_quantiles(report, name, column(report, name));
  }

  if (!project) {
    const char* err_names[3] = {"err_s1", "err_s2", "err_sinf"};
    const int bound_idx[3] = {0, 1, 3};
    for (int k = 0; k < 3; ++k) {
      const std::vector<double> errs = column(report, err_names[k]);
      double ok = 0.0;
      for (double e : errs) {
        if (e <= bounds[bound_idx[k]]) ok += 1.0;
      }
      const double frac = ok / static_cast<double>(cfg.trials);
      report.verdicts.push_back(
          {std::string(err_names[k]) + "_within_bound_frac", frac >= 0.95,
           frac, 0.95, "fraction of trials with error <= 3 d^{1+1/p}/(eps n)"});
    }
  } else {
    const std::vector<double> ratios = column(report, "ratio_f");
    push_quantiles(report, "ratio_f", ratios);
    if (cfg.profile == DataProfile::kLowTrace) {
      const double med = stats::median(ratios);
      report.verdicts.push_back(
          {"frobenius_ratio_median", med <= 0.3, med, 0.3,
           "median ||proj - Sigma||_F / ||perturbed - Sigma||_F, low-trace "
           "regime"});
    }
    double bad_nonworsen = 0.0, bad_fallback = 0.0;
    for (const auto& row : report.rows) {
      if (row[15] == 0.0) bad_nonworsen += 1.0;
      if (row[16] == 0.0) bad_fallback += 1.0;
    }
    report.verdicts.push_back(
        {"projection_non_worsening", bad_nonworsen == 0.0, bad_nonworsen, 0.0,
         "trials with radius >= trace where projection increased Frobenius "
         "error"});
    report.verdicts.push_back(
        {"small_radius_fallback", bad_fallback == 0.0, bad_fallback, 0.0,
         "trials with radius < trace violating the nuclear-ball distance "
         "bound"});
  }

  report.wall_seconds = timer.seconds();
  return report;
}

ExperimentReport run_concentration_experiment(const ConcentrationConfig& cfg) {
  cfg.validate();
  Timer timer;

  ExperimentReport report;
  std::string dims_str;
  for (std::size_t i = 0; i < cfg.dims.size(); ++i) {
    dims_str += (i ? "," : "") + std::to_string(cfg.dims[i]);
  }
  report.config_echo = {{"experiment", "concentration"},
                        {"dims", dims_str},
                        {"rho", fmt(cfg.rho)},
                        {"trials", std::to_string(cfg.trials)},
                        {"seed", std::to_string(cfg.seed)}};
  report.columns = {"d", "radius_ratio", "d_max_w", "spectral_ratio"};
  const int per_d = cfg.trials;
  report.rows.assign(cfg.dims.size() * per_d,
                     std::vector<double>(report.columns.size(), 0.0));

  std::vector<double> trend_means;
  for (std::size_t k = 0; k < cfg.dims.size(); ++k) {
    const int d = cfg.dims[k];
    const ChainConfig chain = resolved_chain(cfg.chain, d);
    const NoiseScale scale{cfg.rho};
    const double d2 = static_cast<double>(d) * static_cast<double>(d);
    std::vector<Vector> weights(per_d);

    parallel_for(per_d, [&](int t) {
      RandomStream rng(cfg.seed,
                       1 + k * static_cast<std::uint64_t>(per_d) + t);
      SpectralNoise z = sample_noise(d, scale, chain, rng);
      std::vector<double>& row = report.rows[k * per_d + t];
      row[0] = d;
      row[1] = z.radius / (cfg.rho * d2);
      row[2] = d * z.weights.w.maxCoeff();
      row[3] = spectral_norm(z.matrix) / (cfg.rho * d);
      weights[t] = std::move(z.weights.w);
    });

    std::vector<double> radius_ratio(per_d), d_max_w(per_d), spectral(per_d);
    for (int t = 0; t < per_d; ++t) {
      radius_ratio[t] = report.rows[k * per_d + t][1];
      d_max_w[t] = report.rows[k * per_d + t][2];
      spectral[t] = report.rows[k * per_d + t][3];
    }
    const std::string tag = "_d" + std::to_string(d);
    push_quantiles(report, "spectral_ratio" + tag, spectral);
    push_quantiles(report, "d_max_w" + tag, d_max_w);

    // Radial moments: mean R = rho d^2, std R = rho d. Tolerances never
    // looser than the estimator noise floor (4 sigma) and never tighter
    // than the documented 1% / 10%.
    const double nt = static_cast<double>(per_d);
    const double mean_tol =
        std::max(0.01, 4.0 / (static_cast<double>(d) * std::sqrt(nt)));
    const double std_tol = std::max(0.10, 4.0 / std::sqrt(2.0 * (nt - 1.0)));
    const double mean_dev = std::abs(stats::mean(radius_ratio) - 1.0);
    const double std_dev =
        std::abs(stats::stddev(radius_ratio) * static_cast<double>(d) - 1.0);
    report.verdicts.push_back({"radial_mean_dev" + tag, mean_dev <= mean_tol,
                               mean_dev, mean_tol,
                               "|mean R/(rho d^2) - 1|"});
    report.verdicts.push_back({"radial_std_dev" + tag, std_dev <= std_tol,
                               std_dev, std_tol, "|std R/(rho d) - 1|"});

    double frac = 0.0;
    for (double s : spectral) {
      if (s <= 1.5) frac += 1.0;
    }
    frac /= nt;
    report.verdicts.push_back({"spectral_frac_le_1.5" + tag, frac >= 0.95,
                               frac, 0.95,
                               "fraction of draws with ||Z|| <= 1.5 rho d"});
    const double med = stats::median(spectral);
    report.verdicts.push_back({"spectral_median" + tag,
                               med >= 0.8 && med <= 1.3, med, 1.3,
                               "median ||Z||/(rho d), window [0.8, 1.3]"});
    report.verdicts.push_back(
        coordinate_symmetry_verdict("coord_symmetry" + tag, weights, d));

    trend_means.push_back(stats::mean(d_max_w));
  }

  if (cfg.dims.size() >= 2) {
    double worst_step = -kInfinity;
    for (std::size_t k = 0; k + 1 < trend_means.size(); ++k) {
      worst_step = std::max(worst_step, trend_means[k + 1] - trend_means[k]);
    }
    report.verdicts.push_back(
        {"weight_trend_nonincreasing", worst_step <= 0.0, worst_step, 0.0,
         "max increase of mean(d max w) along the dims grid"});
    double lowest = kInfinity;
    for (double m : trend_means) lowest = std::min(lowest, m);
    report.verdicts.push_back({"weight_trend_above_one", lowest >= 1.0,
                               lowest, 1.0, "mean(d max w) stays above 1"});
  }

  report.wall_seconds = timer.seconds();
  return report;
}

ExperimentReport run_sampler_validation(const ValidationConfig& cfg) {
  if (cfg.samples < 100) {
    throw ParameterError("run_sampler_validation: need at least 100 samples");
  }
  Timer timer;
  const int n = cfg.samples;

  ExperimentReport report;
  report.config_echo = {{"experiment", "validation"},
                        {"samples", std::to_string(n)},
                        {"seed", std::to_string(cfg.seed)}};
  report.columns = {"trial",        "d2_chain_w1", "d2_exact_w1",
                    "d3_chain_max", "d3_rej_max",  "d8_radius",
                    "d8_max_w",     "d8_u00"};
  report.rows.assign(n, std::vector<double>(report.columns.size(), 0.0));

  const ChainConfig chain2 = resolved_chain(cfg.chain, 2);
  const ChainConfig chain3 = resolved_chain(cfg.chain, 3);
  const ChainConfig chain8 = resolved_chain(cfg.chain, 8);
  const NoiseScale unit{1.0};

  std::vector<Vector> w2(n), w3(n), w8(n);
  parallel_for(n, [&](int t) {
    std::vector<double>& row = report.rows[t];
    row[0] = t;
    {
      RandomStream rng(cfg.seed, 10'000'000 + static_cast<std::uint64_t>(t));
      Vector w = sample_weights_mcmc(2, chain2, rng).w;
      row[1] = w[0];
      w2[t] = std::move(w);
    }
    {
      RandomStream rng(cfg.seed, 20'000'000 + static_cast<std::uint64_t>(t));
      row[2] = sample_weights_exact_d2(rng).w[0];
    }
    {
      RandomStream rng(cfg.seed, 30'000'000 + static_cast<std::uint64_t>(t));
      Vector w = sample_weights_mcmc(3, chain3, rng).w;
      row[3] = w.maxCoeff();
      w3[t] = std::move(w);
    }
    {
      RandomStream rng(cfg.seed, 40'000'000 + static_cast<std::uint64_t>(t));
      row[4] = sample_weights_rejection(3, rng).w.maxCoeff();
    }
    {
      RandomStream rng(cfg.seed, 50'000'000 + static_cast<std::uint64_t>(t));
      SpectralNoise z = sample_noise(8, unit, chain8, rng);
      row[5] = z.radius;
      row[6] = z.weights.w.maxCoeff();
      row[7] = z.left(0, 0);
      w8[t] = std::move(z.weights.w);
    }
  });

  const std::vector<double> d2_chain = column(report, "d2_chain_w1");
  const std::vector<double> d2_exact = column(report, "d2_exact_w1");
  const double ks = stats::ks_statistic(d2_chain, d2_exact);
  const double ks_crit = stats::ks_critical(d2_chain.size(), d2_exact.size(), 0.01);
  report.verdicts.push_back({"d2_ks_chain_vs_exact", ks <= ks_crit, ks,
                             ks_crit,
                             "two-sample KS, chain vs exact inverse-CDF"});

  std::vector<double> d2_max(n);
  for (int t = 0; t < n; ++t) d2_max[t] = std::max(d2_chain[t], 1.0 - d2_chain[t]);
  const double d2_dev = std::abs(stats::mean(d2_max) - 5.0 / 6.0);
  report.verdicts.push_back({"d2_mean_max_dev", d2_dev <= 0.01, d2_dev, 0.01,
                             "|mean max(w) - 5/6|"});

  const std::vector<double> d3_chain = column(report, "d3_chain_max");
  const std::vector<double> d3_rej = column(report, "d3_rej_max");
  const double se = std::sqrt(
      stats::standard_error(d3_chain) * stats::standard_error(d3_chain) +
      stats::standard_error(d3_rej) * stats::standard_error(d3_rej));
  const double d3_dev =
      std::abs(stats::mean(d3_chain) - stats::mean(d3_rej)) / (3.0 * se);
  report.verdicts.push_back({"d3_mean_max_dev_se", d3_dev <= 1.0, d3_dev, 1.0,
                             "|mean max chain - mean max rejection| / (3 SE)"});

  const std::vector<double> d8_r = column(report, "d8_radius");
  const std::vector<double> d8_maxw = column(report, "d8_max_w");
  const std::vector<double> d8_u00 = column(report, "d8_u00");
  const double corr_rw = std::abs(stats::correlation(d8_r, d8_maxw));
  const double corr_ru = std::abs(stats::correlation(d8_r, d8_u00));
  // 0.02 is two standard errors at the reference 1e4 draws; scale the
  // floor with the actual sample count.
  const double corr_tol = std::max(0.02, 2.0 / std::sqrt(static_cast<double>(n)));
  report.verdicts.push_back({"indep_radius_max_w", corr_rw < corr_tol,
                             corr_rw, corr_tol, "|corr(R, max w)| at d=8"});
  report.verdicts.push_back({"indep_radius_haar", corr_ru < corr_tol,
                             corr_ru, corr_tol, "|corr(R, U_00)| at d=8"});

  report.verdicts.push_back(coordinate_symmetry_verdict("coord_symmetry_d2", w2, 2));
  report.verdicts.push_back(coordinate_symmetry_verdict("coord_symmetry_d3", w3, 3));
  report.verdicts.push_back(coordinate_symmetry_verdict("coord_symmetry_d8", w8, 8));

  push_quantiles(report, "d3_chain_max", d3_chain);
  push_quantiles(report, "d3_rej_max", d3_rej);

  report.wall_seconds = timer.seconds();
  return report;
}

ExperimentReport run_dp_audit(const AuditConfig& cfg) {
  cfg.validate();
  Timer timer;
  const PrivacyParams params = PrivacyParams::checked(cfg.epsilon, cfg.n);
  const NoiseScale rho{params.rho_perturb()};
  const ChainConfig chain = resolved_chain(cfg.chain, cfg.d);

  ExperimentReport report;
  report.config_echo = {{"experiment", "audit"},
                        {"d", std::to_string(cfg.d)},
                        {"n", std::to_string(cfg.n)},
                        {"epsilon", fmt(cfg.epsilon)},
                        {"pairs", std::to_string(cfg.pairs)},
                        {"samples", std::to_string(cfg.samples)},
                        {"seed", std::to_string(cfg.seed)}};
  report.columns = {"pair", "sample", "observed", "bound", "sensitivity"};
  report.rows.assign(static_cast<std::size_t>(cfg.pairs) * cfg.samples,
                     std::vector<double>(report.columns.size(), 0.0));

  std::vector<double> tightness_dev(cfg.pairs, 0.0);

  parallel_for(cfg.pairs, [&](int p) {
    RandomStream data_rng(cfg.seed, 1 + static_cast<std::uint64_t>(p));
    Matrix rows(cfg.n, cfg.d);
    for (std::int64_t i = 0; i < cfg.n; ++i) {
      rows.row(i) = ball_row(cfg.d, data_rng).transpose();
    }
    Dataset x = Dataset::checked(std::move(rows));
    const std::int64_t swap_index = static_cast<std::int64_t>(
        data_rng.uniform() * static_cast<double>(cfg.n));
    Dataset x_prime = x.with_row(std::min(swap_index, cfg.n - 1),
                                 ball_row(cfg.d, data_rng));
    const CovarianceMatrix sigma = compute_covariance(x);
    const CovarianceMatrix sigma_prime = compute_covariance(x_prime);
    const double sensitivity = nuclear_norm(sigma.mat - sigma_prime.mat);

    RandomStream out_rng(cfg.seed, 1'000'000 + static_cast<std::uint64_t>(p));
    for (int s = 0; s < cfg.samples; ++s) {
      const MechanismOutput out =
          perturb_mechanism(sigma, params, chain, out_rng);
      const LogRatioBound lrb =
          dp_log_ratio_bound(sigma, sigma_prime, out.estimate, rho);
      std::vector<double>& row =
          report.rows[static_cast<std::size_t>(p) * cfg.samples + s];
      row[0] = p;
      row[1] = s;
      row[2] = lrb.observed;
      row[3] = lrb.bound;
      row[4] = sensitivity;
    }
    // Tightness witness: at y = Sigma the ratio meets the bound exactly.
    const LogRatioBound tight =
        dp_log_ratio_bound(sigma, sigma_prime, sigma.mat, rho);
    tightness_dev[p] = std::abs(tight.observed - tight.bound);
  });

  double violations = 0.0;
  double max_bound = 0.0;
  double max_sensitivity = 0.0;
  for (const auto& row : report.rows) {
    if (std::abs(row[2]) > row[3] + 1e-9) violations += 1.0;
    max_bound = std::max(max_bound, row[3]);
    max_sensitivity = std::max(max_sensitivity, row[4]);
  }
  double worst_tightness = 0.0;
  for (double t : tightness_dev) worst_tightness = std::max(worst_tightness, t);

  report.verdicts.push_back({"zero_violations", violations == 0.0, violations,
                             0.0, "|log ratio| must be <= sensitivity bound"});
  report.verdicts.push_back({"bound_le_epsilon",
                             max_bound <= cfg.epsilon + 1e-9, max_bound,
                             cfg.epsilon, "nuclear sensitivity over rho"});
  const double sens_cap = params.sensitivity() + 1e-12;
  report.verdicts.push_back({"sensitivity_le_2_over_n",
                             max_sensitivity <= sens_cap, max_sensitivity,
                             sens_cap, "||Sigma - Sigma'||_* over row swaps"});
  report.verdicts.push_back({"tightness_witness", worst_tightness <= 1e-9,
                             worst_tightness, 1e-9,
                             "observed == bound at y = Sigma"});

  report.wall_seconds = timer.seconds();
  return report;
}

}  // namespace privcov
