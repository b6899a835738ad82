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

#include "privcov/stats.hpp"

#include <algorithm>
#include <cmath>

#include "privcov/errors.hpp"

namespace privcov::stats {

double mean(const std::vector<double>& v) {
  if (v.empty()) throw ParameterError("mean: empty sample");
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) throw ParameterError("stddev: need at least two points");
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double standard_error(const std::vector<double>& v) {
  return stddev(v) / std::sqrt(static_cast<double>(v.size()));
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ParameterError("correlation: need two equal-length samples");
  }
  const double ma = mean(a), mb = mean(b);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw ParameterError("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile: q outside [0,1]");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
  if (sample.empty()) throw ParameterError("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return d;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ParameterError("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

namespace {
// Asymptotic Kolmogorov quantile: P(sup > c) ~ 2 exp(-2 c^2).
double kolmogorov_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("ks_critical: alpha outside (0,1)");
  }
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}
}  // namespace

double ks_critical(std::size_t n, double alpha) {
  return kolmogorov_quantile(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_critical(std::size_t n, std::size_t m, double alpha) {
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return kolmogorov_quantile(alpha) * std::sqrt((nn + mm) / (nn * mm));
}

double laplace_cdf(double x, double scale) {
  if (!(scale > 0.0)) throw ParameterError("laplace_cdf: scale must be > 0");
  return x < 0.0 ? 0.5 * std::exp(x / scale)
                 : 1.0 - 0.5 * std::exp(-x / scale);
}

double weight_marginal_cdf_d2(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t <= 0.5 ? 2.0 * t * (1.0 - t) : 1.0 - 2.0 * t * (1.0 - t);
}

}  // namespace privcov::stats
