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

#ifndef PRIVCOV_STATS_HPP_
#define PRIVCOV_STATS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace privcov::stats {

double mean(const std::vector<double>& v);
// Sample standard deviation (n-1 denominator).
double stddev(const std::vector<double>& v);
// Standard error of the mean.
double standard_error(const std::vector<double>& v);
// Pearson correlation.
double correlation(const std::vector<double>& a, const std::vector<double>& b);

// Quantile with linear interpolation between order statistics; sorts a copy
// so callers can pass per-trial data in arrival order.
double quantile(std::vector<double> v, double q);
double median(std::vector<double> v);

// Kolmogorov-Smirnov distance between the sample and a reference CDF.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);
// Two-sample Kolmogorov-Smirnov distance.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Asymptotic critical values: the KS test rejects at level alpha when the
// statistic exceeds these.
double ks_critical(std::size_t n, double alpha);
double ks_critical(std::size_t n, std::size_t m, double alpha);

// Reference CDFs used by the validation suites.
double laplace_cdf(double x, double scale);
// CDF of the d = 2 simplex weight marginal, density 2|2t - 1| on (0,1).
double weight_marginal_cdf_d2(double t);

}  // namespace privcov::stats

#endif  // PRIVCOV_STATS_HPP_
