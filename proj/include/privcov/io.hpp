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

#ifndef PRIVCOV_IO_HPP_
#define PRIVCOV_IO_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "privcov/harness.hpp"
#include "privcov/mechanisms.hpp"
#include "privcov/nucsampler.hpp"
#include "privcov/spectra.hpp"

namespace privcov::io {

// Dataset CSV: one row per sample, d float columns, optional header line.
// Throws ParseError with a line number on malformed input.
Matrix read_dataset_csv(const std::string& path);
Matrix parse_dataset_csv(const std::string& text);

// Matrix CSV: d lines of comma-separated entries, full precision.
std::string matrix_to_csv(const Matrix& m);

// {dim, epsilon, mechanism, realized_radius?, matrix}.
nlohmann::json mechanism_output_to_json(const MechanismOutput& out,
                                        double epsilon);

// Noise draws with their radius and weight diagnostics.
nlohmann::json noise_samples_to_json(const std::vector<SpectralNoise>& samples,
                                     double rho);

// ChainConfig <-> {steps, burn_in, step_size, method}.
nlohmann::json chain_config_to_json(const ChainConfig& cfg);
ChainConfig chain_config_from_json(const nlohmann::json& j);

// Report CSV: header row, then one row per trial.
std::string report_to_csv(const ExperimentReport& report);
// Report JSON summary: config echo, quantiles, verdicts. Wall-clock is
// deliberately excluded so reruns of the same (config, seed) are
// byte-identical.
nlohmann::json report_to_json(const ExperimentReport& report);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace privcov::io

#endif  // PRIVCOV_IO_HPP_
