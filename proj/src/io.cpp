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

#include "privcov/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "privcov/errors.hpp"

namespace privcov::io {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

nlohmann::json matrix_to_json_rows(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Matrix parse_dataset_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  Eigen::Index cols = -1;
  int line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    // Skip blank lines.
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t' && c != '\r') blank = false;
    }
    if (blank) continue;
    std::vector<std::string> fields = split_csv_line(line);
    std::vector<double> values(fields.size());
    bool numeric = true;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!parse_double(fields[j], values[j])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first_content_line) {
        first_content_line = false;  // header line
        continue;
      }
      throw ParseError("line " + std::to_string(line_no) +
                       ": non-numeric field in dataset CSV");
    }
    first_content_line = false;
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(values.size());
    } else if (static_cast<Eigen::Index>(values.size()) != cols) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " columns, got " +
                       std::to_string(values.size()));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("dataset CSV has no data rows");
  Matrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

Matrix read_dataset_csv(const std::string& path) {
  return parse_dataset_csv(read_file(path));
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += fmt(m(i, j));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json mechanism_output_to_json(const MechanismOutput& out,
                                        double epsilon) {
  nlohmann::json j;
  j["dim"] = out.estimate.rows();
  j["epsilon"] = epsilon;
  j["mechanism"] = to_string(out.mechanism);
  if (out.realized_radius.has_value()) {
    j["realized_radius"] = *out.realized_radius;
  }
  j["matrix"] = matrix_to_json_rows(out.estimate);
  return j;
}

nlohmann::json noise_samples_to_json(const std::vector<SpectralNoise>& samples,
                                     double rho) {
  nlohmann::json j;
  if (!samples.empty()) j["dim"] = samples.front().matrix.rows();
  j["rho"] = rho;
  nlohmann::json list = nlohmann::json::array();
  for (const SpectralNoise& z : samples) {
    nlohmann::json item;
    item["radius"] = z.radius;
    nlohmann::json w = nlohmann::json::array();
    for (Eigen::Index i = 0; i < z.weights.w.size(); ++i) {
      w.push_back(z.weights.w[i]);
    }
    item["weights"] = std::move(w);
    item["matrix"] = matrix_to_json_rows(z.matrix);
    list.push_back(std::move(item));
  }
  j["samples"] = std::move(list);
  return j;
}

nlohmann::json chain_config_to_json(const ChainConfig& cfg) {
  return nlohmann::json{{"steps", cfg.n_steps},
                        {"burn_in", cfg.burn_in},
                        {"step_size", cfg.step_size},
                        {"method", to_string(cfg.method)}};
}

ChainConfig chain_config_from_json(const nlohmann::json& j) {
  ChainConfig cfg;
  try {
    cfg.n_steps = j.at("steps").get<int>();
    cfg.burn_in = j.at("burn_in").get<int>();
    cfg.step_size = j.at("step_size").get<double>();
    cfg.method = chain_method_from_string(j.at("method").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("chain config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += report.columns[i];
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += fmt(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [key, value] : report.config_echo) config[key] = value;
  j["config"] = std::move(config);
  nlohmann::json quantiles = nlohmann::json::object();
  for (const auto& [key, value] : report.quantiles) quantiles[key] = value;
  j["quantiles"] = std::move(quantiles);
  nlohmann::json verdicts = nlohmann::json::array();
  for (const Verdict& v : report.verdicts) {
    verdicts.push_back(nlohmann::json{{"name", v.name},
                                      {"pass", v.pass},
                                      {"observed", v.observed},
                                      {"threshold", v.threshold},
                                      {"note", v.note}});
  }
  j["verdicts"] = std::move(verdicts);
  j["all_pass"] = report.all_pass();
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << content;
  if (!out) throw ParseError("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace privcov::io
