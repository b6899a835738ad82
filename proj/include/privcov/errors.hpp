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

#ifndef PRIVCOV_ERRORS_HPP_
#define PRIVCOV_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace privcov {

// Bad data fed to an operation (non-finite matrix entries, negative
// vector entries, malformed datasets).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad configuration value (nonpositive scale, p < 1, epsilon <= 0).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Point outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A stochastic procedure failed to make progress (rejection stall,
// persistent non-finite chain state).
class SamplerError : public std::runtime_error {
 public:
  explicit SamplerError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; message carries the offending line number.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace privcov

#endif  // PRIVCOV_ERRORS_HPP_
