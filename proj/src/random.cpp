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

#include "privcov/random.hpp"

#include <cmath>
#include <numbers>

#include "privcov/errors.hpp"

namespace privcov {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  // Mix (seed, stream_id) into four words so nearby ids land far apart in
  // engine state space.
  std::uint64_t s = seed ^ (0x632BE59BD9B4E019ULL * (stream_id + 1));
  std::seed_seq seq{
      static_cast<std::uint32_t>(splitmix64(s)),
      static_cast<std::uint32_t>(splitmix64(s) >> 32),
      static_cast<std::uint32_t>(splitmix64(s)),
      static_cast<std::uint32_t>(splitmix64(s) >> 32),
      static_cast<std::uint32_t>(splitmix64(s)),
      static_cast<std::uint32_t>(splitmix64(s) >> 32),
  };
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

RandomStream RandomStream::from_entropy() {
  std::random_device dev;
  std::uint64_t seed = (static_cast<std::uint64_t>(dev()) << 32) ^ dev();
  std::uint64_t stream = (static_cast<std::uint64_t>(dev()) << 32) ^ dev();
  return RandomStream(seed, stream);
}

RandomStream RandomStream::child(std::uint64_t i) const {
  // Derive a fresh (seed, stream) pair; children of distinct parents or
  // distinct indices never collide in practice.
  std::uint64_t s = seed_ ^ (0x9E3779B97F4A7C15ULL * (stream_id_ + 1));
  std::uint64_t mixed = s;
  (void)splitmix64(mixed);
  return RandomStream(splitmix64(mixed), i);
}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::uniform() {
  // 53-bit mantissa in [0,1); reject the endpoints to keep logs finite.
  for (;;) {
    double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double RandomStream::gaussian() {
  double u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::exponential() { return -std::log(uniform()); }

double RandomStream::laplace(double scale) {
  if (!(scale > 0.0)) throw ParameterError("laplace: scale must be > 0");
  double u = uniform() - 0.5;
  double mag = 1.0 - 2.0 * std::abs(u);  // in (0, 1]
  return (u < 0.0 ? -scale : scale) * -std::log(mag);
}

double RandomStream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw ParameterError("gamma: shape and scale must be > 0");
  }
  // Marsaglia & Tsang (2000). For shape < 1 boost via
  // Gamma(a) = Gamma(a+1) * U^{1/a}.
  double boost = 1.0;
  double a = shape;
  if (a < 1.0) {
    boost = std::pow(uniform(), 1.0 / a);
    a += 1.0;
  }
  const double d = a - 1.0 / 3.0;
  const double c = (1.0 / 3.0) / std::sqrt(d);
  for (;;) {
    double x, v;
    do {
      x = gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return boost * scale * d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return boost * scale * d * v;
    }
  }
}

}  // namespace privcov
