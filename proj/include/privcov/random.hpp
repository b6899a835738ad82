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

#ifndef PRIVCOV_RANDOM_HPP_
#define PRIVCOV_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace privcov {

// Seeded random stream with substream support.
//
// A stream is identified by (seed, stream_id). The same pair always
// reproduces the same draw sequence bit-exactly within one build; distinct
// stream ids are mixed through SplitMix64 before seeding the engine, so
// parallel trials can each own stream id = trial index without sharing
// state. All scalar distributions are implemented on top of the raw
// uniform so that outputs depend only on the engine state, not on
// library-specific distribution internals.
//
// Fixed seeds are for tests and benchmarks. A differentially private
// release must use from_entropy(): publishing output generated from a
// known seed reveals the noise and voids the privacy guarantee.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  // Stream seeded from the OS entropy source. Required in release paths.
  static RandomStream from_entropy();

  // Independent substream i of this stream. Thread-safe on a const stream.
  RandomStream child(std::uint64_t i) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Raw 64 uniform bits.
  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1).
  double uniform();

  // Standard normal draw (Box-Muller).
  double gaussian();

  // Unit-rate exponential draw.
  double exponential();

  // Laplace draw with density (1/2b) exp(-|x|/b), b = scale > 0.
  double laplace(double scale);

  // Gamma draw with density proportional to x^{shape-1} e^{-x/scale}.
  // Marsaglia-Tsang squeeze; stable for shapes up to 1e6 and beyond.
  double gamma(double shape, double scale);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace privcov

#endif  // PRIVCOV_RANDOM_HPP_
