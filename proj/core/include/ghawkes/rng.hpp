// Copyright 2026 The ghawkes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace ghawkes {

/// Mixes a list of words into one 64-bit seed. Used to derive independent
/// streams from (master_seed, N, replica, purpose) keys.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) {
  // splitmix64 finalizer applied over the running state
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  for (std::uint64_t w : words) {
    state += w + 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    state = z ^ (z >> 31);
  }
  return state;
}

/// Deterministic random stream keyed by (seed, stream id).
///
/// Uniforms are built from the top 53 bits of the engine output so that the
/// sequence does not depend on the standard library's distribution code.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
    const std::uint64_t key = derive_seed({seed, stream});
    std::seed_seq seq{static_cast<std::uint32_t>(key),
                      static_cast<std::uint32_t>(key >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_zero() { return 1.0 - uniform(); }

  /// Exponential with the given rate (> 0).
  double exponential(double rate) { return -std::log(uniform_open_zero()) / rate; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ghawkes
