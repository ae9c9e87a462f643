// Copyright 2026 The sensesim Authors
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

#include <array>
#include <cstdint>

namespace sensesim {

// SplitMix64 output function. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256** generator with a Box-Muller Gaussian on top.
//
// The state is filled from a SplitMix64 sequence started at `key`, so any
// 64-bit key (including 0) yields a valid non-zero state. Sequences are
// identical on every platform; Gaussian variates additionally depend on the
// host libm's log/sin/cos.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  // Uniform on (0, 1]; safe to take the log of.
  double uniform_positive() noexcept;

  // Standard normal. Variates are produced in pairs; the second of each pair
  // is cached and returned by the next call.
  double gaussian() noexcept;

 private:
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Independent sub-streams of one trial. Signal symbols, the H1 channel
// (fading then noise) and the H0 noise each draw from their own lane, so a
// trial's noise does not shift when the signal model changes.
enum class Lane : std::uint64_t {
  kSignal = 1,
  kChannel = 2,
  kNoiseOnly = 3,
};

// Stream for (seed, trial, lane):
//   key = mix64(mix64(mix64(seed) ^ trial) + lane)
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial, Lane lane) noexcept;

inline RngStream trial_stream(std::uint64_t seed, std::uint64_t trial, Lane lane) noexcept {
  return RngStream(stream_key(seed, trial, lane));
}

}  // namespace sensesim
