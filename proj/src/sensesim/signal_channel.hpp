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

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "sensesim/rng.hpp"

namespace sensesim {

// A length-N frame of real baseband samples. Non-empty and finite.
class SampleFrame {
 public:
  explicit SampleFrame(std::vector<double> samples);

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t k) const noexcept { return samples_[k]; }

  // Mean of y[k]^2 over the frame.
  double mean_power() const noexcept;

 private:
  std::vector<double> samples_;
};

// Random +/-sqrt(power) symbols, one per sample.
struct Bpsk {};

// sqrt(2*power) * cos(2*pi*cycles_per_frame*k/n), zero phase.
struct Sinusoid {
  double cycles_per_frame = 1.0;
};

// i.i.d. N(0, power) samples.
struct GaussianIid {};

struct SignalModel {
  std::variant<Bpsk, Sinusoid, GaussianIid> shape = Bpsk{};
  double power = 1.0;

  void validate() const;
};

enum class ChannelKind { kAwgn, kRayleighFlat };

struct ChannelModel {
  ChannelKind kind = ChannelKind::kAwgn;
  double noise_variance = 1.0;

  void validate() const;
};

// Envelope gain, constant over one frame.
struct FadingDraw {
  double gain = 1.0;
};

struct Reception {
  SampleFrame frame;
  FadingDraw fading;
};

// 10^(snr_db/10). Throws DomainError on non-finite input.
double snr_to_linear(double snr_db);

SampleFrame gen_primary(const SignalModel& model, std::size_t n, RngStream& rng);

// Awgn: gain 1, consumes no randomness. RayleighFlat: gain with density
// 2h exp(-h^2), drawn as sqrt(-ln U), so E[h^2] = 1.
FadingDraw draw_fading(const ChannelModel& channel, RngStream& rng);

// y[k] = h * sqrt(gamma * sigma^2) * x[k] + w[k], w ~ N(0, sigma^2).
// `x` is expected at unit mean power. The fading gain is drawn first, then
// the n noise samples, all from `rng`.
Reception transmit(const SampleFrame& x, const ChannelModel& channel, double snr_db,
                   RngStream& rng);

// H0 frame: y[k] = w[k].
SampleFrame noise_frame(const ChannelModel& channel, std::size_t n, RngStream& rng);

}  // namespace sensesim
