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

#include "sensesim/signal_channel.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "sensesim/error.hpp"

namespace sensesim {

SampleFrame::SampleFrame(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw DomainError("sample frame must hold at least one sample");
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) {
      throw DomainError("sample frame contains a non-finite sample");
    }
  }
}

double SampleFrame::mean_power() const noexcept {
  const double energy =
      std::transform_reduce(samples_.begin(), samples_.end(), 0.0, std::plus<>{},
                            [](double v) { return v * v; });
  return energy / static_cast<double>(samples_.size());
}

void SignalModel::validate() const {
  if (!(power > 0.0) || !std::isfinite(power)) {
    throw DomainError("signal power must be positive and finite");
  }
  if (const auto* sine = std::get_if<Sinusoid>(&shape)) {
    if (!(sine->cycles_per_frame > 0.0) || !std::isfinite(sine->cycles_per_frame)) {
      throw DomainError("sinusoid cycles_per_frame must be positive and finite");
    }
  }
}

void ChannelModel::validate() const {
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw DomainError("noise variance must be positive and finite");
  }
}

double snr_to_linear(double snr_db) {
  if (!std::isfinite(snr_db)) {
    throw DomainError("snr_db must be finite");
  }
  return std::pow(10.0, snr_db / 10.0);
}

SampleFrame gen_primary(const SignalModel& model, std::size_t n, RngStream& rng) {
  model.validate();
  if (n == 0) {
    throw DomainError("frame length must be at least 1");
  }
  std::vector<double> x(n);
  const double amplitude = std::sqrt(model.power);
  std::visit(
      [&](const auto& shape) {
        using Shape = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<Shape, Bpsk>) {
          for (auto& v : x) {
            v = (rng.next_u64() >> 63) ? -amplitude : amplitude;
          }
        } else if constexpr (std::is_same_v<Shape, Sinusoid>) {
          const double peak = std::sqrt(2.0) * amplitude;
          const double step =
              2.0 * std::numbers::pi * shape.cycles_per_frame / static_cast<double>(n);
          for (std::size_t k = 0; k < n; ++k) {
            x[k] = peak * std::cos(step * static_cast<double>(k));
          }
        } else {
          for (auto& v : x) {
            v = amplitude * rng.gaussian();
          }
        }
      },
      model.shape);
  return SampleFrame(std::move(x));
}

FadingDraw draw_fading(const ChannelModel& channel, RngStream& rng) {
  if (channel.kind == ChannelKind::kAwgn) {
    return FadingDraw{1.0};
  }
  return FadingDraw{std::sqrt(-std::log(rng.uniform_positive()))};
}

Reception transmit(const SampleFrame& x, const ChannelModel& channel, double snr_db,
                   RngStream& rng) {
  channel.validate();
  const double gamma = snr_to_linear(snr_db);
  const FadingDraw fading = draw_fading(channel, rng);
  const double sigma = std::sqrt(channel.noise_variance);
  const double scale = fading.gain * std::sqrt(gamma * channel.noise_variance);
  std::vector<double> y(x.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    y[k] = scale * x[k] + sigma * rng.gaussian();
  }
  return Reception{SampleFrame(std::move(y)), fading};
}

SampleFrame noise_frame(const ChannelModel& channel, std::size_t n, RngStream& rng) {
  channel.validate();
  if (n == 0) {
    throw DomainError("frame length must be at least 1");
  }
  const double sigma = std::sqrt(channel.noise_variance);
  std::vector<double> y(n);
  for (auto& v : y) {
    v = sigma * rng.gaussian();
  }
  return SampleFrame(std::move(y));
}

}  // namespace sensesim
