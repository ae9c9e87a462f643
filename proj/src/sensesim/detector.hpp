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

#include <span>

#include "sensesim/signal_channel.hpp"

namespace sensesim {

// The p-th-power detector family. p = 2 is the energy detector; p = 3 is the
// cubing detector.
//
// The statistic always uses |y[k]|^p. For odd p the signed power of zero-mean
// samples sums to roughly zero under both hypotheses and carries no
// information, so the magnitude is taken.
struct DetectorSpec {
  int p = 2;
  bool normalized = true;  // divide by sigma^p

  void validate() const;

  static constexpr DetectorSpec squaring() noexcept { return {2, true}; }
  static constexpr DetectorSpec cubing() noexcept { return {3, true}; }

  friend bool operator==(const DetectorSpec&, const DetectorSpec&) = default;
};

struct Statistic {
  double value = 0.0;
};

enum class Hypothesis { kH0, kH1 };

struct Decision {
  Hypothesis hypothesis = Hypothesis::kH0;
  double threshold = 0.0;
};

// T = sum_k |y[k]|^p, divided by sigma^p when spec.normalized.
Statistic statistic(std::span<const double> y, const DetectorSpec& spec, double sigma = 1.0);

inline Statistic statistic(const SampleFrame& y, const DetectorSpec& spec, double sigma = 1.0) {
  return statistic(y.samples(), spec, sigma);
}

// H1 iff T >= threshold. Ties go to H1.
Decision decide(Statistic t, double threshold);

}  // namespace sensesim
