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

#include "sensesim/detector.hpp"

#include <cmath>

#include "sensesim/error.hpp"

namespace sensesim {

namespace {

double magnitude_power(double v, int p) noexcept {
  const double a = std::fabs(v);
  switch (p) {
    case 1:
      return a;
    case 2:
      return a * a;
    case 3:
      return a * a * a;
    default:
      return std::pow(a, p);
  }
}

}  // namespace

void DetectorSpec::validate() const {
  if (p < 1) {
    throw DomainError("detector exponent p must be >= 1");
  }
}

Statistic statistic(std::span<const double> y, const DetectorSpec& spec, double sigma) {
  spec.validate();
  if (spec.normalized && (!(sigma > 0.0) || !std::isfinite(sigma))) {
    throw DomainError("normalized statistic needs a positive finite sigma");
  }
  const double inv_sigma = spec.normalized ? 1.0 / sigma : 1.0;
  double sum = 0.0;
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw DomainError("statistic input contains a non-finite sample");
    }
    sum += magnitude_power(spec.normalized ? v * inv_sigma : v, spec.p);
  }
  return Statistic{sum};
}

Decision decide(Statistic t, double threshold) {
  if (!(threshold >= 0.0)) {
    throw DomainError("threshold must be non-negative");
  }
  return Decision{t.value >= threshold ? Hypothesis::kH1 : Hypothesis::kH0, threshold};
}

}  // namespace sensesim
