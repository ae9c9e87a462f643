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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sensesim {

struct ConfusionCounts {
  std::uint64_t h0_trials = 0;
  std::uint64_t false_alarms = 0;
  std::uint64_t h1_trials = 0;
  std::uint64_t detections = 0;
};

// Binomial standard error sqrt(r(1-r)/trials).
double binomial_stderr(double rate, std::uint64_t trials);

// (P_FA, P_D, P_MD) with per-point standard errors. P_MD is always derived
// from P_D as 1 - P_D, so pd() + pmd() == 1 holds exactly in floating point.
class RatePoint {
 public:
  RatePoint(double pfa, double pd, double stderr_pfa = 0.0, double stderr_pd = 0.0);

  double pfa() const noexcept { return pfa_; }
  double pd() const noexcept { return pd_; }
  double pmd() const noexcept { return pmd_; }
  double stderr_pfa() const noexcept { return stderr_pfa_; }
  double stderr_pd() const noexcept { return stderr_pd_; }

 private:
  double pfa_;
  double pd_;
  double pmd_;
  double stderr_pfa_;
  double stderr_pd_;
};

RatePoint rates_from_counts(const ConfusionCounts& counts);

enum class CurveKind { kEmpirical, kAnalytic };

struct RocEntry {
  double threshold;
  RatePoint rates;
};

// Points ordered by strictly decreasing threshold, i.e. increasing P_FA.
class RocCurve {
 public:
  const std::vector<RocEntry>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  CurveKind kind() const noexcept { return kind_; }

  // Monotonicity violations larger than 3 stderr on empirical curves. They do
  // not invalidate the curve.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  friend RocCurve roc_assemble(std::vector<RocEntry> points, CurveKind kind);
  std::vector<RocEntry> points_;
  CurveKind kind_ = CurveKind::kEmpirical;
  std::vector<std::string> warnings_;
};

// Sorts by decreasing threshold and checks that pfa and pd are
// non-decreasing along the curve. Duplicate or invalid thresholds and, for
// analytic curves, any violation beyond 1e-12 throw DomainError.
RocCurve roc_assemble(std::vector<RocEntry> points, CurveKind kind);

struct DominanceRow {
  double pfa;
  double pd_a;
  double pd_b;
  double delta;  // pd_a - pd_b
  double stderr_delta;
};

// pd of each curve linearly interpolated in (pfa, pd) at every grid pfa.
// Grid points outside either curve's pfa range throw DomainError.
std::vector<DominanceRow> roc_dominates(const RocCurve& a, const RocCurve& b,
                                        std::span<const double> pfa_grid);

}  // namespace sensesim
