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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensesim/analytic.hpp"
#include "sensesim/detector.hpp"
#include "sensesim/metrics.hpp"
#include "sensesim/signal_channel.hpp"

namespace sensesim {

// One experiment: `trials` independent frames of `n_samples` samples.
// Without an SNR the scenario is noise-only (H0).
struct Scenario {
  SignalModel signal;
  ChannelModel channel;
  std::size_t n_samples = 10;
  std::optional<double> snr_db;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;

  bool noise_only() const noexcept { return !snr_db.has_value(); }
  void validate() const;
};

struct RunOptions {
  unsigned workers = 1;  // 0 = hardware concurrency
};

// Frame for trial `trial`. H1: unit-power signal from the signal lane, then
// transmit() on the channel lane. H0: noise from the noise-only lane. Frames
// depend only on (scenario, trial), never on scheduling.
SampleFrame simulate_frame(const Scenario& sc, std::uint64_t trial);

// Per-trial statistics, indexed [detector][trial]. Every detector sees the
// same frames.
std::vector<std::vector<double>> simulate_statistics(const Scenario& sc,
                                                     std::span<const DetectorSpec> specs,
                                                     const RunOptions& opts = {});
std::vector<double> simulate_statistics(const Scenario& sc, const DetectorSpec& spec,
                                        const RunOptions& opts = {});

struct RateEstimate {
  std::uint64_t events = 0;
  std::uint64_t trials = 0;
  double rate = 0.0;
  double stderr_rate = 0.0;
};

// pd from detections; pmd = 1 - pd.
struct DetectionEstimate {
  std::uint64_t detections = 0;
  std::uint64_t trials = 0;
  double pd = 0.0;
  double pmd = 1.0;
  double stderr_rate = 0.0;
};

RateEstimate estimate_pfa(const Scenario& h0, const DetectorSpec& spec, double threshold,
                          const RunOptions& opts = {});
DetectionEstimate estimate_pmd(const Scenario& h1, const DetectorSpec& spec, double threshold,
                               const RunOptions& opts = {});

// Analytic for the normalized squaring detector, empirical quantile otherwise.
CalibrationMethod default_method(const DetectorSpec& spec) noexcept;

// Analytic needs a normalized p = 2 detector and uses only h0.n_samples.
// EmpiricalQuantile simulates h0.trials noise-only frames.
CalibrationResult calibrate_threshold(const Scenario& h0, const DetectorSpec& spec,
                                      double target_pfa, CalibrationMethod method,
                                      const RunOptions& opts = {});

// Strictly decreasing thresholds. When built from P_FA targets the targets
// are kept, sorted ascending, one per threshold.
class ThresholdGrid {
 public:
  static ThresholdGrid from_values(std::vector<double> values);
  static ThresholdGrid from_targets(std::vector<double> values, std::vector<double> targets);

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& pfa_targets() const noexcept { return targets_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
  std::vector<double> targets_;
};

// 26 targets log-spaced from 0.001 to 0.9.
std::vector<double> default_pfa_targets();

ThresholdGrid grid_from_pfa_targets(const Scenario& h0, const DetectorSpec& spec,
                                    std::vector<double> targets, const RunOptions& opts = {});

// Statistics are computed once per hypothesis and reused for every
// threshold, so the empirical curve is exactly monotone.
RocCurve roc_sweep(const Scenario& h0, const Scenario& h1, const DetectorSpec& spec,
                   const ThresholdGrid& grid, const RunOptions& opts = {});

struct PmdTable {
  ThresholdGrid grid;
  std::vector<double> snr_db;
  DetectorSpec detector;
  std::uint64_t trials = 0;
  std::vector<std::vector<double>> pmd;         // [row][column]
  std::vector<std::vector<double>> stderr_pmd;  // [row][column]
};

// One column per H1 scenario, all with the same n_samples.
PmdTable pmd_table(std::span<const Scenario> columns, const DetectorSpec& spec,
                   const ThresholdGrid& grid, const RunOptions& opts = {});

struct ComparisonRow {
  double target_pfa;
  CalibrationResult baseline_calibration;
  CalibrationResult candidate_calibration;
  double pmd_baseline;
  double pmd_candidate;
  double delta;  // pmd_baseline - pmd_candidate; positive favours the candidate
  double stderr_delta;
};

struct ReferenceComparisonRow {
  std::size_t threshold_index;
  double snr_db;
  double pmd_conventional;
  double pmd_improved;
};

struct Comparison {
  DetectorSpec baseline;
  DetectorSpec candidate;
  std::uint64_t trials = 0;
  std::vector<ComparisonRow> rows;
  std::vector<ReferenceComparisonRow> reference;
  std::string measured_sign;
};

// Calibrates both detectors to each target P_FA on h0 and measures P_MD on
// the same h1 frames. stderr_delta combines the paired-difference error with
// the binomial error of any empirically calibrated threshold.
Comparison compare_detectors(const Scenario& h0, const Scenario& h1, const DetectorSpec& baseline,
                             const DetectorSpec& candidate, std::span<const double> pfa_targets,
                             const RunOptions& opts = {});

}  // namespace sensesim
