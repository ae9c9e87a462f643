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

#include "sensesim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "sensesim/error.hpp"
#include "sensesim/reference_tables.hpp"

namespace sensesim {

namespace {

unsigned resolve_workers(unsigned requested, std::uint64_t trials) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(w, trials));
}

// Runs body(begin, end) over contiguous trial blocks.
template <typename Body>
void for_trial_blocks(std::uint64_t trials, unsigned workers, Body&& body) {
  const unsigned w = resolve_workers(workers, trials);
  if (w <= 1) {
    body(std::uint64_t{0}, trials);
    return;
  }
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(w);
  pool.reserve(w);
  const std::uint64_t chunk = (trials + w - 1) / w;
  for (unsigned i = 0; i < w; ++i) {
    const std::uint64_t begin = std::min<std::uint64_t>(trials, i * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
    pool.emplace_back([&, i, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_threshold(double threshold) {
  if (!(threshold >= 0.0) || std::isnan(threshold)) {
    throw DomainError("threshold must be non-negative");
  }
}

// Number of statistics >= threshold in an ascending-sorted vector.
std::uint64_t count_at_or_above(const std::vector<double>& sorted, double threshold) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), threshold);
  return static_cast<std::uint64_t>(sorted.end() - it);
}

std::uint64_t count_at_or_above_unsorted(const std::vector<double>& stats, double threshold) {
  return static_cast<std::uint64_t>(
      std::count_if(stats.begin(), stats.end(), [&](double t) { return t >= threshold; }));
}

DetectionEstimate detection_from_counts(std::uint64_t detections, std::uint64_t trials) {
  DetectionEstimate est;
  est.detections = detections;
  est.trials = trials;
  est.pd = static_cast<double>(detections) / static_cast<double>(trials);
  est.pmd = 1.0 - est.pd;
  est.stderr_rate = binomial_stderr(est.pd, trials);
  return est;
}

void require_h0(const Scenario& sc, const char* what) {
  sc.validate();
  if (!sc.noise_only()) {
    throw UsageError(std::string(what) + " needs a noise-only (H0) scenario");
  }
}

void require_h1(const Scenario& sc, const char* what) {
  sc.validate();
  if (sc.noise_only()) {
    throw UsageError(std::string(what) + " needs a signal-present (H1) scenario");
  }
}

std::string sign_summary(const std::vector<ComparisonRow>& rows) {
  std::size_t lower = 0;
  std::size_t higher = 0;
  for (const auto& r : rows) {
    if (r.delta > 3.0 * r.stderr_delta) {
      ++lower;
    } else if (r.delta < -3.0 * r.stderr_delta) {
      ++higher;
    }
  }
  std::ostringstream out;
  out << "candidate pmd lower at " << lower << " of " << rows.size()
      << " targets, higher at " << higher << ", no significant difference (3 sigma) at "
      << rows.size() - lower - higher;
  return out.str();
}

}  // namespace

void Scenario::validate() const {
  if (n_samples == 0) {
    throw DomainError("scenario needs n_samples >= 1");
  }
  if (trials == 0) {
    throw DomainError("scenario needs trials >= 1");
  }
  if (snr_db && !std::isfinite(*snr_db)) {
    throw DomainError("scenario snr_db must be finite");
  }
  signal.validate();
  channel.validate();
}

SampleFrame simulate_frame(const Scenario& sc, std::uint64_t trial) {
  if (sc.noise_only()) {
    RngStream noise = trial_stream(sc.seed, trial, Lane::kNoiseOnly);
    return noise_frame(sc.channel, sc.n_samples, noise);
  }
  RngStream symbols = trial_stream(sc.seed, trial, Lane::kSignal);
  RngStream channel = trial_stream(sc.seed, trial, Lane::kChannel);
  const SignalModel unit{sc.signal.shape, 1.0};
  const SampleFrame x = gen_primary(unit, sc.n_samples, symbols);
  return transmit(x, sc.channel, *sc.snr_db, channel).frame;
}

std::vector<std::vector<double>> simulate_statistics(const Scenario& sc,
                                                     std::span<const DetectorSpec> specs,
                                                     const RunOptions& opts) {
  sc.validate();
  for (const auto& spec : specs) spec.validate();
  const double sigma = std::sqrt(sc.channel.noise_variance);
  std::vector<std::vector<double>> stats(specs.size(), std::vector<double>(sc.trials));
  for_trial_blocks(sc.trials, opts.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      const SampleFrame y = simulate_frame(sc, t);
      for (std::size_t d = 0; d < specs.size(); ++d) {
        stats[d][t] = statistic(y, specs[d], sigma).value;
      }
    }
  });
  return stats;
}

std::vector<double> simulate_statistics(const Scenario& sc, const DetectorSpec& spec,
                                        const RunOptions& opts) {
  return std::move(simulate_statistics(sc, std::span(&spec, 1), opts).front());
}

RateEstimate estimate_pfa(const Scenario& h0, const DetectorSpec& spec, double threshold,
                          const RunOptions& opts) {
  require_h0(h0, "estimate_pfa");
  check_threshold(threshold);
  const auto stats = simulate_statistics(h0, spec, opts);
  RateEstimate est;
  est.events = count_at_or_above_unsorted(stats, threshold);
  est.trials = h0.trials;
  est.rate = static_cast<double>(est.events) / static_cast<double>(est.trials);
  est.stderr_rate = binomial_stderr(est.rate, est.trials);
  return est;
}

DetectionEstimate estimate_pmd(const Scenario& h1, const DetectorSpec& spec, double threshold,
                               const RunOptions& opts) {
  require_h1(h1, "estimate_pmd");
  check_threshold(threshold);
  const auto stats = simulate_statistics(h1, spec, opts);
  return detection_from_counts(count_at_or_above_unsorted(stats, threshold), h1.trials);
}

CalibrationMethod default_method(const DetectorSpec& spec) noexcept {
  return spec.p == 2 && spec.normalized ? CalibrationMethod::kAnalytic
                                        : CalibrationMethod::kEmpiricalQuantile;
}

CalibrationResult calibrate_threshold(const Scenario& h0, const DetectorSpec& spec,
                                      double target_pfa, CalibrationMethod method,
                                      const RunOptions& opts) {
  spec.validate();
  if (method == CalibrationMethod::kAnalytic) {
    if (spec.p != 2 || !spec.normalized) {
      throw ConfigError("analytic calibration exists only for the normalized p = 2 detector");
    }
    return calibrate_analytic(h0.n_samples, target_pfa);
  }
  require_h0(h0, "empirical calibration");
  if (!(target_pfa > 0.0 && target_pfa < 1.0)) {
    throw DomainError("target pfa must lie in the open interval (0, 1)");
  }
  if (h0.trials < kMinQuantileTrials) {
    throw ConfigError("empirical quantile calibration needs at least 100000 H0 trials");
  }
  return calibrate_quantile(simulate_statistics(h0, spec, opts), target_pfa);
}

ThresholdGrid ThresholdGrid::from_values(std::vector<double> values) {
  if (values.empty()) {
    throw DomainError("threshold grid must not be empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    check_threshold(values[i]);
    if (!std::isfinite(values[i])) {
      throw DomainError("threshold grid values must be finite");
    }
    if (i > 0 && !(values[i] < values[i - 1])) {
      throw DomainError("threshold grid must be strictly decreasing");
    }
  }
  ThresholdGrid grid;
  grid.values_ = std::move(values);
  return grid;
}

ThresholdGrid ThresholdGrid::from_targets(std::vector<double> values,
                                          std::vector<double> targets) {
  if (targets.size() != values.size()) {
    throw DomainError("one pfa target per threshold");
  }
  ThresholdGrid grid = from_values(std::move(values));
  grid.targets_ = std::move(targets);
  return grid;
}

std::vector<double> default_pfa_targets() {
  constexpr int kCount = 26;
  constexpr double kLo = 0.001;
  constexpr double kHi = 0.9;
  std::vector<double> targets(kCount);
  const double step = std::log(kHi / kLo) / (kCount - 1);
  for (int i = 0; i < kCount; ++i) {
    targets[i] = kLo * std::exp(step * i);
  }
  targets.back() = kHi;
  return targets;
}

ThresholdGrid grid_from_pfa_targets(const Scenario& h0, const DetectorSpec& spec,
                                    std::vector<double> targets, const RunOptions& opts) {
  if (targets.empty()) {
    throw DomainError("need at least one pfa target");
  }
  std::sort(targets.begin(), targets.end());
  if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) {
    throw DomainError("duplicate pfa target");
  }
  std::vector<double> values;
  values.reserve(targets.size());
  if (default_method(spec) == CalibrationMethod::kAnalytic) {
    for (double t : targets) values.push_back(calibrate_analytic(h0.n_samples, t).threshold);
  } else {
    require_h0(h0, "empirical calibration");
    const auto stats = simulate_statistics(h0, spec, opts);
    for (double t : targets) values.push_back(calibrate_quantile(stats, t).threshold);
  }
  return ThresholdGrid::from_targets(std::move(values), std::move(targets));
}

RocCurve roc_sweep(const Scenario& h0, const Scenario& h1, const DetectorSpec& spec,
                   const ThresholdGrid& grid, const RunOptions& opts) {
  require_h0(h0, "roc_sweep");
  require_h1(h1, "roc_sweep");
  if (h0.n_samples != h1.n_samples || h0.channel.kind != h1.channel.kind) {
    throw UsageError("roc_sweep scenarios must share n_samples and channel kind");
  }
  auto stats0 = simulate_statistics(h0, spec, opts);
  auto stats1 = simulate_statistics(h1, spec, opts);
  std::sort(stats0.begin(), stats0.end());
  std::sort(stats1.begin(), stats1.end());

  std::vector<RocEntry> points;
  points.reserve(grid.size());
  for (double threshold : grid.values()) {
    const ConfusionCounts counts{h0.trials, count_at_or_above(stats0, threshold), h1.trials,
                                 count_at_or_above(stats1, threshold)};
    points.push_back({threshold, rates_from_counts(counts)});
  }
  return roc_assemble(std::move(points), CurveKind::kEmpirical);
}

PmdTable pmd_table(std::span<const Scenario> columns, const DetectorSpec& spec,
                   const ThresholdGrid& grid, const RunOptions& opts) {
  if (columns.empty()) {
    throw DomainError("pmd table needs at least one SNR column");
  }
  for (const auto& col : columns) {
    require_h1(col, "pmd_table");
    if (col.n_samples != columns.front().n_samples) {
      throw UsageError("pmd table columns must share n_samples");
    }
  }
  PmdTable table{grid, {}, spec, columns.front().trials, {}, {}};
  table.pmd.assign(grid.size(), std::vector<double>(columns.size()));
  table.stderr_pmd.assign(grid.size(), std::vector<double>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    table.snr_db.push_back(*columns[c].snr_db);
    auto stats = simulate_statistics(columns[c], spec, opts);
    std::sort(stats.begin(), stats.end());
    for (std::size_t r = 0; r < grid.size(); ++r) {
      const auto est =
          detection_from_counts(count_at_or_above(stats, grid.values()[r]), columns[c].trials);
      table.pmd[r][c] = est.pmd;
      table.stderr_pmd[r][c] = est.stderr_rate;
    }
  }
  return table;
}

Comparison compare_detectors(const Scenario& h0, const Scenario& h1, const DetectorSpec& baseline,
                             const DetectorSpec& candidate, std::span<const double> pfa_targets,
                             const RunOptions& opts) {
  require_h0(h0, "compare_detectors");
  require_h1(h1, "compare_detectors");
  if (h0.n_samples != h1.n_samples) {
    throw UsageError("compare_detectors scenarios must share n_samples");
  }
  for (double t : pfa_targets) {
    if (!(t > 0.0 && t < 1.0)) {
      throw DomainError("pfa targets must lie in the open interval (0, 1)");
    }
  }

  const std::array<DetectorSpec, 2> specs{baseline, candidate};
  const std::array<CalibrationMethod, 2> methods{default_method(baseline),
                                                 default_method(candidate)};
  std::array<std::vector<double>, 2> h0_stats;
  if (methods[0] == CalibrationMethod::kEmpiricalQuantile ||
      methods[1] == CalibrationMethod::kEmpiricalQuantile) {
    auto both = simulate_statistics(h0, specs, opts);
    h0_stats = {std::move(both[0]), std::move(both[1])};
  }
  const auto h1_stats = simulate_statistics(h1, specs, opts);

  Comparison report;
  report.baseline = baseline;
  report.candidate = candidate;
  report.trials = h1.trials;
  const double m = static_cast<double>(h1.trials);
  for (double target : pfa_targets) {
    std::array<CalibrationResult, 2> cal;
    for (std::size_t d = 0; d < 2; ++d) {
      cal[d] = methods[d] == CalibrationMethod::kAnalytic
                   ? calibrate_analytic(h0.n_samples, target)
                   : calibrate_quantile(h0_stats[d], target);
    }
    std::uint64_t miss_b = 0;
    std::uint64_t miss_c = 0;
    std::uint64_t disagree = 0;  // sum of d_i^2, d_i = miss_b_i - miss_c_i
    for (std::uint64_t t = 0; t < h1.trials; ++t) {
      const bool mb = h1_stats[0][t] < cal[0].threshold;
      const bool mc = h1_stats[1][t] < cal[1].threshold;
      miss_b += mb;
      miss_c += mc;
      disagree += (mb != mc);
    }
    ComparisonRow row{};
    row.target_pfa = target;
    row.baseline_calibration = cal[0];
    row.candidate_calibration = cal[1];
    row.pmd_baseline = static_cast<double>(miss_b) / m;
    row.pmd_candidate = static_cast<double>(miss_c) / m;
    const auto diff = static_cast<double>(static_cast<std::int64_t>(miss_b) -
                                          static_cast<std::int64_t>(miss_c));
    row.delta = diff / m;
    double variance = std::max(0.0, static_cast<double>(disagree) / m - row.delta * row.delta) / m;
    for (const auto& c : cal) {
      if (c.method == CalibrationMethod::kEmpiricalQuantile) {
        variance += c.stderr_pfa * c.stderr_pfa;
      }
    }
    // Identical detectors calibrate identically: no calibration noise.
    if (baseline == candidate) {
      variance = std::max(0.0, static_cast<double>(disagree) / m - row.delta * row.delta) / m;
    }
    row.stderr_delta = std::sqrt(variance);
    report.rows.push_back(row);
  }

  const auto& conv = reference_pmd_conventional();
  const auto& impr = reference_pmd_improved();
  for (std::size_t c = 0; c < ReferencePmdTable::kCols; ++c) {
    report.reference.push_back({1, conv.snr_db[c], conv.pmd[0][c], impr.pmd[0][c]});
  }
  report.measured_sign = sign_summary(report.rows);
  return report;
}

}  // namespace sensesim
