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

#include "sensesim/sensesim.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "sensesim/analytic.hpp"
#include "sensesim/detector.hpp"
#include "sensesim/error.hpp"
#include "sensesim/metrics.hpp"
#include "sensesim/montecarlo.hpp"
#include "sensesim/reference_tables.hpp"
#include "sensesim/signal_channel.hpp"

#ifndef SENSESIM_VERSION_STRING
#define SENSESIM_VERSION_STRING "0.0.0"
#endif

struct sensesim_scenario {
  sensesim::Scenario value;
};

struct sensesim_roc {
  sensesim::RocCurve value;
};

struct sensesim_pmd_table {
  sensesim::PmdTable value;
};

struct sensesim_comparison {
  sensesim::Comparison value;
};

namespace {

thread_local std::string last_error;

sensesim_status fail(sensesim_status status, const char* message) {
  last_error = message;
  return status;
}

// Maps exceptions escaping `body` onto status codes.
template <typename Body>
sensesim_status guarded(Body&& body) noexcept {
  try {
    body();
    last_error.clear();
    return SENSESIM_OK;
  } catch (const sensesim::DomainError& e) {
    return fail(SENSESIM_ERR_DOMAIN, e.what());
  } catch (const sensesim::UsageError& e) {
    return fail(SENSESIM_ERR_USAGE, e.what());
  } catch (const sensesim::ConfigError& e) {
    return fail(SENSESIM_ERR_CONFIG, e.what());
  } catch (const sensesim::NumericError& e) {
    return fail(SENSESIM_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SENSESIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SENSESIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SENSESIM_ERR_INTERNAL, "unknown error");
  }
}

template <typename... Ptrs>
bool any_null(const Ptrs*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

#define SENSESIM_REQUIRE(...)                                              \
  do {                                                                     \
    if (any_null(__VA_ARGS__)) {                                           \
      return fail(SENSESIM_ERR_NULL, "required pointer argument is NULL"); \
    }                                                                      \
  } while (0)

sensesim::DetectorSpec to_spec(sensesim_detector d) { return {d.p, d.normalized != 0}; }

sensesim::CalibrationMethod to_method(sensesim_calibration_method m) {
  switch (m) {
    case SENSESIM_CALIBRATE_ANALYTIC:
      return sensesim::CalibrationMethod::kAnalytic;
    case SENSESIM_CALIBRATE_EMPIRICAL_QUANTILE:
      return sensesim::CalibrationMethod::kEmpiricalQuantile;
  }
  throw sensesim::DomainError("unknown calibration method");
}

sensesim_calibration to_c(const sensesim::CalibrationResult& r) {
  return {r.threshold,
          r.achieved_pfa,
          r.stderr_pfa,
          r.tolerance,
          r.method == sensesim::CalibrationMethod::kAnalytic ? SENSESIM_CALIBRATE_ANALYTIC
                                                              : SENSESIM_CALIBRATE_EMPIRICAL_QUANTILE,
          r.mc_trials};
}

sensesim_rate_point to_c(const sensesim::RatePoint& r) {
  return {r.pfa(), r.pd(), r.pmd(), r.stderr_pfa(), r.stderr_pd()};
}

sensesim::RunOptions run_options(unsigned workers) { return sensesim::RunOptions{workers}; }

std::vector<double> copy_values(const double* values, size_t count) {
  return std::vector<double>(values, values + count);
}

}  // namespace

extern "C" {

const char* sensesim_version(void) { return SENSESIM_VERSION_STRING; }

const char* sensesim_last_error(void) { return last_error.c_str(); }

const char* sensesim_status_name(sensesim_status status) {
  switch (status) {
    case SENSESIM_OK: return "ok";
    case SENSESIM_ERR_DOMAIN: return "domain error";
    case SENSESIM_ERR_USAGE: return "usage error";
    case SENSESIM_ERR_CONFIG: return "config error";
    case SENSESIM_ERR_NUMERIC: return "numeric error";
    case SENSESIM_ERR_NULL: return "null argument";
    case SENSESIM_ERR_RANGE: return "index out of range";
    case SENSESIM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

sensesim_status sensesim_snr_to_linear(double snr_db, double* out) {
  SENSESIM_REQUIRE(out);
  return guarded([&] { *out = sensesim::snr_to_linear(snr_db); });
}

sensesim_status sensesim_chi2_sf(unsigned dof, double x, double* out) {
  SENSESIM_REQUIRE(out);
  return guarded([&] { *out = sensesim::chi2_sf(dof, x); });
}

sensesim_status sensesim_noncentral_chi2_sf(unsigned dof, double noncentrality, double x,
                                            double* out) {
  SENSESIM_REQUIRE(out);
  return guarded([&] { *out = sensesim::noncentral_chi2_sf(dof, noncentrality, x); });
}

sensesim_status sensesim_pfa_analytic(size_t n, double threshold, double* out) {
  SENSESIM_REQUIRE(out);
  return guarded([&] { *out = sensesim::pfa_analytic(n, threshold); });
}

sensesim_status sensesim_pd_awgn_analytic(size_t n, double snr_linear, double threshold,
                                          double* out) {
  SENSESIM_REQUIRE(out);
  return guarded([&] { *out = sensesim::pd_awgn_analytic(n, snr_linear, threshold); });
}

sensesim_status sensesim_pd_rayleigh_analytic(size_t n, double mean_snr_linear, double threshold,
                                              double* out) {
  SENSESIM_REQUIRE(out);
  return guarded([&] { *out = sensesim::pd_rayleigh_analytic(n, mean_snr_linear, threshold); });
}

sensesim_status sensesim_statistic(const double* samples, size_t n, sensesim_detector detector,
                                   double sigma, double* out) {
  SENSESIM_REQUIRE(samples, out);
  return guarded([&] {
    *out = sensesim::statistic(std::span(samples, n), to_spec(detector), sigma).value;
  });
}

sensesim_status sensesim_decide(double statistic, double threshold, int* is_h1) {
  SENSESIM_REQUIRE(is_h1);
  return guarded([&] {
    const auto d = sensesim::decide(sensesim::Statistic{statistic}, threshold);
    *is_h1 = d.hypothesis == sensesim::Hypothesis::kH1 ? 1 : 0;
  });
}

sensesim_status sensesim_rates_from_counts(uint64_t h0_trials, uint64_t false_alarms,
                                           uint64_t h1_trials, uint64_t detections,
                                           sensesim_rate_point* out) {
  SENSESIM_REQUIRE(out);
  return guarded([&] {
    *out = to_c(sensesim::rates_from_counts({h0_trials, false_alarms, h1_trials, detections}));
  });
}

sensesim_status sensesim_scenario_create(sensesim_scenario** out) {
  SENSESIM_REQUIRE(out);
  return guarded([&] { *out = new sensesim_scenario{}; });
}

void sensesim_scenario_destroy(sensesim_scenario* scenario) { delete scenario; }

sensesim_status sensesim_scenario_clone(const sensesim_scenario* scenario,
                                        sensesim_scenario** out) {
  SENSESIM_REQUIRE(scenario, out);
  return guarded([&] { *out = new sensesim_scenario{scenario->value}; });
}

sensesim_status sensesim_scenario_set_signal(sensesim_scenario* scenario,
                                             sensesim_signal_kind kind, double power,
                                             double cycles_per_frame) {
  SENSESIM_REQUIRE(scenario);
  return guarded([&] {
    sensesim::SignalModel model;
    model.power = power;
    switch (kind) {
      case SENSESIM_SIGNAL_BPSK:
        model.shape = sensesim::Bpsk{};
        break;
      case SENSESIM_SIGNAL_SINUSOID:
        model.shape = sensesim::Sinusoid{cycles_per_frame};
        break;
      case SENSESIM_SIGNAL_GAUSSIAN:
        model.shape = sensesim::GaussianIid{};
        break;
      default:
        throw sensesim::DomainError("unknown signal kind");
    }
    model.validate();
    scenario->value.signal = model;
  });
}

sensesim_status sensesim_scenario_set_channel(sensesim_scenario* scenario,
                                              sensesim_channel_kind kind, double noise_variance) {
  SENSESIM_REQUIRE(scenario);
  return guarded([&] {
    sensesim::ChannelModel channel;
    switch (kind) {
      case SENSESIM_CHANNEL_AWGN:
        channel.kind = sensesim::ChannelKind::kAwgn;
        break;
      case SENSESIM_CHANNEL_RAYLEIGH:
        channel.kind = sensesim::ChannelKind::kRayleighFlat;
        break;
      default:
        throw sensesim::DomainError("unknown channel kind");
    }
    channel.noise_variance = noise_variance;
    channel.validate();
    scenario->value.channel = channel;
  });
}

sensesim_status sensesim_scenario_set_samples(sensesim_scenario* scenario, size_t n) {
  SENSESIM_REQUIRE(scenario);
  if (n == 0) return fail(SENSESIM_ERR_DOMAIN, "n_samples must be >= 1");
  scenario->value.n_samples = n;
  return SENSESIM_OK;
}

sensesim_status sensesim_scenario_set_trials(sensesim_scenario* scenario, uint64_t trials) {
  SENSESIM_REQUIRE(scenario);
  if (trials == 0) return fail(SENSESIM_ERR_DOMAIN, "trials must be >= 1");
  scenario->value.trials = trials;
  return SENSESIM_OK;
}

sensesim_status sensesim_scenario_set_seed(sensesim_scenario* scenario, uint64_t seed) {
  SENSESIM_REQUIRE(scenario);
  scenario->value.seed = seed;
  return SENSESIM_OK;
}

sensesim_status sensesim_scenario_set_snr_db(sensesim_scenario* scenario, double snr_db) {
  SENSESIM_REQUIRE(scenario);
  return guarded([&] {
    sensesim::snr_to_linear(snr_db);  // rejects non-finite values
    scenario->value.snr_db = snr_db;
  });
}

sensesim_status sensesim_scenario_set_noise_only(sensesim_scenario* scenario) {
  SENSESIM_REQUIRE(scenario);
  scenario->value.snr_db.reset();
  return SENSESIM_OK;
}

sensesim_status sensesim_scenario_frame(const sensesim_scenario* scenario, uint64_t trial,
                                        double* out, size_t n) {
  SENSESIM_REQUIRE(scenario, out);
  if (n != scenario->value.n_samples) {
    return fail(SENSESIM_ERR_RANGE, "output length must equal the scenario's n_samples");
  }
  return guarded([&] {
    const auto frame = sensesim::simulate_frame(scenario->value, trial);
    std::copy(frame.samples().begin(), frame.samples().end(), out);
  });
}

sensesim_status sensesim_estimate_pfa(const sensesim_scenario* h0, sensesim_detector detector,
                                      double threshold, unsigned workers,
                                      sensesim_estimate* out) {
  SENSESIM_REQUIRE(h0, out);
  return guarded([&] {
    const auto est =
        sensesim::estimate_pfa(h0->value, to_spec(detector), threshold, run_options(workers));
    *out = {est.events, est.trials, est.rate, est.stderr_rate};
  });
}

sensesim_status sensesim_estimate_pmd(const sensesim_scenario* h1, sensesim_detector detector,
                                      double threshold, unsigned workers,
                                      sensesim_estimate* out) {
  SENSESIM_REQUIRE(h1, out);
  return guarded([&] {
    const auto est =
        sensesim::estimate_pmd(h1->value, to_spec(detector), threshold, run_options(workers));
    *out = {est.trials - est.detections, est.trials, est.pmd, est.stderr_rate};
  });
}

sensesim_status sensesim_calibrate(const sensesim_scenario* h0, sensesim_detector detector,
                                   double target_pfa, sensesim_calibration_method method,
                                   unsigned workers, sensesim_calibration* out) {
  SENSESIM_REQUIRE(h0, out);
  return guarded([&] {
    *out = to_c(sensesim::calibrate_threshold(h0->value, to_spec(detector), target_pfa,
                                              to_method(method), run_options(workers)));
  });
}

sensesim_calibration_method sensesim_default_method(sensesim_detector detector) {
  return sensesim::default_method(to_spec(detector)) == sensesim::CalibrationMethod::kAnalytic
             ? SENSESIM_CALIBRATE_ANALYTIC
             : SENSESIM_CALIBRATE_EMPIRICAL_QUANTILE;
}

sensesim_status sensesim_default_pfa_targets(double* out, size_t capacity, size_t* count) {
  SENSESIM_REQUIRE(count);
  const auto targets = sensesim::default_pfa_targets();
  *count = targets.size();
  if (out != nullptr) {
    if (capacity < targets.size()) {
      return fail(SENSESIM_ERR_RANGE, "output buffer too small for the default targets");
    }
    std::copy(targets.begin(), targets.end(), out);
  }
  return SENSESIM_OK;
}

sensesim_status sensesim_grid_from_pfa_targets(const sensesim_scenario* h0,
                                               sensesim_detector detector, double* targets,
                                               size_t count, unsigned workers,
                                               double* thresholds_out) {
  SENSESIM_REQUIRE(h0, targets, thresholds_out);
  return guarded([&] {
    const auto grid = sensesim::grid_from_pfa_targets(h0->value, to_spec(detector),
                                                      copy_values(targets, count),
                                                      run_options(workers));
    std::copy(grid.pfa_targets().begin(), grid.pfa_targets().end(), targets);
    std::copy(grid.values().begin(), grid.values().end(), thresholds_out);
  });
}

sensesim_status sensesim_roc_sweep(const sensesim_scenario* h0, const sensesim_scenario* h1,
                                   sensesim_detector detector, const double* thresholds,
                                   size_t count, unsigned workers, sensesim_roc** out) {
  SENSESIM_REQUIRE(h0, h1, thresholds, out);
  return guarded([&] {
    const auto grid = sensesim::ThresholdGrid::from_values(copy_values(thresholds, count));
    *out = new sensesim_roc{
        sensesim::roc_sweep(h0->value, h1->value, to_spec(detector), grid, run_options(workers))};
  });
}

sensesim_status sensesim_roc_analytic(size_t n, sensesim_channel_kind channel, double snr_linear,
                                      const double* thresholds, size_t count,
                                      sensesim_roc** out) {
  SENSESIM_REQUIRE(thresholds, out);
  return guarded([&] {
    const std::span values(thresholds, count);
    switch (channel) {
      case SENSESIM_CHANNEL_AWGN:
        *out = new sensesim_roc{sensesim::analytic_roc_awgn(n, snr_linear, values)};
        break;
      case SENSESIM_CHANNEL_RAYLEIGH:
        *out = new sensesim_roc{sensesim::analytic_roc_rayleigh(n, snr_linear, values)};
        break;
      default:
        throw sensesim::DomainError("unknown channel kind");
    }
  });
}

void sensesim_roc_destroy(sensesim_roc* roc) { delete roc; }

size_t sensesim_roc_size(const sensesim_roc* roc) { return roc ? roc->value.size() : 0; }

size_t sensesim_roc_warning_count(const sensesim_roc* roc) {
  return roc ? roc->value.warnings().size() : 0;
}

sensesim_status sensesim_roc_point(const sensesim_roc* roc, size_t index, double* threshold,
                                   sensesim_rate_point* rates) {
  SENSESIM_REQUIRE(roc, threshold, rates);
  if (index >= roc->value.size()) return fail(SENSESIM_ERR_RANGE, "ROC index out of range");
  const auto& entry = roc->value.points()[index];
  *threshold = entry.threshold;
  *rates = to_c(entry.rates);
  return SENSESIM_OK;
}

sensesim_status sensesim_roc_dominates(const sensesim_roc* a, const sensesim_roc* b,
                                       const double* pfa_grid, size_t count,
                                       sensesim_dominance_row* rows_out) {
  SENSESIM_REQUIRE(a, b, pfa_grid, rows_out);
  return guarded([&] {
    const auto rows = sensesim::roc_dominates(a->value, b->value, std::span(pfa_grid, count));
    for (size_t i = 0; i < rows.size(); ++i) {
      rows_out[i] = {rows[i].pfa, rows[i].pd_a, rows[i].pd_b, rows[i].delta, rows[i].stderr_delta};
    }
  });
}

sensesim_status sensesim_pmd_table_run(const sensesim_scenario* const* columns,
                                       size_t column_count, sensesim_detector detector,
                                       const double* thresholds, size_t row_count,
                                       unsigned workers, sensesim_pmd_table** out) {
  SENSESIM_REQUIRE(columns, thresholds, out);
  for (size_t c = 0; c < column_count; ++c) {
    SENSESIM_REQUIRE(columns[c]);
  }
  return guarded([&] {
    std::vector<sensesim::Scenario> cols;
    cols.reserve(column_count);
    for (size_t c = 0; c < column_count; ++c) cols.push_back(columns[c]->value);
    const auto grid = sensesim::ThresholdGrid::from_values(copy_values(thresholds, row_count));
    *out = new sensesim_pmd_table{
        sensesim::pmd_table(cols, to_spec(detector), grid, run_options(workers))};
  });
}

void sensesim_pmd_table_destroy(sensesim_pmd_table* table) { delete table; }

size_t sensesim_pmd_table_rows(const sensesim_pmd_table* table) {
  return table ? table->value.grid.size() : 0;
}

size_t sensesim_pmd_table_columns(const sensesim_pmd_table* table) {
  return table ? table->value.snr_db.size() : 0;
}

sensesim_status sensesim_pmd_table_cell(const sensesim_pmd_table* table, size_t row,
                                        size_t column, double* pmd, double* stderr_pmd) {
  SENSESIM_REQUIRE(table, pmd, stderr_pmd);
  if (row >= table->value.grid.size() || column >= table->value.snr_db.size()) {
    return fail(SENSESIM_ERR_RANGE, "pmd table index out of range");
  }
  *pmd = table->value.pmd[row][column];
  *stderr_pmd = table->value.stderr_pmd[row][column];
  return SENSESIM_OK;
}

sensesim_status sensesim_pmd_table_threshold(const sensesim_pmd_table* table, size_t row,
                                             double* threshold) {
  SENSESIM_REQUIRE(table, threshold);
  if (row >= table->value.grid.size()) return fail(SENSESIM_ERR_RANGE, "row out of range");
  *threshold = table->value.grid.values()[row];
  return SENSESIM_OK;
}

sensesim_status sensesim_pmd_table_snr_db(const sensesim_pmd_table* table, size_t column,
                                          double* snr_db) {
  SENSESIM_REQUIRE(table, snr_db);
  if (column >= table->value.snr_db.size()) return fail(SENSESIM_ERR_RANGE, "column out of range");
  *snr_db = table->value.snr_db[column];
  return SENSESIM_OK;
}

size_t sensesim_reference_rows(void) { return sensesim::ReferencePmdTable::kRows; }

size_t sensesim_reference_columns(void) { return sensesim::ReferencePmdTable::kCols; }

sensesim_status sensesim_reference_pmd(int improved, size_t row, size_t column, double* pmd) {
  SENSESIM_REQUIRE(pmd);
  if (row >= sensesim::ReferencePmdTable::kRows || column >= sensesim::ReferencePmdTable::kCols) {
    return fail(SENSESIM_ERR_RANGE, "reference table index out of range");
  }
  const auto& table = improved ? sensesim::reference_pmd_improved()
                               : sensesim::reference_pmd_conventional();
  *pmd = table.pmd[row][column];
  return SENSESIM_OK;
}

sensesim_status sensesim_reference_snr_db(size_t column, double* snr_db) {
  SENSESIM_REQUIRE(snr_db);
  if (column >= sensesim::ReferencePmdTable::kCols) {
    return fail(SENSESIM_ERR_RANGE, "reference column out of range");
  }
  *snr_db = sensesim::reference_pmd_conventional().snr_db[column];
  return SENSESIM_OK;
}

sensesim_status sensesim_compare(const sensesim_scenario* h0, const sensesim_scenario* h1,
                                 sensesim_detector baseline, sensesim_detector candidate,
                                 const double* pfa_targets, size_t count, unsigned workers,
                                 sensesim_comparison** out) {
  SENSESIM_REQUIRE(h0, h1, pfa_targets, out);
  return guarded([&] {
    *out = new sensesim_comparison{sensesim::compare_detectors(
        h0->value, h1->value, to_spec(baseline), to_spec(candidate),
        std::span(pfa_targets, count), run_options(workers))};
  });
}

void sensesim_comparison_destroy(sensesim_comparison* comparison) { delete comparison; }

size_t sensesim_comparison_size(const sensesim_comparison* comparison) {
  return comparison ? comparison->value.rows.size() : 0;
}

sensesim_status sensesim_comparison_get(const sensesim_comparison* comparison, size_t index,
                                        sensesim_comparison_row* out) {
  SENSESIM_REQUIRE(comparison, out);
  if (index >= comparison->value.rows.size()) {
    return fail(SENSESIM_ERR_RANGE, "comparison index out of range");
  }
  const auto& r = comparison->value.rows[index];
  *out = {r.target_pfa,   to_c(r.baseline_calibration), to_c(r.candidate_calibration),
          r.pmd_baseline, r.pmd_candidate,              r.delta,
          r.stderr_delta};
  return SENSESIM_OK;
}

const char* sensesim_comparison_sign(const sensesim_comparison* comparison) {
  return comparison ? comparison->value.measured_sign.c_str() : "";
}

}  // extern "C"
