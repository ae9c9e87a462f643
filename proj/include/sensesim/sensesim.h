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

/*
 * sensesim C API.
 *
 * Every function returns a sensesim_status. On failure the message of the
 * most recent error on the calling thread is available from
 * sensesim_last_error(). Objects are opaque handles owned by the caller and
 * released with the matching *_destroy function; destroy functions accept
 * NULL.
 */
#ifndef SENSESIM_SENSESIM_H
#define SENSESIM_SENSESIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SENSESIM_BUILDING)
#    define SENSESIM_API __declspec(dllexport)
#  else
#    define SENSESIM_API __declspec(dllimport)
#  endif
#else
#  define SENSESIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sensesim_status {
  SENSESIM_OK = 0,
  SENSESIM_ERR_DOMAIN = 1,   /* argument outside its valid range */
  SENSESIM_ERR_USAGE = 2,    /* wrong scenario kind for the operation */
  SENSESIM_ERR_CONFIG = 3,   /* configuration cannot produce the result */
  SENSESIM_ERR_NUMERIC = 4,  /* series or quadrature failure */
  SENSESIM_ERR_NULL = 5,     /* required pointer argument was NULL */
  SENSESIM_ERR_RANGE = 6,    /* index out of range */
  SENSESIM_ERR_INTERNAL = 7
} sensesim_status;

typedef enum sensesim_signal_kind {
  SENSESIM_SIGNAL_BPSK = 0,
  SENSESIM_SIGNAL_SINUSOID = 1,
  SENSESIM_SIGNAL_GAUSSIAN = 2
} sensesim_signal_kind;

typedef enum sensesim_channel_kind {
  SENSESIM_CHANNEL_AWGN = 0,
  SENSESIM_CHANNEL_RAYLEIGH = 1
} sensesim_channel_kind;

typedef enum sensesim_calibration_method {
  SENSESIM_CALIBRATE_ANALYTIC = 0,
  SENSESIM_CALIBRATE_EMPIRICAL_QUANTILE = 1
} sensesim_calibration_method;

typedef struct sensesim_detector {
  int p;          /* 2 = squaring, 3 = cubing */
  int normalized; /* nonzero: divide the statistic by sigma^p */
} sensesim_detector;

typedef struct sensesim_rate_point {
  double pfa;
  double pd;
  double pmd; /* always 1 - pd */
  double stderr_pfa;
  double stderr_pd;
} sensesim_rate_point;

typedef struct sensesim_estimate {
  uint64_t events;
  uint64_t trials;
  double rate;
  double stderr_rate;
} sensesim_estimate;

typedef struct sensesim_calibration {
  double threshold;
  double achieved_pfa;
  double stderr_pfa;
  double tolerance;
  sensesim_calibration_method method;
  uint64_t mc_trials;
} sensesim_calibration;

typedef struct sensesim_dominance_row {
  double pfa;
  double pd_a;
  double pd_b;
  double delta;
  double stderr_delta;
} sensesim_dominance_row;

typedef struct sensesim_comparison_row {
  double target_pfa;
  sensesim_calibration baseline_calibration;
  sensesim_calibration candidate_calibration;
  double pmd_baseline;
  double pmd_candidate;
  double delta;
  double stderr_delta;
} sensesim_comparison_row;

typedef struct sensesim_scenario sensesim_scenario;
typedef struct sensesim_roc sensesim_roc;
typedef struct sensesim_pmd_table sensesim_pmd_table;
typedef struct sensesim_comparison sensesim_comparison;

SENSESIM_API const char* sensesim_version(void);
SENSESIM_API const char* sensesim_last_error(void);
SENSESIM_API const char* sensesim_status_name(sensesim_status status);

/* ---- numerics -------------------------------------------------------- */

SENSESIM_API sensesim_status sensesim_snr_to_linear(double snr_db, double* out);
SENSESIM_API sensesim_status sensesim_chi2_sf(unsigned dof, double x, double* out);
SENSESIM_API sensesim_status sensesim_noncentral_chi2_sf(unsigned dof, double noncentrality,
                                                         double x, double* out);
SENSESIM_API sensesim_status sensesim_pfa_analytic(size_t n, double threshold, double* out);
SENSESIM_API sensesim_status sensesim_pd_awgn_analytic(size_t n, double snr_linear,
                                                       double threshold, double* out);
SENSESIM_API sensesim_status sensesim_pd_rayleigh_analytic(size_t n, double mean_snr_linear,
                                                           double threshold, double* out);

/* ---- detector -------------------------------------------------------- */

SENSESIM_API sensesim_status sensesim_statistic(const double* samples, size_t n,
                                                sensesim_detector detector, double sigma,
                                                double* out);
/* *is_h1 = (statistic >= threshold) */
SENSESIM_API sensesim_status sensesim_decide(double statistic, double threshold, int* is_h1);

SENSESIM_API sensesim_status sensesim_rates_from_counts(uint64_t h0_trials, uint64_t false_alarms,
                                                        uint64_t h1_trials, uint64_t detections,
                                                        sensesim_rate_point* out);

/* ---- scenario ---------------------------------------------------------
 * Defaults: BPSK unit power, AWGN with unit noise variance, 10 samples,
 * noise-only, 100000 trials, seed 0. */

SENSESIM_API sensesim_status sensesim_scenario_create(sensesim_scenario** out);
SENSESIM_API void sensesim_scenario_destroy(sensesim_scenario* scenario);
SENSESIM_API sensesim_status sensesim_scenario_clone(const sensesim_scenario* scenario,
                                                     sensesim_scenario** out);
SENSESIM_API sensesim_status sensesim_scenario_set_signal(sensesim_scenario* scenario,
                                                          sensesim_signal_kind kind, double power,
                                                          double cycles_per_frame);
SENSESIM_API sensesim_status sensesim_scenario_set_channel(sensesim_scenario* scenario,
                                                           sensesim_channel_kind kind,
                                                           double noise_variance);
SENSESIM_API sensesim_status sensesim_scenario_set_samples(sensesim_scenario* scenario, size_t n);
SENSESIM_API sensesim_status sensesim_scenario_set_trials(sensesim_scenario* scenario,
                                                          uint64_t trials);
SENSESIM_API sensesim_status sensesim_scenario_set_seed(sensesim_scenario* scenario,
                                                        uint64_t seed);
/* Makes the scenario signal-present (H1) at the given SNR. */
SENSESIM_API sensesim_status sensesim_scenario_set_snr_db(sensesim_scenario* scenario,
                                                          double snr_db);
/* Makes the scenario noise-only (H0). */
SENSESIM_API sensesim_status sensesim_scenario_set_noise_only(sensesim_scenario* scenario);

/* Writes the received frame of one trial into out[0..n); n must equal the
 * scenario's sample count (SENSESIM_ERR_RANGE otherwise). */
SENSESIM_API sensesim_status sensesim_scenario_frame(const sensesim_scenario* scenario,
                                                     uint64_t trial, double* out, size_t n);

/* ---- engine -----------------------------------------------------------
 * `workers` = 0 uses all hardware threads. Results never depend on it. */

SENSESIM_API sensesim_status sensesim_estimate_pfa(const sensesim_scenario* h0,
                                                   sensesim_detector detector, double threshold,
                                                   unsigned workers, sensesim_estimate* out);
/* out->rate is P_MD; P_D = 1 - P_MD. */
SENSESIM_API sensesim_status sensesim_estimate_pmd(const sensesim_scenario* h1,
                                                   sensesim_detector detector, double threshold,
                                                   unsigned workers, sensesim_estimate* out);
SENSESIM_API sensesim_status sensesim_calibrate(const sensesim_scenario* h0,
                                                sensesim_detector detector, double target_pfa,
                                                sensesim_calibration_method method,
                                                unsigned workers, sensesim_calibration* out);
/* The default calibration for the detector (analytic for normalized p = 2). */
SENSESIM_API sensesim_calibration_method sensesim_default_method(sensesim_detector detector);

/* Writes the 26 default pfa targets (log-spaced 0.001 .. 0.9) when out has
 * room; *count receives 26 either way. */
SENSESIM_API sensesim_status sensesim_default_pfa_targets(double* out, size_t capacity,
                                                          size_t* count);
/* Thresholds (strictly decreasing) for the targets, sorted ascending in
 * place in `targets`. */
SENSESIM_API sensesim_status sensesim_grid_from_pfa_targets(const sensesim_scenario* h0,
                                                            sensesim_detector detector,
                                                            double* targets, size_t count,
                                                            unsigned workers,
                                                            double* thresholds_out);

/* ---- ROC ------------------------------------------------------------- */

SENSESIM_API sensesim_status sensesim_roc_sweep(const sensesim_scenario* h0,
                                                const sensesim_scenario* h1,
                                                sensesim_detector detector,
                                                const double* thresholds, size_t count,
                                                unsigned workers, sensesim_roc** out);
/* channel selects the closed form: AWGN or Rayleigh-averaged. */
SENSESIM_API sensesim_status sensesim_roc_analytic(size_t n, sensesim_channel_kind channel,
                                                   double snr_linear, const double* thresholds,
                                                   size_t count, sensesim_roc** out);
SENSESIM_API void sensesim_roc_destroy(sensesim_roc* roc);
SENSESIM_API size_t sensesim_roc_size(const sensesim_roc* roc);
SENSESIM_API size_t sensesim_roc_warning_count(const sensesim_roc* roc);
SENSESIM_API sensesim_status sensesim_roc_point(const sensesim_roc* roc, size_t index,
                                                double* threshold, sensesim_rate_point* rates);
SENSESIM_API sensesim_status sensesim_roc_dominates(const sensesim_roc* a, const sensesim_roc* b,
                                                    const double* pfa_grid, size_t count,
                                                    sensesim_dominance_row* rows_out);

/* ---- P_MD tables ------------------------------------------------------ */

SENSESIM_API sensesim_status sensesim_pmd_table_run(const sensesim_scenario* const* columns,
                                                    size_t column_count,
                                                    sensesim_detector detector,
                                                    const double* thresholds, size_t row_count,
                                                    unsigned workers, sensesim_pmd_table** out);
SENSESIM_API void sensesim_pmd_table_destroy(sensesim_pmd_table* table);
SENSESIM_API size_t sensesim_pmd_table_rows(const sensesim_pmd_table* table);
SENSESIM_API size_t sensesim_pmd_table_columns(const sensesim_pmd_table* table);
SENSESIM_API sensesim_status sensesim_pmd_table_cell(const sensesim_pmd_table* table, size_t row,
                                                     size_t column, double* pmd,
                                                     double* stderr_pmd);
SENSESIM_API sensesim_status sensesim_pmd_table_threshold(const sensesim_pmd_table* table,
                                                          size_t row, double* threshold);
SENSESIM_API sensesim_status sensesim_pmd_table_snr_db(const sensesim_pmd_table* table,
                                                       size_t column, double* snr_db);

/* Published reference tables: 26 rows, columns -10/0/10 dB.
 * improved = 0 selects the squaring detector, nonzero the cubing one. */
SENSESIM_API size_t sensesim_reference_rows(void);
SENSESIM_API size_t sensesim_reference_columns(void);
SENSESIM_API sensesim_status sensesim_reference_pmd(int improved, size_t row, size_t column,
                                                    double* pmd);
SENSESIM_API sensesim_status sensesim_reference_snr_db(size_t column, double* snr_db);

/* ---- detector comparison ---------------------------------------------- */

SENSESIM_API sensesim_status sensesim_compare(const sensesim_scenario* h0,
                                              const sensesim_scenario* h1,
                                              sensesim_detector baseline,
                                              sensesim_detector candidate,
                                              const double* pfa_targets, size_t count,
                                              unsigned workers, sensesim_comparison** out);
SENSESIM_API void sensesim_comparison_destroy(sensesim_comparison* comparison);
SENSESIM_API size_t sensesim_comparison_size(const sensesim_comparison* comparison);
SENSESIM_API sensesim_status sensesim_comparison_get(const sensesim_comparison* comparison,
                                                     size_t index, sensesim_comparison_row* out);
/* NUL-terminated summary of the measured sign of delta; owned by the handle. */
SENSESIM_API const char* sensesim_comparison_sign(const sensesim_comparison* comparison);

#ifdef __cplusplus
}
#endif

#endif /* SENSESIM_SENSESIM_H */
