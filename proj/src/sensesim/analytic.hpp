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
#include <span>
#include <vector>

#include "sensesim/metrics.hpp"

namespace sensesim {

// P(chi^2_dof > x) = Q(dof/2, x/2).
double chi2_sf(unsigned dof, double x);

// Survival function of the noncentral chi-square as the Poisson mixture
//   sum_k e^{-d/2} (d/2)^k / k! * chi2_sf(dof + 2k, x).
// Terms are taken outward from the Poisson mode until the untaken Poisson
// mass on both sides is below 1e-12. This is the generalized Marcum Q
// function Q_{dof/2}(sqrt(d), sqrt(x)).
double noncentral_chi2_sf(unsigned dof, double noncentrality, double x);

// Closed forms for the normalized p = 2 statistic. Under H0 it is chi^2_n;
// under H1 with unit-power BPSK and gain h it is noncentral chi^2_n with
// noncentrality n * gamma * h^2.
double pfa_analytic(std::size_t n, double threshold);
double pd_awgn_analytic(std::size_t n, double snr_linear, double threshold);

// P_D averaged over Rayleigh block fading: the instantaneous SNR is
// exponential with mean `mean_snr_linear`. Composite Gauss-Legendre over the
// region where P_D still rises, Gauss-Laguerre (64 nodes) for the remaining
// exponential tail. Absolute error below 1e-6.
double pd_rayleigh_analytic(std::size_t n, double mean_snr_linear, double threshold);

// ROC of the p = 2 detector evaluated in closed form at the given thresholds.
RocCurve analytic_roc_awgn(std::size_t n, double snr_linear, std::span<const double> thresholds);
RocCurve analytic_roc_rayleigh(std::size_t n, double mean_snr_linear,
                               std::span<const double> thresholds);

enum class CalibrationMethod { kAnalytic, kEmpiricalQuantile };

struct CalibrationResult {
  double threshold = 0.0;
  double achieved_pfa = 0.0;
  double stderr_pfa = 0.0;   // binomial, 0 for analytic
  double tolerance = 0.0;    // bound on |achieved - target| the method guarantees
  CalibrationMethod method = CalibrationMethod::kAnalytic;
  std::uint64_t mc_trials = 0;
};

inline constexpr double kAnalyticCalibrationTolerance = 1e-9;
inline constexpr std::uint64_t kMinQuantileTrials = 100000;

// Threshold with pfa_analytic(n, threshold) within 1e-9 of target, by
// bisection.
CalibrationResult calibrate_analytic(std::size_t n, double target_pfa);

// The (1 - target) empirical quantile of H0 statistics. The threshold is the
// floor(target * M)-th largest statistic, so exactly that many of the M
// statistics decide H1 (barring ties). Needs at least kMinQuantileTrials
// statistics and floor(target * M) >= 1.
CalibrationResult calibrate_quantile(std::vector<double> h0_statistics, double target_pfa);

}  // namespace sensesim
