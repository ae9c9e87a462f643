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

#include "sensesim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "sensesim/error.hpp"
#include "sensesim/special.hpp"

namespace sensesim {

namespace {

constexpr double kTailMass = 1e-12;
constexpr std::uint64_t kMaxMixtureTerms = 50'000'000;

void check_dof(unsigned dof) {
  if (dof == 0) {
    throw DomainError("chi-square needs at least one degree of freedom");
  }
}

void check_threshold(double x) {
  if (!(x >= 0.0)) {
    throw DomainError("threshold must be non-negative");
  }
}

unsigned dof_from_samples(std::size_t n) {
  if (n == 0 || n > std::numeric_limits<unsigned>::max()) {
    throw DomainError("sample count must be in [1, UINT_MAX]");
  }
  return static_cast<unsigned>(n);
}

// Gauss-Legendre panels and Laguerre tail, built once.
const special::QuadratureRule& legendre20() {
  static const special::QuadratureRule rule = special::gauss_legendre(20);
  return rule;
}

const special::QuadratureRule& laguerre64() {
  static const special::QuadratureRule rule = special::gauss_laguerre(64);
  return rule;
}

double integrate_panels(const std::function<double(double)>& f, double lo, double hi,
                        int panels) {
  const auto& rule = legendre20();
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

}  // namespace

double chi2_sf(unsigned dof, double x) {
  check_dof(dof);
  check_threshold(x);
  return special::gamma_q(0.5 * dof, 0.5 * x);
}

double noncentral_chi2_sf(unsigned dof, double noncentrality, double x) {
  check_dof(dof);
  check_threshold(x);
  if (!(noncentrality >= 0.0) || !std::isfinite(noncentrality)) {
    throw DomainError("noncentrality must be finite and non-negative");
  }
  if (noncentrality == 0.0) return chi2_sf(dof, x);
  if (x == 0.0) return 1.0;

  const double mean = 0.5 * noncentrality;
  const double half_dof = 0.5 * dof;
  const double half_x = 0.5 * x;
  const auto mode = static_cast<std::uint64_t>(std::floor(mean));
  const double mode_weight =
      std::exp(-mean + static_cast<double>(mode) * std::log(mean) -
               std::lgamma(static_cast<double>(mode) + 1.0));
  auto central = [&](std::uint64_t k) {
    return special::gamma_q(half_dof + static_cast<double>(k), half_x);
  };

  // The result is normalized by the Poisson mass actually summed, which
  // cancels rounding in the log-space mode weight.
  double sum = mode_weight * central(mode);
  double mass = mode_weight;

  // Upward: weights w_{k+1} = w_k * mean / (k + 1). Past the mode they fall
  // at least geometrically with ratio mean / (k + 2), which bounds the tail.
  double w_up = mode_weight;
  std::uint64_t up = mode;
  // Downward: w_{k-1} = w_k * k / mean.
  double w_down = mode_weight;
  std::uint64_t down = mode;
  bool up_done = false;
  bool down_done = (mode == 0);
  std::uint64_t terms = 1;

  while (!(up_done && down_done)) {
    if (++terms > kMaxMixtureTerms) {
      throw NumericError("noncentral chi-square series did not converge");
    }
    if (!up_done) {
      w_up *= mean / static_cast<double>(up + 1);
      ++up;
      sum += w_up * central(up);
      mass += w_up;
      const double ratio = mean / static_cast<double>(up + 1);
      const double tail = ratio < 1.0 ? w_up * ratio / (1.0 - ratio) : 1.0;
      up_done = tail < kTailMass;
    }
    if (!down_done) {
      w_down *= static_cast<double>(down) / mean;
      --down;
      sum += w_down * central(down);
      mass += w_down;
      const double ratio = static_cast<double>(down) / mean;
      const double tail = down == 0 ? 0.0 : w_down * ratio / (1.0 - ratio);
      down_done = down == 0 || tail < kTailMass;
    }
  }
  return std::clamp(sum / mass, 0.0, 1.0);
}

double pfa_analytic(std::size_t n, double threshold) {
  return chi2_sf(dof_from_samples(n), threshold);
}

double pd_awgn_analytic(std::size_t n, double snr_linear, double threshold) {
  if (!(snr_linear >= 0.0) || !std::isfinite(snr_linear)) {
    throw DomainError("snr must be finite and non-negative");
  }
  const unsigned dof = dof_from_samples(n);
  return noncentral_chi2_sf(dof, static_cast<double>(n) * snr_linear, threshold);
}

double pd_rayleigh_analytic(std::size_t n, double mean_snr_linear, double threshold) {
  if (!(mean_snr_linear > 0.0) || !std::isfinite(mean_snr_linear)) {
    throw DomainError("mean snr must be positive and finite");
  }
  check_threshold(threshold);
  const unsigned dof = dof_from_samples(n);
  if (threshold == 0.0) return 1.0;

  auto pd = [&](double snr) {
    return noncentral_chi2_sf(dof, static_cast<double>(n) * snr, threshold);
  };

  // Smallest doubling of the SNR past which P_D is 1 to 1e-12.
  double saturation = std::max(threshold / static_cast<double>(n), 1e-6);
  for (int i = 0; pd(saturation) < 1.0 - 1e-12; ++i) {
    if (i == 200) {
      throw NumericError("could not bracket the P_D saturation point");
    }
    saturation *= 2.0;
  }
  const double split = std::min(saturation, 40.0 * mean_snr_linear);

  const double head = integrate_panels(
      [&](double snr) { return pd(snr) * std::exp(-snr / mean_snr_linear) / mean_snr_linear; },
      0.0, split, 32);

  const auto& tail_rule = laguerre64();
  double tail = 0.0;
  for (std::size_t i = 0; i < tail_rule.nodes.size(); ++i) {
    tail += tail_rule.weights[i] * pd(split + mean_snr_linear * tail_rule.nodes[i]);
  }
  tail *= std::exp(-split / mean_snr_linear);

  const double total = head + tail;
  if (!std::isfinite(total)) {
    throw NumericError("Rayleigh quadrature produced a non-finite value");
  }
  return std::clamp(total, 0.0, 1.0);
}

namespace {

RocCurve analytic_roc(std::span<const double> thresholds,
                      const std::function<double(double)>& pfa_at,
                      const std::function<double(double)>& pd_at) {
  std::vector<RocEntry> points;
  points.reserve(thresholds.size());
  for (double t : thresholds) {
    points.push_back({t, RatePoint(pfa_at(t), pd_at(t))});
  }
  return roc_assemble(std::move(points), CurveKind::kAnalytic);
}

}  // namespace

RocCurve analytic_roc_awgn(std::size_t n, double snr_linear, std::span<const double> thresholds) {
  return analytic_roc(
      thresholds, [&](double t) { return pfa_analytic(n, t); },
      [&](double t) { return pd_awgn_analytic(n, snr_linear, t); });
}

RocCurve analytic_roc_rayleigh(std::size_t n, double mean_snr_linear,
                               std::span<const double> thresholds) {
  return analytic_roc(
      thresholds, [&](double t) { return pfa_analytic(n, t); },
      [&](double t) { return pd_rayleigh_analytic(n, mean_snr_linear, t); });
}

namespace {

void check_target(double target_pfa) {
  if (!(target_pfa > 0.0 && target_pfa < 1.0)) {
    throw DomainError("target pfa must lie in the open interval (0, 1)");
  }
}

}  // namespace

CalibrationResult calibrate_analytic(std::size_t n, double target_pfa) {
  check_target(target_pfa);
  const unsigned dof = dof_from_samples(n);

  double lo = 0.0;
  double hi = std::max(1.0, 2.0 * dof);
  while (chi2_sf(dof, hi) > target_pfa) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw NumericError("could not bracket the calibrated threshold");
    }
  }
  // chi2_sf is decreasing: sf(lo) > target >= sf(hi).
  double mid = 0.5 * (lo + hi);
  double achieved = chi2_sf(dof, mid);
  for (int iter = 0; iter < 2000; ++iter) {
    if (std::fabs(achieved - target_pfa) <= 0.1 * kAnalyticCalibrationTolerance) break;
    if (achieved > target_pfa) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == mid) break;
    mid = next;
    achieved = chi2_sf(dof, mid);
  }
  if (std::fabs(achieved - target_pfa) > kAnalyticCalibrationTolerance) {
    throw NumericError("analytic calibration did not reach the target pfa");
  }
  CalibrationResult result;
  result.threshold = mid;
  result.achieved_pfa = achieved;
  result.tolerance = kAnalyticCalibrationTolerance;
  result.method = CalibrationMethod::kAnalytic;
  return result;
}

CalibrationResult calibrate_quantile(std::vector<double> h0_statistics, double target_pfa) {
  check_target(target_pfa);
  const std::uint64_t m = h0_statistics.size();
  if (m < kMinQuantileTrials) {
    throw ConfigError("empirical quantile calibration needs at least 100000 H0 trials");
  }
  const auto exceed = static_cast<std::uint64_t>(std::floor(target_pfa * static_cast<double>(m)));
  if (exceed == 0) {
    throw ConfigError("too few H0 trials to resolve the requested pfa quantile");
  }
  // The exceed-th largest statistic.
  const auto nth = h0_statistics.begin() + static_cast<std::ptrdiff_t>(m - exceed);
  std::nth_element(h0_statistics.begin(), nth, h0_statistics.end());
  const double threshold = *nth;
  const auto hits = static_cast<std::uint64_t>(
      std::count_if(h0_statistics.begin(), h0_statistics.end(),
                    [&](double t) { return t >= threshold; }));

  CalibrationResult result;
  result.threshold = threshold;
  result.achieved_pfa = static_cast<double>(hits) / static_cast<double>(m);
  result.stderr_pfa = binomial_stderr(target_pfa, m);
  result.tolerance = 3.0 * result.stderr_pfa;
  result.method = CalibrationMethod::kEmpiricalQuantile;
  result.mc_trials = m;
  return result;
}

}  // namespace sensesim
