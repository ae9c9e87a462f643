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

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "sensesim/analytic.hpp"
#include "sensesim/error.hpp"

using namespace sensesim;

namespace {

// Composite Simpson on the chi-square density; independent of the
// incomplete-gamma path.
double chi2_sf_by_integration(unsigned dof, double x, int intervals = 20000) {
  const double k = dof;
  const double norm = std::pow(2.0, k / 2) * std::tgamma(k / 2);
  auto density = [&](double t) {
    return t <= 0.0 ? (dof == 2 ? 0.5 : 0.0) : std::pow(t, k / 2 - 1) * std::exp(-t / 2) / norm;
  };
  const double h = x / intervals;
  double sum = density(0.0) + density(x);
  for (int i = 1; i < intervals; ++i) {
    sum += density(i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return 1.0 - sum * h / 3.0;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol) {
    return left + right + (left + right - whole) / 15;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return adaptive_simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 40);
}

}  // namespace

TEST_CASE("chi2_sf matches the two-dof closed form") {
  CHECK(chi2_sf(2, 2.0 * std::log(10.0)) == doctest::Approx(0.1).epsilon(1e-13));
  for (double x = 0.0; x <= 100.0; x += 0.25) {
    CHECK(std::fabs(chi2_sf(2, x) - std::exp(-x / 2)) <= 1e-12);
  }
}

TEST_CASE("chi2_sf against numerical integration of the density") {
  const double v = chi2_sf(10, 15.987);
  CHECK(std::fabs(v - 0.1) <= 0.001);
  CHECK(v == doctest::Approx(chi2_sf_by_integration(10, 15.987)).epsilon(1e-9));
  // Frozen from an independent library evaluation.
  CHECK(std::fabs(v - 0.1000051455809702) <= 1e-12);
  CHECK(std::fabs(chi2_sf(3, 4.0) - 0.26146412994911117) <= 1e-12);
  CHECK(std::fabs(chi2_sf(1, 0.5) - 0.47950012218695337) <= 1e-12);
  CHECK(std::fabs(chi2_sf(50, 60.0) - 0.1572420272383916) <= 1e-12);
  CHECK(std::fabs(chi2_sf(100, 150.0) - 0.0009039320423540184) <= 1e-12);
}

TEST_CASE("chi2_sf is a survival function") {
  for (unsigned dof : {1u, 2u, 5u, 10u, 50u}) {
    CHECK(chi2_sf(dof, 0.0) == 1.0);
    double prev = 1.0;
    for (double x = 0.5; x < 400.0; x *= 1.3) {
      const double v = chi2_sf(dof, x);
      // Strict wherever the difference is representable.
      if (v < 1.0 - 1e-15 && v > 1e-300) {
        CHECK(v < prev);
      } else {
        CHECK(v <= prev);
      }
      prev = v;
    }
    CHECK(chi2_sf(dof, 1e4) < 1e-300);
  }
  CHECK_THROWS_AS(chi2_sf(0, 1.0), DomainError);
  CHECK_THROWS_AS(chi2_sf(2, -0.5), DomainError);
}

TEST_CASE("noncentral_chi2_sf reduces to the central case") {
  for (unsigned dof : {1u, 2u, 10u, 33u}) {
    for (double x : {0.0, 0.7, 5.0, 15.987, 80.0}) {
      CHECK(noncentral_chi2_sf(dof, 0.0, x) == chi2_sf(dof, x));
    }
  }
  CHECK(noncentral_chi2_sf(10, 5.0, 0.0) == 1.0);
  CHECK_THROWS_AS(noncentral_chi2_sf(10, -1.0, 2.0), DomainError);
  CHECK_THROWS_AS(noncentral_chi2_sf(0, 1.0, 2.0), DomainError);
}

TEST_CASE("noncentral_chi2_sf against brute-force Monte Carlo") {
  // sum of (z_k + mu_k)^2 with sum mu_k^2 = 5 over 10 components.
  std::mt19937_64 gen(20260417);
  std::normal_distribution<double> normal;
  const double mu = std::sqrt(0.5);
  constexpr int kTrials = 1'000'000;
  int above = 0;
  for (int t = 0; t < kTrials; ++t) {
    double s = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double v = normal(gen) + mu;
      s += v * v;
    }
    above += s > 15.987;
  }
  const double p_mc = static_cast<double>(above) / kTrials;
  const double analytic = noncentral_chi2_sf(10, 5.0, 15.987);
  const double sigma = std::sqrt(analytic * (1 - analytic) / kTrials);
  CHECK(std::fabs(p_mc - analytic) <= 3 * sigma);
}

TEST_CASE("noncentral_chi2_sf frozen reference values") {
  // Independent library evaluations.
  CHECK(std::fabs(noncentral_chi2_sf(10, 5.0, 15.987) - 0.3879722682373892) <= 1e-11);
  CHECK(std::fabs(noncentral_chi2_sf(10, 10.0, 15.987) - 0.6671269147396451) <= 1e-11);
  CHECK(std::fabs(noncentral_chi2_sf(10, 1.0, 15.987) - 0.14944880681759476) <= 1e-11);
  CHECK(std::fabs(noncentral_chi2_sf(10, 100.0, 15.987) - 0.9999999999891671) <= 1e-11);
  CHECK(std::fabs(noncentral_chi2_sf(4, 150.0, 200.0) - 0.03748023321096896) <= 1e-11);
  CHECK(std::fabs(noncentral_chi2_sf(7, 0.3, 30.0) - 0.00015622959093835847) <= 1e-11);
}

TEST_CASE("noncentral_chi2_sf is non-decreasing in noncentrality") {
  for (unsigned dof : {2u, 10u, 40u}) {
    for (double x : {1.0, 15.987, 60.0}) {
      double prev = chi2_sf(dof, x);
      for (double d = 0.01; d < 5000.0; d *= 1.7) {
        const double v = noncentral_chi2_sf(dof, d, x);
        CHECK(v >= prev - 1e-13);
        CHECK(v <= 1.0);
        prev = v;
      }
    }
  }
}

TEST_CASE("noncentral_chi2_sf handles very large noncentrality") {
  CHECK(noncentral_chi2_sf(10, 2.0e5, 15.987) == doctest::Approx(1.0).epsilon(1e-12));
  // Mean 10 + 1e4, sd ~ 200: the threshold sits at the mean.
  const double mid = noncentral_chi2_sf(10, 1.0e4, 1.0e4 + 10.0);
  CHECK(mid > 0.45);
  CHECK(mid < 0.55);
}

TEST_CASE("pd_awgn_analytic limits and monotonicity") {
  for (double t : {0.5, 5.0, 15.987, 30.0}) {
    CHECK(pd_awgn_analytic(10, 0.0, t) == pfa_analytic(10, t));
  }
  CHECK(pfa_analytic(10, 0.0) == 1.0);
  CHECK(pd_awgn_analytic(10, 1.0, 0.0) == 1.0);
  double prev = 0.0;
  for (double g = 0.0; g < 20.0; g += 0.37) {
    const double v = pd_awgn_analytic(10, g, 15.987);
    CHECK(v >= prev - 1e-15);
    CHECK(v >= pfa_analytic(10, 15.987));
    prev = v;
  }
  CHECK_THROWS_AS(pd_awgn_analytic(10, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(pfa_analytic(0, 1.0), DomainError);
}

TEST_CASE("pd_rayleigh_analytic against independent quadrature") {
  // Frozen from an independent adaptive quadrature of the same integral.
  CHECK(std::fabs(pd_rayleigh_analytic(10, 10.0, 15.987) - 0.9242003958655316) <= 1e-6);
  CHECK(std::fabs(pd_rayleigh_analytic(10, 1.0, 15.987) - 0.5343651903120255) <= 1e-6);
  CHECK(std::fabs(pd_rayleigh_analytic(10, 0.1, 15.987) - 0.15179268425883108) <= 1e-6);
  CHECK(std::fabs(pd_rayleigh_analytic(4, 100.0, 12.0) - 0.9754309451491443) <= 1e-6);

  // Adaptive Simpson over the exponential SNR density.
  for (double mean : {0.05, 1.0, 3.16, 31.6}) {
    for (double t : {4.0, 15.987, 40.0}) {
      const auto integrand = [&](double g) {
        return pd_awgn_analytic(10, g, t) * std::exp(-g / mean) / mean;
      };
      const double reference = integrate(integrand, 0.0, 60.0 * mean, 1e-10);
      CHECK(std::fabs(pd_rayleigh_analytic(10, mean, t) - reference) <= 1e-6);
    }
  }
}

TEST_CASE("pd_rayleigh_analytic limits and bounds") {
  CHECK(pd_rayleigh_analytic(10, 5.0, 0.0) == 1.0);
  CHECK(std::fabs(pd_rayleigh_analytic(10, 1e-9, 15.987) - pfa_analytic(10, 15.987)) <= 1e-7);
  for (double mean : {0.1, 1.0, 10.0, 100.0}) {
    const double v = pd_rayleigh_analytic(10, mean, 15.987);
    CHECK(v >= pfa_analytic(10, 15.987));
    CHECK(v <= 1.0);
  }
  CHECK_THROWS_AS(pd_rayleigh_analytic(10, 0.0, 1.0), DomainError);
}

TEST_CASE("calibrate_analytic inverts the false-alarm probability") {
  const auto two = calibrate_analytic(2, 0.1);
  CHECK(two.threshold == doctest::Approx(2.0 * std::log(10.0)).epsilon(1e-9));
  CHECK(two.method == CalibrationMethod::kAnalytic);
  CHECK(two.mc_trials == 0);
  for (std::size_t n : {1u, 2u, 10u, 50u, 400u}) {
    for (double target : {1e-6, 0.001, 0.01, 0.1, 0.5, 0.9, 0.999}) {
      const auto r = calibrate_analytic(n, target);
      CHECK(std::fabs(pfa_analytic(n, r.threshold) - target) <= 1e-9);
      CHECK(std::fabs(r.achieved_pfa - target) <= 1e-9);
    }
  }
  CHECK(calibrate_analytic(10, 0.1).threshold == doctest::Approx(15.987179172105261));
  CHECK_THROWS_AS(calibrate_analytic(10, 0.0), DomainError);
  CHECK_THROWS_AS(calibrate_analytic(10, 1.0), DomainError);
  CHECK_THROWS_AS(calibrate_analytic(10, 1.5), DomainError);
}

TEST_CASE("calibrate_quantile picks the upper order statistic") {
  std::vector<double> stats(kMinQuantileTrials);
  for (std::size_t i = 0; i < stats.size(); ++i) stats[i] = static_cast<double>((i * 7919) % stats.size());
  const auto r = calibrate_quantile(stats, 0.1);
  CHECK(r.threshold == 90000.0);
  CHECK(r.achieved_pfa == 0.1);
  CHECK(r.mc_trials == kMinQuantileTrials);
  CHECK(r.stderr_pfa == doctest::Approx(std::sqrt(0.09 / 1e5)));
  CHECK_THROWS_AS(calibrate_quantile(std::vector<double>(10, 1.0), 0.1), ConfigError);
  CHECK_THROWS_AS(calibrate_quantile(stats, 1e-6), ConfigError);
  CHECK_THROWS_AS(calibrate_quantile(stats, 0.0), DomainError);
}

TEST_CASE("analytic ROC curves are strictly monotone") {
  std::vector<double> thresholds;
  for (double t : {0.01, 0.05, 0.1, 0.3, 0.5, 0.8, 0.95}) {
    thresholds.push_back(calibrate_analytic(10, t).threshold);
  }
  for (const auto& curve :
       {analytic_roc_awgn(10, 1.0, thresholds), analytic_roc_rayleigh(10, 1.0, thresholds)}) {
    CHECK(curve.kind() == CurveKind::kAnalytic);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve.points()[i].rates.pfa() > curve.points()[i - 1].rates.pfa());
      CHECK(curve.points()[i].rates.pd() > curve.points()[i - 1].rates.pd());
    }
  }
}
