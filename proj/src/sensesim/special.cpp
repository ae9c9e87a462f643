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

#include "sensesim/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sensesim/error.hpp"

namespace sensesim::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 100000;

// x^a e^{-x} / Gamma(a), in log space.
double log_prefix(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      return sum * std::exp(log_prefix(a, x));
    }
  }
  throw NumericError("incomplete gamma series did not converge");
}

double upper_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      return std::exp(log_prefix(a, x)) * h;
    }
  }
  throw NumericError("incomplete gamma continued fraction did not converge");
}

void check_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("incomplete gamma needs a > 0");
  }
  if (!(x >= 0.0)) {
    throw DomainError("incomplete gamma needs x >= 0");
  }
}

}  // namespace

double gamma_p(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return lower_series(a, x);
  return 1.0 - upper_fraction(a, x);
}

double gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_fraction(a, x);
}

QuadratureRule gauss_laguerre(std::size_t n) {
  if (n == 0) {
    throw DomainError("quadrature needs at least one node");
  }
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double dn = static_cast<double>(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Initial guesses from the asymptotic node spacing, then Newton.
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * dn);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * dn);
    } else {
      const double ai = static_cast<double>(i - 1);
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
    }
    double p1 = 0.0;
    double p2 = 0.0;
    double derivative = 0.0;
    int iter = 0;
    for (; iter < 100; ++iter) {
      p1 = 1.0;
      p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = static_cast<double>(j);
        p1 = ((2.0 * dj - 1.0 - z) * p2 - (dj - 1.0) * p3) / dj;
      }
      derivative = dn * (p1 - p2) / z;
      const double z_prev = z;
      z = z_prev - p1 / derivative;
      if (std::fabs(z - z_prev) <= 3e-14 * std::fabs(z)) break;
    }
    if (iter == 100) {
      throw NumericError("Gauss-Laguerre node iteration did not converge");
    }
    rule.nodes[i] = z;
    rule.weights[i] = -1.0 / (derivative * dn * p2);
  }
  return rule;
}

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) {
    throw DomainError("quadrature needs at least one node");
  }
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double dn = static_cast<double>(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double derivative = 0.0;
    int iter = 0;
    for (; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = static_cast<double>(j);
        p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
      }
      derivative = dn * (z * p1 - p2) / (z * z - 1.0);
      const double z_prev = z;
      z = z_prev - p1 / derivative;
      if (std::fabs(z - z_prev) <= 1e-15) break;
    }
    if (iter == 100) {
      throw NumericError("Gauss-Legendre node iteration did not converge");
    }
    const double w = 2.0 / ((1.0 - z * z) * derivative * derivative);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace sensesim::special
