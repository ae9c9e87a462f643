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

#include "sensesim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sensesim/error.hpp"

namespace sensesim {

namespace {

constexpr double kAnalyticTolerance = 1e-12;

bool is_probability(double r) { return r >= 0.0 && r <= 1.0; }

struct Interpolated {
  double pd;
  double stderr_pd;
};

Interpolated interpolate_pd(const RocCurve& curve, double pfa) {
  const auto& pts = curve.points();
  if (pts.empty() || pfa < pts.front().rates.pfa() || pfa > pts.back().rates.pfa()) {
    std::ostringstream msg;
    msg << "pfa " << pfa << " lies outside the curve support";
    throw DomainError(msg.str());
  }
  auto it = std::lower_bound(pts.begin(), pts.end(), pfa,
                             [](const RocEntry& e, double v) { return e.rates.pfa() < v; });
  if (it->rates.pfa() == pfa) {
    // Several points may share this pfa; the last has the largest pd.
    auto last = it;
    while (std::next(last) != pts.end() && std::next(last)->rates.pfa() == pfa) {
      ++last;
    }
    return {last->rates.pd(), last->rates.stderr_pd()};
  }
  const RatePoint& lo = std::prev(it)->rates;
  const RatePoint& hi = it->rates;
  const double w = (pfa - lo.pfa()) / (hi.pfa() - lo.pfa());
  return {lo.pd() + w * (hi.pd() - lo.pd()),
          lo.stderr_pd() + w * (hi.stderr_pd() - lo.stderr_pd())};
}

}  // namespace

double binomial_stderr(double rate, std::uint64_t trials) {
  if (trials == 0) {
    throw DomainError("standard error needs at least one trial");
  }
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

RatePoint::RatePoint(double pfa, double pd, double stderr_pfa, double stderr_pd)
    : pfa_(pfa), pd_(pd), pmd_(1.0 - pd), stderr_pfa_(stderr_pfa), stderr_pd_(stderr_pd) {
  if (!is_probability(pfa) || !is_probability(pd)) {
    throw DomainError("rates must lie in [0, 1]");
  }
  if (!(stderr_pfa >= 0.0) || !(stderr_pd >= 0.0)) {
    throw DomainError("standard errors must be non-negative");
  }
}

RatePoint rates_from_counts(const ConfusionCounts& c) {
  if (c.h0_trials == 0 || c.h1_trials == 0) {
    throw DomainError("rates need at least one trial under each hypothesis");
  }
  if (c.false_alarms > c.h0_trials || c.detections > c.h1_trials) {
    throw DomainError("event count exceeds trial count");
  }
  const double pfa = static_cast<double>(c.false_alarms) / static_cast<double>(c.h0_trials);
  const double pd = static_cast<double>(c.detections) / static_cast<double>(c.h1_trials);
  return RatePoint(pfa, pd, binomial_stderr(pfa, c.h0_trials), binomial_stderr(pd, c.h1_trials));
}

RocCurve roc_assemble(std::vector<RocEntry> points, CurveKind kind) {
  for (const auto& e : points) {
    if (!(e.threshold >= 0.0) || !std::isfinite(e.threshold)) {
      throw DomainError("ROC thresholds must be finite and non-negative");
    }
  }
  std::sort(points.begin(), points.end(),
            [](const RocEntry& a, const RocEntry& b) { return a.threshold > b.threshold; });
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].threshold == points[i - 1].threshold) {
      throw DomainError("duplicate threshold in ROC points");
    }
  }

  RocCurve curve;
  curve.kind_ = kind;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const RatePoint& prev = points[i - 1].rates;
    const RatePoint& cur = points[i].rates;
    const double drop_pfa = prev.pfa() - cur.pfa();
    const double drop_pd = prev.pd() - cur.pd();
    if (kind == CurveKind::kAnalytic) {
      if (drop_pfa > kAnalyticTolerance || drop_pd > kAnalyticTolerance) {
        std::ostringstream msg;
        msg << "analytic ROC not monotone at threshold " << points[i].threshold;
        throw DomainError(msg.str());
      }
      continue;
    }
    const double tol_pfa = 3.0 * std::hypot(prev.stderr_pfa(), cur.stderr_pfa());
    const double tol_pd = 3.0 * std::hypot(prev.stderr_pd(), cur.stderr_pd());
    if (drop_pfa > tol_pfa || drop_pd > tol_pd) {
      std::ostringstream msg;
      msg << "rates decrease beyond 3 stderr at threshold " << points[i].threshold;
      curve.warnings_.push_back(msg.str());
    }
  }
  curve.points_ = std::move(points);
  return curve;
}

std::vector<DominanceRow> roc_dominates(const RocCurve& a, const RocCurve& b,
                                        std::span<const double> pfa_grid) {
  std::vector<DominanceRow> rows;
  rows.reserve(pfa_grid.size());
  for (double pfa : pfa_grid) {
    const Interpolated ia = interpolate_pd(a, pfa);
    const Interpolated ib = interpolate_pd(b, pfa);
    rows.push_back({pfa, ia.pd, ib.pd, ia.pd - ib.pd, std::hypot(ia.stderr_pd, ib.stderr_pd)});
  }
  return rows;
}

}  // namespace sensesim
