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

#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "format.hpp"
#include "sensesim/sensesim.h"
#include "svg.hpp"

namespace sensesim::cli {

namespace {

void check(sensesim_status status) {
  if (status != SENSESIM_OK) {
    throw CliError(std::string(sensesim_status_name(status)) + ": " + sensesim_last_error());
  }
}

struct ScenarioDeleter {
  void operator()(sensesim_scenario* p) const { sensesim_scenario_destroy(p); }
};
struct RocDeleter {
  void operator()(sensesim_roc* p) const { sensesim_roc_destroy(p); }
};
struct TableDeleter {
  void operator()(sensesim_pmd_table* p) const { sensesim_pmd_table_destroy(p); }
};
struct ComparisonDeleter {
  void operator()(sensesim_comparison* p) const { sensesim_comparison_destroy(p); }
};
using ScenarioPtr = std::unique_ptr<sensesim_scenario, ScenarioDeleter>;
using RocPtr = std::unique_ptr<sensesim_roc, RocDeleter>;
using TablePtr = std::unique_ptr<sensesim_pmd_table, TableDeleter>;
using ComparisonPtr = std::unique_ptr<sensesim_comparison, ComparisonDeleter>;

sensesim_channel_kind channel_kind(const std::string& name) {
  return name == "rayleigh" ? SENSESIM_CHANNEL_RAYLEIGH : SENSESIM_CHANNEL_AWGN;
}

sensesim_signal_kind signal_kind(const std::string& name) {
  if (name == "sinusoid") return SENSESIM_SIGNAL_SINUSOID;
  if (name == "gaussian") return SENSESIM_SIGNAL_GAUSSIAN;
  return SENSESIM_SIGNAL_BPSK;
}

sensesim_detector detector(const RunConfig& cfg) {
  return sensesim_detector{cfg.detector_p, cfg.normalized ? 1 : 0};
}

// Noise-only scenario carrying every shared setting.
ScenarioPtr make_h0(const RunConfig& cfg, std::size_t samples) {
  sensesim_scenario* raw = nullptr;
  check(sensesim_scenario_create(&raw));
  ScenarioPtr sc(raw);
  check(sensesim_scenario_set_signal(sc.get(), signal_kind(cfg.signal), 1.0,
                                     cfg.cycles_per_frame));
  check(sensesim_scenario_set_channel(sc.get(), channel_kind(cfg.channel), cfg.noise_variance));
  check(sensesim_scenario_set_samples(sc.get(), samples));
  check(sensesim_scenario_set_trials(sc.get(), cfg.trials));
  check(sensesim_scenario_set_seed(sc.get(), cfg.seed));
  return sc;
}

ScenarioPtr make_h0(const RunConfig& cfg) { return make_h0(cfg, cfg.samples); }

ScenarioPtr make_h1(const sensesim_scenario* h0, double snr_db) {
  sensesim_scenario* raw = nullptr;
  check(sensesim_scenario_clone(h0, &raw));
  ScenarioPtr sc(raw);
  check(sensesim_scenario_set_snr_db(sc.get(), snr_db));
  return sc;
}

// Thresholds for the targets; `targets` comes back sorted ascending.
std::vector<double> threshold_grid(const RunConfig& cfg, const sensesim_scenario* h0,
                                   std::vector<double>& targets) {
  std::vector<double> thresholds(targets.size());
  check(sensesim_grid_from_pfa_targets(h0, detector(cfg), targets.data(), targets.size(),
                                       cfg.threads, thresholds.data()));
  return thresholds;
}

std::string method_name(sensesim_calibration_method m) {
  return m == SENSESIM_CALIBRATE_ANALYTIC ? "analytic" : "empirical_quantile";
}

std::filesystem::path prepare_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw CliError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text, std::ostream& out) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  file.close();
  if (!file) throw CliError("cannot write '" + path.string() + "'");
  out << "wrote " << path.string() << '\n';
}

void write_doc(const std::filesystem::path& path, const CsvDocument& doc, std::ostream& out) {
  std::ostringstream text;
  write_csv(text, doc);
  write_text(path, text.str(), out);
}

std::string snr_tag(double snr_db) { return format_number(snr_db) + "dB"; }

std::vector<std::string> plot_header(const RunConfig& cfg) { return cfg.header_lines(); }

}  // namespace

int cmd_roc(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_dir(cfg);
  const auto h0 = make_h0(cfg);
  auto targets = cfg.pfa_targets;
  const auto thresholds = threshold_grid(cfg, h0.get(), targets);
  const bool has_closed_form = cfg.detector_p == 2 && cfg.normalized;

  for (double snr : cfg.snr_db) {
    const auto h1 = make_h1(h0.get(), snr);
    sensesim_roc* raw = nullptr;
    check(sensesim_roc_sweep(h0.get(), h1.get(), detector(cfg), thresholds.data(),
                             thresholds.size(), cfg.threads, &raw));
    const RocPtr roc(raw);

    CsvDocument doc;
    doc.comments = cfg.header_lines();
    doc.comments.push_back("curve_snr_db: " + format_number(snr));
    doc.comments.push_back("calibration: " + method_name(sensesim_default_method(detector(cfg))));
    doc.comments.push_back("rows: decreasing lambda; pfa and pd are Monte Carlo estimates");
    doc.header = {"lambda", "pfa", "stderr_pfa", "pd", "stderr_pd"};
    Series mc{"Monte Carlo", {}, false};
    for (std::size_t i = 0; i < sensesim_roc_size(roc.get()); ++i) {
      double lambda = 0.0;
      sensesim_rate_point rp{};
      check(sensesim_roc_point(roc.get(), i, &lambda, &rp));
      doc.rows.push_back({format_number(lambda), format_number(rp.pfa),
                          format_number(rp.stderr_pfa), format_number(rp.pd),
                          format_number(rp.stderr_pd)});
      mc.points.emplace_back(rp.pfa, rp.pd);
    }
    const std::string stem = "roc_" + cfg.channel + "_" + snr_tag(snr);
    write_doc(dir / (stem + ".csv"), doc, out);

    if (cfg.svg) {
      PlotSpec plot;
      plot.title = "ROC, " + cfg.channel + ", N=" + std::to_string(cfg.samples) +
                   ", SNR " + format_number(snr) + " dB, p=" + std::to_string(cfg.detector_p);
      plot.x_label = "P_FA";
      plot.y_label = "P_D";
      plot.log_x = true;
      plot.header = plot_header(cfg);
      plot.series.push_back(mc);
      if (has_closed_form) {
        double linear = 0.0;
        check(sensesim_snr_to_linear(snr, &linear));
        sensesim_roc* araw = nullptr;
        check(sensesim_roc_analytic(cfg.samples, channel_kind(cfg.channel), linear,
                                    thresholds.data(), thresholds.size(), &araw));
        const RocPtr analytic(araw);
        Series a{"analytic", {}, true};
        for (std::size_t i = 0; i < sensesim_roc_size(analytic.get()); ++i) {
          double lambda = 0.0;
          sensesim_rate_point rp{};
          check(sensesim_roc_point(analytic.get(), i, &lambda, &rp));
          a.points.emplace_back(rp.pfa, rp.pd);
        }
        plot.series.push_back(a);
      }
      write_text(dir / (stem + ".svg"), render_svg(plot), out);
    }
  }
  return kExitOk;
}

int cmd_pmd_table(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_dir(cfg);
  const auto h0 = make_h0(cfg);
  auto targets = cfg.pfa_targets;
  const auto thresholds = threshold_grid(cfg, h0.get(), targets);

  std::vector<ScenarioPtr> owned;
  std::vector<const sensesim_scenario*> columns;
  for (double snr : cfg.snr_db) {
    owned.push_back(make_h1(h0.get(), snr));
    columns.push_back(owned.back().get());
  }
  sensesim_pmd_table* raw = nullptr;
  check(sensesim_pmd_table_run(columns.data(), columns.size(), detector(cfg), thresholds.data(),
                               thresholds.size(), cfg.threads, &raw));
  const TablePtr table(raw);

  const std::size_t ref_rows = sensesim_reference_rows();
  const std::size_t ref_cols = sensesim_reference_columns();
  std::vector<double> ref_snr(ref_cols);
  for (std::size_t c = 0; c < ref_cols; ++c) check(sensesim_reference_snr_db(c, &ref_snr[c]));

  CsvDocument doc;
  doc.comments = cfg.header_lines();
  doc.comments.push_back("calibration: " + method_name(sensesim_default_method(detector(cfg))));
  doc.comments.push_back("rows: threshold_index 1.." + std::to_string(thresholds.size()) +
                         " by decreasing lambda (increasing target pfa)");
  doc.comments.push_back("ref_conv_* / ref_impr_*: published reference P_MD tables for the "
                         "squaring and cubing detectors, by threshold index");
  doc.header = {"threshold_index", "lambda"};
  for (double snr : cfg.snr_db) {
    doc.header.push_back("pmd_" + snr_tag(snr));
    doc.header.push_back("stderr_" + snr_tag(snr));
  }
  for (const char* family : {"ref_conv_", "ref_impr_"}) {
    for (double snr : ref_snr) doc.header.push_back(family + snr_tag(snr));
  }

  std::vector<Series> sim(cfg.snr_db.size());
  for (std::size_t c = 0; c < cfg.snr_db.size(); ++c) {
    sim[c].label = "simulated " + format_number(cfg.snr_db[c]) + " dB";
  }
  std::vector<Series> ref(ref_cols);
  for (std::size_t c = 0; c < ref_cols; ++c) {
    ref[c] = Series{"reference (squaring) " + format_number(ref_snr[c]) + " dB", {}, true};
  }

  for (std::size_t r = 0; r < sensesim_pmd_table_rows(table.get()); ++r) {
    double lambda = 0.0;
    check(sensesim_pmd_table_threshold(table.get(), r, &lambda));
    std::vector<std::string> row{std::to_string(r + 1), format_number(lambda)};
    for (std::size_t c = 0; c < sensesim_pmd_table_columns(table.get()); ++c) {
      double pmd = 0.0;
      double se = 0.0;
      check(sensesim_pmd_table_cell(table.get(), r, c, &pmd, &se));
      row.push_back(format_number(pmd));
      row.push_back(format_number(se));
      sim[c].points.emplace_back(static_cast<double>(r + 1), pmd);
    }
    for (int improved : {0, 1}) {
      for (std::size_t c = 0; c < ref_cols; ++c) {
        if (r >= ref_rows) {
          row.emplace_back();
          continue;
        }
        double v = 0.0;
        check(sensesim_reference_pmd(improved, r, c, &v));
        row.push_back(format_number(v));
        if (improved == 0) ref[c].points.emplace_back(static_cast<double>(r + 1), v);
      }
    }
    doc.rows.push_back(std::move(row));
  }
  write_doc(dir / "pmd_table.csv", doc, out);

  if (cfg.svg) {
    PlotSpec plot;
    plot.title = "P_MD by threshold index, " + cfg.channel + ", N=" + std::to_string(cfg.samples) +
                 ", p=" + std::to_string(cfg.detector_p);
    plot.x_label = "threshold index";
    plot.y_label = "P_MD";
    plot.header = plot_header(cfg);
    for (auto& s : sim) plot.series.push_back(std::move(s));
    for (auto& s : ref) plot.series.push_back(std::move(s));
    write_text(dir / "pmd_table.svg", render_svg(plot), out);
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_dir(cfg);
  const auto h0 = make_h0(cfg);
  const sensesim_detector baseline{2, 1};
  const sensesim_detector candidate = detector(cfg);
  const std::string bs = "p2";
  std::string cs = "p" + std::to_string(candidate.p);
  if (cs == bs) cs += "_candidate";

  for (double snr : cfg.snr_db) {
    const auto h1 = make_h1(h0.get(), snr);
    sensesim_comparison* raw = nullptr;
    check(sensesim_compare(h0.get(), h1.get(), baseline, candidate, cfg.pfa_targets.data(),
                           cfg.pfa_targets.size(), cfg.threads, &raw));
    const ComparisonPtr report(raw);

    CsvDocument doc;
    doc.comments = cfg.header_lines();
    doc.comments.push_back("curve_snr_db: " + format_number(snr));
    doc.comments.push_back("baseline: p=2 normalized, analytic calibration");
    doc.comments.push_back("candidate: p=" + std::to_string(candidate.p) + " normalized=" +
                           (cfg.normalized ? "true" : "false") + ", " +
                           method_name(sensesim_default_method(candidate)) + " calibration");
    doc.comments.push_back("delta = pmd_" + bs + " - pmd_" + cs +
                           "; positive delta means the candidate misses less often");
    doc.header = {"target_pfa", "lambda_" + bs, "lambda_" + cs, "pmd_" + bs,
                  "pmd_" + cs,  "delta",        "stderr_delta"};
    std::vector<std::pair<double, double>> pts_b;
    std::vector<std::pair<double, double>> pts_c;
    for (std::size_t i = 0; i < sensesim_comparison_size(report.get()); ++i) {
      sensesim_comparison_row row{};
      check(sensesim_comparison_get(report.get(), i, &row));
      doc.rows.push_back({format_number(row.target_pfa),
                          format_number(row.baseline_calibration.threshold),
                          format_number(row.candidate_calibration.threshold),
                          format_number(row.pmd_baseline), format_number(row.pmd_candidate),
                          format_number(row.delta), format_number(row.stderr_delta)});
      pts_b.emplace_back(row.target_pfa, row.pmd_baseline);
      pts_c.emplace_back(row.target_pfa, row.pmd_candidate);
    }
    const std::string sign = sensesim_comparison_sign(report.get());
    doc.trailer.push_back("measured: " + sign);
    doc.trailer.push_back("claim under test: the cubing detector has lower P_MD than the "
                          "squaring detector (delta > 0)");
    for (std::size_t c = 0; c < sensesim_reference_columns(); ++c) {
      double ref_snr = 0.0;
      double conv = 0.0;
      double impr = 0.0;
      check(sensesim_reference_snr_db(c, &ref_snr));
      check(sensesim_reference_pmd(0, 0, c, &conv));
      check(sensesim_reference_pmd(1, 0, c, &impr));
      doc.trailer.push_back("reference threshold_index=1 snr_db=" + format_number(ref_snr) +
                            " pmd_conventional=" + format_number(conv) +
                            " pmd_improved=" + format_number(impr));
    }
    const std::string stem = "compare_" + cfg.channel + "_" + snr_tag(snr);
    write_doc(dir / (stem + ".csv"), doc, out);
    out << "SNR " << format_number(snr) << " dB: " << sign << '\n';

    if (cfg.svg) {
      PlotSpec plot;
      plot.title = "P_MD at matched P_FA, " + cfg.channel + ", SNR " + format_number(snr) + " dB";
      plot.x_label = "target P_FA";
      plot.y_label = "P_MD";
      plot.log_x = true;
      plot.header = plot_header(cfg);
      plot.series.push_back(Series{"baseline " + bs, pts_b, false});
      plot.series.push_back(Series{"candidate " + cs, pts_c, true});
      write_text(dir / (stem + ".svg"), render_svg(plot), out);
    }
  }
  return kExitOk;
}

int cmd_calibrate(const RunConfig& cfg, std::ostream& out) {
  const auto h0 = make_h0(cfg);
  const auto det = detector(cfg);
  const auto method = sensesim_default_method(det);
  CsvDocument doc;
  doc.comments = cfg.header_lines();
  doc.header = {"target_pfa", "lambda", "achieved_pfa", "stderr_pfa", "tolerance", "method"};
  for (double target : cfg.pfa_targets) {
    sensesim_calibration cal{};
    check(sensesim_calibrate(h0.get(), det, target, method, cfg.threads, &cal));
    doc.rows.push_back({format_number(target), format_number(cal.threshold),
                        format_number(cal.achieved_pfa), format_number(cal.stderr_pfa),
                        format_number(cal.tolerance), method_name(cal.method)});
  }
  write_csv(out, doc);
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_dir(cfg);
  const sensesim_detector squaring{2, 1};
  CsvDocument doc;
  doc.comments = cfg.header_lines();
  doc.comments.push_back("suite: p=2 Monte Carlo against closed forms, 3 binomial sigma each");
  doc.header = {"check", "lambda", "estimate", "expected", "tolerance", "result"};
  std::vector<std::string> failed;

  auto record = [&](const std::string& name, double lambda, double estimate, double expected,
                    std::uint64_t trials) {
    const double tol = 3.0 * std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
    const bool pass = std::fabs(estimate - expected) <= tol;
    doc.rows.push_back({name, format_number(lambda), format_number(estimate),
                        format_number(expected), format_number(tol), pass ? "PASS" : "FAIL"});
    out << (pass ? "PASS " : "FAIL ") << name << ": estimate " << format_number(estimate)
        << ", expected " << format_number(expected) << " +/- " << format_number(tol) << '\n';
    if (!pass) failed.push_back(name);
  };

  auto calibrated = [&](std::size_t n) {
    std::vector<double> lambdas;
    for (double t : cfg.pfa_targets) {
      sensesim_calibration cal{};
      const auto h0 = make_h0(cfg, n);
      check(sensesim_calibrate(h0.get(), squaring, t, SENSESIM_CALIBRATE_ANALYTIC, cfg.threads,
                               &cal));
      lambdas.push_back(cal.threshold);
    }
    return lambdas;
  };

  for (std::size_t n : {std::size_t{2}, std::size_t{10}, std::size_t{50}}) {
    const auto h0 = make_h0(cfg, n);
    const auto lambdas = calibrated(n);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      sensesim_estimate est{};
      check(sensesim_estimate_pfa(h0.get(), squaring, lambdas[i], cfg.threads, &est));
      record("pfa N=" + std::to_string(n) + " target=" + format_number(cfg.pfa_targets[i]),
             lambdas[i], est.rate, cfg.pfa_targets[i], est.trials);
    }
  }

  const auto lambdas = calibrated(cfg.samples);
  for (const char* channel : {"awgn", "rayleigh"}) {
    RunConfig ch = cfg;
    ch.channel = channel;
    const auto h0 = make_h0(ch);
    for (double snr : cfg.snr_db) {
      const auto h1 = make_h1(h0.get(), snr);
      double linear = 0.0;
      check(sensesim_snr_to_linear(snr, &linear));
      for (std::size_t i = 0; i < lambdas.size(); ++i) {
        sensesim_estimate est{};
        check(sensesim_estimate_pmd(h1.get(), squaring, lambdas[i], cfg.threads, &est));
        double expected = 0.0;
        if (ch.channel == "awgn") {
          check(sensesim_pd_awgn_analytic(cfg.samples, linear, lambdas[i], &expected));
        } else {
          check(sensesim_pd_rayleigh_analytic(cfg.samples, linear, lambdas[i], &expected));
        }
        record("pd " + ch.channel + " N=" + std::to_string(cfg.samples) +
                   " snr_db=" + format_number(snr) + " target_pfa=" +
                   format_number(cfg.pfa_targets[i]),
               lambdas[i], 1.0 - est.rate, expected, est.trials);
      }
    }
  }

  write_doc(dir / "validate.csv", doc, out);
  if (failed.empty()) {
    out << "all " << doc.rows.size() << " checks passed\n";
    return kExitOk;
  }
  out << failed.size() << " of " << doc.rows.size() << " checks failed:\n";
  for (const auto& f : failed) out << "  " << f << '\n';
  return kExitValidationFailed;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::kRoc: return cmd_roc(cfg, out);
    case Command::kPmdTable: return cmd_pmd_table(cfg, out);
    case Command::kCompare: return cmd_compare(cfg, out);
    case Command::kCalibrate: return cmd_calibrate(cfg, out);
    case Command::kValidate: return cmd_validate(cfg, out);
  }
  return kExitUsage;
}

}  // namespace sensesim::cli
