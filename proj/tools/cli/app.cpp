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

#include "app.hpp"

#include <exception>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "format.hpp"
#include "sensesim/sensesim.h"

namespace sensesim::cli {

namespace {

// Raw flag values; lists stay strings so negative numbers parse cleanly.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> samples;
  std::optional<std::string> snr_db;
  std::optional<std::string> channel;
  std::optional<int> detector_p;
  std::optional<std::string> pfa_targets;
  std::optional<std::string> out_dir;
  bool svg = false;
  unsigned threads = 0;

  Settings settings() const {
    Settings s;
    s.seed = seed;
    s.trials = trials;
    s.samples = samples;
    s.channel = channel;
    s.detector_p = detector_p;
    s.out_dir = out_dir;
    if (snr_db) s.snr_db = parse_list(*snr_db);
    if (pfa_targets) s.pfa_targets = parse_list(*pfa_targets);
    if (svg) s.svg = true;
    return s;
  }
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON experiment file")->check(CLI::ExistingFile);
  cmd.add_option("--seed", f.seed, "master seed (overrides SENSESIM_SEED and the file)");
  cmd.add_option("--trials", f.trials, "Monte Carlo trials per hypothesis");
  cmd.add_option("--samples", f.samples, "samples per sensing frame (N)");
  cmd.add_option("--snr-db", f.snr_db, "comma-separated SNR list in dB, e.g. -10,0,10")
      ->allow_extra_args(false);
  cmd.add_option("--channel", f.channel, "awgn or rayleigh")
      ->check(CLI::IsMember({"awgn", "rayleigh"}));
  cmd.add_option("--detector-p", f.detector_p, "detector exponent p (compare: candidate)");
  cmd.add_option("--pfa-targets", f.pfa_targets, "comma-separated false-alarm targets");
  cmd.add_option("--out", f.out_dir, "output directory");
  cmd.add_flag("--svg", f.svg, "also write SVG plots");
  cmd.add_option("--threads", f.threads, "worker threads, 0 = all cores (output is unaffected)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-detection spectrum sensing simulator"};
  app.set_version_flag("--version", std::string("sensesim ") + sensesim_version());
  app.require_subcommand(1);

  struct Entry {
    Command command;
    const char* description;
    CLI::App* app = nullptr;
  };
  std::vector<Entry> entries{
      {Command::kRoc, "Monte Carlo ROC curves, one file per SNR"},
      {Command::kPmdTable, "missed-detection table over a threshold grid and SNR columns"},
      {Command::kCompare, "squaring vs candidate detector at matched false-alarm rates"},
      {Command::kCalibrate, "print CFAR thresholds for the false-alarm targets"},
      {Command::kValidate, "Monte Carlo vs closed-form checks; exit 1 on any failure"},
  };
  Flags flags;
  for (auto& e : entries) {
    e.app = app.add_subcommand(std::string(command_name(e.command)), e.description);
    add_flags(*e.app, flags);
  }

  // CLI11 wants argv order reversed in a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kExitOk;
    err << "error: " << e.what() << '\n';
    for (const auto& entry : entries) {
      if (entry.app->parsed()) {
        err << "run '" << command_name(entry.command) << " --help' for usage\n";
      }
    }
    return kExitUsage;
  }

  try {
    Command command = Command::kRoc;
    for (const auto& e : entries) {
      if (e.app->parsed()) command = e.command;
    }
    Settings merged = flags.settings();
    if (flags.config) merged.inherit(settings_from_file(*flags.config));
    merged.inherit(settings_from_env());
    const RunConfig cfg = resolve(command, merged, flags.threads);
    return dispatch(cfg, out);
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace sensesim::cli
