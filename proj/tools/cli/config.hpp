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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sensesim::cli {

enum class Command { kRoc, kPmdTable, kCompare, kCalibrate, kValidate };

std::string_view command_name(Command command);

// Every setting a command can take. Values left unset fall back to the
// next source: flag > config file > SENSESIM_SEED > per-command default.
struct Settings {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> channel;
  std::optional<double> noise_variance;
  std::optional<std::string> signal;
  std::optional<double> cycles_per_frame;
  std::optional<std::vector<double>> snr_db;
  std::optional<int> detector_p;
  std::optional<bool> normalized;
  std::optional<std::vector<double>> pfa_targets;
  std::optional<std::string> out_dir;
  std::optional<bool> svg;

  // Fills every unset field of *this from `lower`.
  void inherit(const Settings& lower);
};

// Parses a JSON experiment file. Unknown keys are errors.
Settings settings_from_json(std::string_view text);
Settings settings_from_file(const std::string& path);
// Reads SENSESIM_SEED; unset yields no seed.
Settings settings_from_env();

struct RunConfig {
  Command command = Command::kRoc;
  std::uint64_t seed = 1;
  std::size_t samples = 10;
  std::uint64_t trials = 100000;
  std::string channel = "awgn";  // awgn | rayleigh
  double noise_variance = 1.0;
  std::string signal = "bpsk";   // bpsk | sinusoid | gaussian
  double cycles_per_frame = 1.0;
  std::vector<double> snr_db;
  int detector_p = 2;
  bool normalized = true;
  std::vector<double> pfa_targets;
  std::string out_dir = "results";
  bool svg = false;
  unsigned threads = 0;  // execution detail only; never written to outputs

  // Reproducibility header: tool version, seed and every parameter.
  std::vector<std::string> header_lines() const;
};

// Applies per-command defaults and checks enumerated values.
RunConfig resolve(Command command, const Settings& merged, unsigned threads);

}  // namespace sensesim::cli
