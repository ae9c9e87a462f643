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

#include "config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "format.hpp"
#include "sensesim/sensesim.h"

namespace sensesim::cli {

std::string_view command_name(Command command) {
  switch (command) {
    case Command::kRoc: return "roc";
    case Command::kPmdTable: return "pmd-table";
    case Command::kCompare: return "compare";
    case Command::kCalibrate: return "calibrate";
    case Command::kValidate: return "validate";
  }
  return "unknown";
}

void Settings::inherit(const Settings& lower) {
  auto take = [](auto& mine, const auto& theirs) {
    if (!mine && theirs) mine = theirs;
  };
  take(seed, lower.seed);
  take(samples, lower.samples);
  take(trials, lower.trials);
  take(channel, lower.channel);
  take(noise_variance, lower.noise_variance);
  take(signal, lower.signal);
  take(cycles_per_frame, lower.cycles_per_frame);
  take(snr_db, lower.snr_db);
  take(detector_p, lower.detector_p);
  take(normalized, lower.normalized);
  take(pfa_targets, lower.pfa_targets);
  take(out_dir, lower.out_dir);
  take(svg, lower.svg);
}

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::string_view section,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw CliError("config: '" + std::string(section) + "' must be an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto k : allowed) known = known || item.key() == k;
    if (!known) {
      throw CliError("config: unknown key '" + item.key() + "' in " + std::string(section));
    }
  }
}

template <typename T>
std::optional<T> get(const json& obj, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw CliError(std::string("config: key '") + key + "' has the wrong type");
  }
}

std::uint64_t get_count(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw CliError(std::string("config: key '") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

Settings settings_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CliError(std::string("config: ") + e.what());
  }
  check_keys(root, "top level", {"seed", "scenario", "detector", "grid", "output"});
  Settings s;
  if (root.contains("seed")) s.seed = get_count(root, "seed");
  if (root.contains("scenario")) {
    const auto& sc = root["scenario"];
    check_keys(sc, "scenario",
               {"samples", "trials", "channel", "noise_variance", "snr_db", "signal"});
    if (sc.contains("samples")) s.samples = get_count(sc, "samples");
    if (sc.contains("trials")) s.trials = get_count(sc, "trials");
    s.channel = get<std::string>(sc, "channel");
    s.noise_variance = get<double>(sc, "noise_variance");
    s.snr_db = get<std::vector<double>>(sc, "snr_db");
    if (sc.contains("signal")) {
      const auto& sig = sc["signal"];
      check_keys(sig, "scenario.signal", {"kind", "cycles_per_frame"});
      s.signal = get<std::string>(sig, "kind");
      s.cycles_per_frame = get<double>(sig, "cycles_per_frame");
    }
  }
  if (root.contains("detector")) {
    const auto& d = root["detector"];
    check_keys(d, "detector", {"p", "normalized"});
    s.detector_p = get<int>(d, "p");
    s.normalized = get<bool>(d, "normalized");
  }
  if (root.contains("grid")) {
    const auto& g = root["grid"];
    check_keys(g, "grid", {"pfa_targets"});
    s.pfa_targets = get<std::vector<double>>(g, "pfa_targets");
  }
  if (root.contains("output")) {
    const auto& o = root["output"];
    check_keys(o, "output", {"dir", "svg"});
    s.out_dir = get<std::string>(o, "dir");
    s.svg = get<bool>(o, "svg");
  }
  return s;
}

Settings settings_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return settings_from_json(text.str());
}

Settings settings_from_env() {
  Settings s;
  const char* raw = std::getenv("SENSESIM_SEED");
  if (raw == nullptr || *raw == '\0') return s;
  const std::string_view text(raw);
  std::uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw CliError("SENSESIM_SEED is not an unsigned 64-bit integer: '" + std::string(text) + "'");
  }
  s.seed = value;
  return s;
}

RunConfig resolve(Command command, const Settings& merged, unsigned threads) {
  RunConfig c;
  c.command = command;
  c.threads = threads;
  if (merged.seed) c.seed = *merged.seed;
  if (merged.samples) c.samples = static_cast<std::size_t>(*merged.samples);
  if (merged.trials) c.trials = *merged.trials;
  if (merged.channel) c.channel = *merged.channel;
  if (merged.noise_variance) c.noise_variance = *merged.noise_variance;
  if (merged.signal) c.signal = *merged.signal;
  if (merged.cycles_per_frame) c.cycles_per_frame = *merged.cycles_per_frame;
  if (merged.normalized) c.normalized = *merged.normalized;
  if (merged.out_dir) c.out_dir = *merged.out_dir;
  if (merged.svg) c.svg = *merged.svg;

  // The comparison's candidate defaults to the cubing detector.
  c.detector_p = merged.detector_p.value_or(command == Command::kCompare ? 3 : 2);

  if (merged.snr_db) {
    c.snr_db = *merged.snr_db;
  } else if (command == Command::kCompare) {
    c.snr_db = {-10.0};
  } else {
    c.snr_db = {-10.0, 0.0, 10.0};
  }

  if (merged.pfa_targets) {
    c.pfa_targets = *merged.pfa_targets;
  } else {
    switch (command) {
      case Command::kCompare: c.pfa_targets = {0.01, 0.1}; break;
      case Command::kCalibrate: c.pfa_targets = {0.1}; break;
      case Command::kValidate: c.pfa_targets = {0.01, 0.1, 0.5}; break;
      default: {
        std::size_t count = 0;
        sensesim_default_pfa_targets(nullptr, 0, &count);
        c.pfa_targets.resize(count);
        sensesim_default_pfa_targets(c.pfa_targets.data(), count, &count);
      }
    }
  }

  if (c.channel != "awgn" && c.channel != "rayleigh") {
    throw CliError("channel must be 'awgn' or 'rayleigh', got '" + c.channel + "'");
  }
  if (c.signal != "bpsk" && c.signal != "sinusoid" && c.signal != "gaussian") {
    throw CliError("signal kind must be 'bpsk', 'sinusoid' or 'gaussian', got '" + c.signal + "'");
  }
  if (c.snr_db.empty()) throw CliError("snr_db list must not be empty");
  if (c.pfa_targets.empty()) throw CliError("pfa_targets list must not be empty");
  if (c.out_dir.empty()) throw CliError("output directory must not be empty");
  return c;
}

std::vector<std::string> RunConfig::header_lines() const {
  std::vector<std::string> h;
  h.push_back("sensesim " + std::string(sensesim_version()));
  h.push_back("command: " + std::string(command_name(command)));
  h.push_back("seed: " + std::to_string(seed));
  h.push_back("samples: " + std::to_string(samples));
  h.push_back("trials: " + std::to_string(trials));
  h.push_back("channel: " + channel);
  h.push_back("noise_variance: " + format_number(noise_variance));
  std::string sig = "signal: " + signal;
  if (signal == "sinusoid") sig += " cycles_per_frame=" + format_number(cycles_per_frame);
  h.push_back(sig);
  h.push_back("snr_db: " + join_numbers(snr_db));
  h.push_back("detector: p=" + std::to_string(detector_p) +
              " normalized=" + (normalized ? "true" : "false"));
  h.push_back("pfa_targets: " + join_numbers(pfa_targets));
  return h;
}

}  // namespace sensesim::cli
