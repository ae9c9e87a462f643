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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sensesim::cli {

// Raised for anything the user can fix: bad flags, bad config, bad paths.
class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

// Strict inverse of format_number; the whole string must be consumed.
double parse_number(std::string_view text);

// Comma-separated numbers, e.g. "-10,0,10". Empty fields are rejected.
std::vector<double> parse_list(std::string_view text);

std::string join_numbers(const std::vector<double>& values, std::string_view sep = ",");

// A CSV file as written by the tool: '#' comment lines, one header row,
// then data rows, then optional trailing '#' comment lines.
struct CsvDocument {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> trailer;   // comments after the data
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

void write_csv(std::ostream& out, const CsvDocument& doc);
CsvDocument read_csv(std::istream& in);
CsvDocument read_csv_file(const std::string& path);

}  // namespace sensesim::cli
