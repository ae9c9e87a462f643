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

#include <array>
#include <cstddef>

namespace sensesim {

// Published missed-detection tables for the squaring and cubing detectors:
// 26 threshold rows by SNR columns {-10, 0, 10} dB. Row 1 is the highest
// threshold. The values are kept verbatim, including the cubing table's
// non-monotone 10 dB column.
struct ReferencePmdTable {
  static constexpr std::size_t kRows = 26;
  static constexpr std::size_t kCols = 3;
  std::array<double, kCols> snr_db;
  std::array<std::array<double, kCols>, kRows> pmd;
};

const ReferencePmdTable& reference_pmd_conventional();
const ReferencePmdTable& reference_pmd_improved();

}  // namespace sensesim
