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

#include <stdexcept>
#include <string>

namespace sensesim {

// Precondition on a numeric argument violated (bad dof, negative threshold,
// target outside (0,1), non-finite sample, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An operation was handed the wrong kind of scenario.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The experiment configuration cannot produce the requested quantity.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Series or quadrature failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sensesim
