// Copyright 2026 The epiphase Authors
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

#ifndef EPIPHASE_ERRORS_HPP_
#define EPIPHASE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace epiphase {

// Invalid parameter values, malformed configuration documents, schema
// violations. Maps to the CLI "config" exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integration divergence, invariant violations beyond tolerance, and other
// numeric failures. Maps to the CLI "numeric" exit code.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable files. Maps to the CLI "io" exit code.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace epiphase

#endif  // EPIPHASE_ERRORS_HPP_
