// Copyright 2026 The qa3c authors.
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

namespace qa3c {

// Process exit codes used by the CLI. Exceptions map onto them 1:1; usage
// errors (contract violations reachable from the command line) share the
// configuration code.
enum class ExitCode : int {
    ok = 0,
    config = 2,
    io = 3,
    numeric = 4,
    tolerance = 5,
};

/// Invalid configuration: bad dimensions, unknown names, out-of-range values.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Filesystem trouble: unwritable output directory, unreadable checkpoint.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values where finite ones are required.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// API contract violations: stepping a finished episode, empty rollout, ...
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qa3c
