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

#include <memory>
#include <string>
#include <vector>

#include "qa3c/model.hpp"
#include "qa3c/rng.hpp"

namespace qa3c {

/// One transition: next observation, scalar reward, environment-defined
/// termination, and step-limit truncation. Truncation is reported separately
/// so the trainer can bootstrap instead of zeroing the tail return.
struct StepResult {
    std::vector<double> obs;
    double reward = 0.0;
    bool terminal = false;
    bool truncated = false;
};

class Env {
  public:
    virtual ~Env() = default;
    virtual const EnvSpec &spec() const = 0;
    virtual std::vector<double> reset(Rng &rng) = 0;
    virtual StepResult step(int action) = 0;
};

struct EnvOptions {
    int max_steps = 0; // 0 keeps the per-environment default
    double cartpole_angle_limit_deg = 12.0;
};

/// Names: "cartpole", "acrobot", "crossing-s9n1", "crossing-s9n2",
/// "crossing-s9n3".
std::unique_ptr<Env> make_env(const std::string &name,
                              const EnvOptions &options = {});
EnvSpec make_env_spec(const std::string &name, const EnvOptions &options = {});

} // namespace qa3c
