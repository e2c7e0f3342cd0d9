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

#include <cstdint>
#include <string>
#include <vector>

#include "qa3c/model.hpp"
#include "qa3c/trainer.hpp"

namespace qa3c {

/// Fully resolved run settings. env, variant, and total_episodes are
/// required; everything else has a default. workers = 0 resolves to the
/// available cores and max_steps_per_episode = 0 to the environment default
/// at parse time, so a parsed config is always concrete.
struct RunConfig {
    std::string env;
    Variant variant = Variant::quantum;
    long total_episodes = 0;
    int sync_interval = 5;
    double gamma = 0.9;
    double lr = 1e-4;
    double beta1 = 0.92;
    double beta2 = 0.999;
    double adam_epsilon = 1e-8;
    int workers = 0;
    std::uint64_t seed = 0;
    double entropy_coef = 0.0;
    double max_grad_norm = 0.0; // 0 = off
    int n_qubits = 8;
    int vqc_layers = 2;
    int max_steps_per_episode = 0;
    std::string out_dir = "out";
    double cartpole_angle_limit_deg = 12.0;

    friend bool operator==(const RunConfig &, const RunConfig &) = default;

    TrainConfig train_config() const;
    EnvOptions env_options() const;
};

/// Parses `key = value` lines ('#' starts a comment) and applies
/// "key=value" override strings on top. Unknown keys, bad values, and
/// missing required keys raise ConfigError naming the key and line.
RunConfig parse_config(const std::string &text,
                       const std::vector<std::string> &overrides = {});

/// Full key=value dump; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig &config);

} // namespace qa3c
