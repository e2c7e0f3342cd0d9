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

#include "qa3c/config.hpp"
#include "qa3c/trainer.hpp"

namespace qa3c {

/// Runs a full training job: writes metrics.csv, config.resolved, and
/// final.ckpt into config.out_dir. An optional checkpoint path seeds the
/// initial parameters instead of a fresh initialization.
TrainResult run_train(const RunConfig &config,
                      const std::string &init_checkpoint = {});

struct EvalResult {
    double mean_return = 0.0;
    std::vector<double> returns;
    std::vector<long> steps;
};

/// Greedy-argmax rollouts of a checkpointed policy (ties break toward the
/// lowest action index). Writes one line per episode to `out_csv`.
EvalResult run_eval(const std::string &checkpoint_path,
                    const std::string &env_name, long episodes,
                    std::uint64_t seed, const std::string &out_csv);

} // namespace qa3c
