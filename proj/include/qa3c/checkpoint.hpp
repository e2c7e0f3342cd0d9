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

#include "qa3c/model.hpp"

namespace qa3c {

struct CheckpointMeta {
    std::string env;
    Variant variant = Variant::quantum;
    int n_qubits = 8;
    int n_layers = 2;
    std::uint64_t seed = 0;
};

struct Checkpoint {
    CheckpointMeta meta;
    HybridModel actor;
    HybridModel critic;
};

/// Text checkpoint: one JSON document mapping "actor.pre.weight"-style names
/// to nested arrays of decimal numbers, plus a "meta" block. Doubles are
/// serialized shortest-round-trip, so load(save(x)) is bit-lossless.
void save_checkpoint(const std::string &path, const CheckpointMeta &meta,
                     const HybridModel &actor, const HybridModel &critic);

Checkpoint load_checkpoint(const std::string &path);

} // namespace qa3c
