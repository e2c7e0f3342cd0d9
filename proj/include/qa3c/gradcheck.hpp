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

#include "qa3c/graph.hpp"
#include "qa3c/model.hpp"

namespace qa3c {

/// Worst pairwise deviation between two gradient bundles with identical
/// keys. `max_abs` is the plain |a - b| maximum; `max_scaled` divides by
/// max(1, |a|, |b|), the usual floor that keeps near-zero gradients from
/// blowing up a relative comparison.
struct BundleDeviation {
    double max_abs = 0.0;
    double max_scaled = 0.0;
    std::string worst_param;
};

BundleDeviation bundle_deviation(const GradientBundle &a,
                                 const GradientBundle &b);

struct GradCheckReport {
    std::string env;
    Variant variant = Variant::quantum;
    long params_checked = 0;
    double max_abs_adjoint_vs_shift = 0.0; // quantum only
    double max_scaled_vs_fd = 0.0;
    std::string worst_param;
    double tol_pair = 1e-8;
    double tol_fd = 1e-4;
    bool pass = false;

    std::string text() const;
};

/// Builds the environment's actor/critic pair, draws a random observation
/// and upstream vector, and compares adjoint, parameter-shift (quantum
/// only), and central finite-difference gradients over every parameter of
/// both models.
GradCheckReport run_gradcheck(const std::string &env_name, Variant variant,
                              std::uint64_t seed, double tol_pair = 1e-8,
                              double tol_fd = 1e-4);

} // namespace qa3c
