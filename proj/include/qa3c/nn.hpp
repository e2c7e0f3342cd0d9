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

#include <span>
#include <vector>

namespace qa3c {

/// Dense affine layer y = W x + b with row-major weight storage.
struct LinearLayer {
    int out_dim = 0;
    int in_dim = 0;
    std::vector<double> weight; // out_dim x in_dim, row-major
    std::vector<double> bias;   // out_dim

    static LinearLayer zeros(int out_dim, int in_dim);
    int param_count() const { return out_dim * in_dim + out_dim; }
};

std::vector<double> linear_forward(const LinearLayer &layer,
                                   std::span<const double> x);

/// Numerically stable softmax (max-subtracted). Throws NumericError on
/// non-finite input.
std::vector<double> softmax(std::span<const double> logits);

} // namespace qa3c
