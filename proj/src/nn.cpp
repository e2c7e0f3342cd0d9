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
#include "qa3c/nn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qa3c/errors.hpp"

namespace qa3c {

LinearLayer LinearLayer::zeros(int out_dim, int in_dim) {
    LinearLayer l;
    l.out_dim = out_dim;
    l.in_dim = in_dim;
    l.weight.assign(static_cast<std::size_t>(out_dim) *
                        static_cast<std::size_t>(in_dim),
                    0.0);
    l.bias.assign(static_cast<std::size_t>(out_dim), 0.0);
    return l;
}

std::vector<double> linear_forward(const LinearLayer &layer,
                                   std::span<const double> x) {
    if (static_cast<int>(x.size()) != layer.in_dim) {
        throw ConfigError("linear_forward: expected input of size " +
                          std::to_string(layer.in_dim) + ", got " +
                          std::to_string(x.size()));
    }
    std::vector<double> y(static_cast<std::size_t>(layer.out_dim));
    for (int o = 0; o < layer.out_dim; ++o) {
        double acc = layer.bias[static_cast<std::size_t>(o)];
        const double *row =
            layer.weight.data() +
            static_cast<std::size_t>(o) * static_cast<std::size_t>(layer.in_dim);
        for (int i = 0; i < layer.in_dim; ++i) {
            acc += row[i] * x[static_cast<std::size_t>(i)];
        }
        y[static_cast<std::size_t>(o)] = acc;
    }
    return y;
}

std::vector<double> softmax(std::span<const double> logits) {
    if (logits.empty()) {
        throw ConfigError("softmax: empty input");
    }
    for (double v : logits) {
        if (!std::isfinite(v)) {
            throw NumericError("softmax: non-finite logit");
        }
    }
    const double max_logit = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - max_logit);
        sum += out[i];
    }
    for (double &v : out) {
        v /= sum;
    }
    return out;
}

} // namespace qa3c
