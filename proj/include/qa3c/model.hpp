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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qa3c/graph.hpp"
#include "qa3c/nn.hpp"
#include "qa3c/rng.hpp"
#include "qa3c/vqc.hpp"

namespace qa3c {

enum class Variant { quantum, classical };

const char *to_string(Variant variant);
Variant variant_from_string(const std::string &name);

struct EnvSpec {
    std::string name;
    int obs_dim = 0;
    int n_actions = 0;
    int max_steps = 0;
    std::optional<double> reward_threshold;
};

/// Dressed core: a linear layer in front (obs -> width), the VQC (or its
/// same-width classical stand-in), and a linear head behind. Actor and
/// critic are two independent instances with disjoint parameters.
struct HybridModel {
    Variant variant = Variant::quantum;
    LinearLayer pre;
    VqcLayerSpec core_vqc;    // quantum variant
    LinearLayer core_linear;  // classical variant
    LinearLayer post;

    int width() const { return pre.out_dim; }
    int head_dim() const { return post.out_dim; }

    /// Visits (name, values) for every live parameter tensor, in a fixed
    /// order: pre.weight, pre.bias, core..., post.weight, post.bias.
    template <typename F> void for_each_param(F &&f) {
        f("pre.weight", pre.weight);
        f("pre.bias", pre.bias);
        if (variant == Variant::quantum) {
            f("core.weights", core_vqc.weights);
        } else {
            f("core.weight", core_linear.weight);
            f("core.bias", core_linear.bias);
        }
        f("post.weight", post.weight);
        f("post.bias", post.bias);
    }

    template <typename F> void for_each_param(F &&f) const {
        const_cast<HybridModel *>(this)->for_each_param(
            [&](const std::string &name, const std::vector<double> &values) {
                f(name, values);
            });
    }
};

/// Builds actor and critic for an environment. Linear weights start uniform
/// in +-1/sqrt(in_dim) with zero biases; VQC angles start uniform in
/// (-pi, pi).
std::pair<HybridModel, HybridModel> build_actor_critic(const EnvSpec &env,
                                                       Variant variant,
                                                       Rng &rng,
                                                       int n_qubits = 8,
                                                       int n_layers = 2);

struct ParamCounts {
    long classical = 0;
    long quantum = 0;
    long total = 0;
};

ParamCounts count_params(const HybridModel &actor, const HybridModel &critic);

/// Raw head outputs: post(core(pre(obs))).
std::vector<double> model_forward(const HybridModel &model,
                                  std::span<const double> obs);

/// softmax over the actor head; always a valid distribution.
std::vector<double> policy_forward(const HybridModel &actor,
                                   std::span<const double> obs);

double value_forward(const HybridModel &critic, std::span<const double> obs);

/// Categorical sample, deterministic given the rng state.
int sample_action(std::span<const double> probs, Rng &rng);

/// Graph plumbing: registers a model's parameters as graph leaves and wires
/// the forward pass up to the head logits.
struct ModelParamNodes {
    Graph::NodeId pre_w = -1;
    Graph::NodeId pre_b = -1;
    Graph::NodeId core_w = -1;
    Graph::NodeId core_b = -1;
    Graph::NodeId post_w = -1;
    Graph::NodeId post_b = -1;
};

ModelParamNodes register_model_params(Graph &graph, const HybridModel &model);
Graph::NodeId model_logits(Graph &graph, const HybridModel &model,
                           const ModelParamNodes &params, Graph::NodeId obs,
                           VqcGradMethod method = VqcGradMethod::adjoint);

} // namespace qa3c
