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
#include "qa3c/model.hpp"

#include <cmath>
#include <sstream>

#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

constexpr double kPi = 3.14159265358979323846;

LinearLayer init_linear(int out_dim, int in_dim, Rng &rng) {
    LinearLayer l = LinearLayer::zeros(out_dim, in_dim);
    const double bound = 1.0 / std::sqrt(static_cast<double>(in_dim));
    for (double &w : l.weight) {
        w = rng.uniform(-bound, bound);
    }
    return l;
}

HybridModel build_model(const EnvSpec &env, Variant variant, int head_dim,
                        Rng &rng, int n_qubits, int n_layers) {
    HybridModel m;
    m.variant = variant;
    m.pre = init_linear(n_qubits, env.obs_dim, rng);
    if (variant == Variant::quantum) {
        m.core_vqc = VqcLayerSpec::zeros(n_qubits, n_layers);
        for (double &w : m.core_vqc.weights) {
            w = rng.uniform(-kPi, kPi);
        }
    } else {
        m.core_linear = init_linear(n_qubits, n_qubits, rng);
    }
    m.post = init_linear(head_dim, n_qubits, rng);
    return m;
}

std::string param_norms_summary(const HybridModel &model) {
    std::ostringstream os;
    model.for_each_param(
        [&](const std::string &name, const std::vector<double> &values) {
            double sq = 0.0;
            for (double v : values) {
                sq += v * v;
            }
            os << " " << name << "|" << std::sqrt(sq);
        });
    return os.str();
}

} // namespace

const char *to_string(Variant variant) {
    return variant == Variant::quantum ? "quantum" : "classical";
}

Variant variant_from_string(const std::string &name) {
    if (name == "quantum") {
        return Variant::quantum;
    }
    if (name == "classical") {
        return Variant::classical;
    }
    throw ConfigError("unknown variant '" + name +
                      "' (expected quantum or classical)");
}

std::pair<HybridModel, HybridModel> build_actor_critic(const EnvSpec &env,
                                                       Variant variant,
                                                       Rng &rng, int n_qubits,
                                                       int n_layers) {
    if (env.obs_dim < 1 || env.n_actions < 2) {
        throw ConfigError("build_actor_critic: invalid environment shape");
    }
    HybridModel actor =
        build_model(env, variant, env.n_actions, rng, n_qubits, n_layers);
    HybridModel critic = build_model(env, variant, 1, rng, n_qubits, n_layers);
    return {std::move(actor), std::move(critic)};
}

ParamCounts count_params(const HybridModel &actor, const HybridModel &critic) {
    ParamCounts counts;
    for (const HybridModel *m : {&actor, &critic}) {
        counts.classical += m->pre.param_count() + m->post.param_count();
        if (m->variant == Variant::quantum) {
            counts.quantum += m->core_vqc.weight_count();
        } else {
            counts.classical += m->core_linear.param_count();
        }
    }
    counts.total = counts.classical + counts.quantum;
    return counts;
}

std::vector<double> model_forward(const HybridModel &model,
                                  std::span<const double> obs) {
    const std::vector<double> hidden = linear_forward(model.pre, obs);
    const std::vector<double> core =
        model.variant == Variant::quantum
            ? vqc_forward(model.core_vqc, hidden)
            : linear_forward(model.core_linear, hidden);
    return linear_forward(model.post, core);
}

std::vector<double> policy_forward(const HybridModel &actor,
                                   std::span<const double> obs) {
    std::vector<double> probs;
    try {
        probs = softmax(model_forward(actor, obs));
    } catch (const NumericError &e) {
        throw NumericError(std::string(e.what()) +
                           "; actor parameter norms:" +
                           param_norms_summary(actor));
    }
    return probs;
}

double value_forward(const HybridModel &critic, std::span<const double> obs) {
    const std::vector<double> head = model_forward(critic, obs);
    if (head.size() != 1) {
        throw ConfigError("value_forward: critic head must be scalar");
    }
    if (!std::isfinite(head[0])) {
        throw NumericError("value_forward: non-finite value; critic "
                           "parameter norms:" +
                           param_norms_summary(critic));
    }
    return head[0];
}

int sample_action(std::span<const double> probs, Rng &rng) {
    if (probs.empty()) {
        throw NumericError("sample_action: empty distribution");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw NumericError("sample_action: invalid probability");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
        throw NumericError("sample_action: probabilities sum to " +
                           std::to_string(sum));
    }
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cumulative += probs[i];
        if (u < cumulative) {
            return static_cast<int>(i);
        }
    }
    return static_cast<int>(probs.size()) - 1;
}

ModelParamNodes register_model_params(Graph &graph, const HybridModel &model) {
    ModelParamNodes nodes;
    nodes.pre_w = graph.parameter("pre.weight", model.pre.weight);
    nodes.pre_b = graph.parameter("pre.bias", model.pre.bias);
    if (model.variant == Variant::quantum) {
        nodes.core_w = graph.parameter("core.weights", model.core_vqc.weights);
    } else {
        nodes.core_w = graph.parameter("core.weight", model.core_linear.weight);
        nodes.core_b = graph.parameter("core.bias", model.core_linear.bias);
    }
    nodes.post_w = graph.parameter("post.weight", model.post.weight);
    nodes.post_b = graph.parameter("post.bias", model.post.bias);
    return nodes;
}

Graph::NodeId model_logits(Graph &graph, const HybridModel &model,
                           const ModelParamNodes &params, Graph::NodeId obs,
                           VqcGradMethod method) {
    const Graph::NodeId hidden =
        graph.linear(params.pre_w, params.pre_b, obs, model.pre.out_dim,
                     model.pre.in_dim);
    Graph::NodeId core;
    if (model.variant == Variant::quantum) {
        core = graph.vqc(params.core_w, hidden, model.core_vqc.n_qubits,
                         model.core_vqc.n_layers, method);
    } else {
        core = graph.linear(params.core_w, params.core_b, hidden,
                            model.core_linear.out_dim,
                            model.core_linear.in_dim);
    }
    return graph.linear(params.post_w, params.post_b, core,
                        model.post.out_dim, model.post.in_dim);
}

} // namespace qa3c
