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
#include "qa3c/gradcheck.hpp"

#include <cmath>
#include <sstream>

#include "qa3c/env/env.hpp"
#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

constexpr double kFdStep = 1e-4;

// Scalar probes the sweep differentiates: the upstream-weighted policy for
// the actor, the plain value for the critic.
double actor_probe(const HybridModel &actor, std::span<const double> obs,
                   std::span<const double> upstream) {
    const std::vector<double> probs = policy_forward(actor, obs);
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += upstream[i] * probs[i];
    }
    return acc;
}

GradientBundle analytic_bundle(const HybridModel &model,
                               std::span<const double> obs,
                               std::span<const double> upstream,
                               bool is_actor, VqcGradMethod method) {
    Graph graph;
    const ModelParamNodes params = register_model_params(graph, model);
    const Graph::NodeId obs_node =
        graph.constant(std::vector<double>(obs.begin(), obs.end()));
    const Graph::NodeId head =
        model_logits(graph, model, params, obs_node, method);
    Graph::NodeId root;
    if (is_actor) {
        const Graph::NodeId probs = graph.softmax_node(head);
        const Graph::NodeId weighted = graph.mul(
            probs, graph.constant(
                       std::vector<double>(upstream.begin(), upstream.end())));
        root = graph.sum(weighted);
    } else {
        root = graph.pick(head, 0);
    }
    return graph.backward(root);
}

template <typename Probe>
GradientBundle fd_bundle(const HybridModel &model, Probe &&probe) {
    GradientBundle bundle;
    HybridModel perturbed = model;
    perturbed.for_each_param([&](const std::string &name,
                                 std::vector<double> &values) {
        std::vector<double> grad(values.size(), 0.0);
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double saved = values[i];
            values[i] = saved + kFdStep;
            const double plus = probe(perturbed);
            values[i] = saved - kFdStep;
            const double minus = probe(perturbed);
            values[i] = saved;
            grad[i] = (plus - minus) / (2.0 * kFdStep);
        }
        bundle.emplace(name, std::move(grad));
    });
    return bundle;
}

void prefix_keys(GradientBundle &bundle, const std::string &prefix) {
    GradientBundle renamed;
    for (auto &[name, grad] : bundle) {
        renamed.emplace(prefix + name, std::move(grad));
    }
    bundle = std::move(renamed);
}

void merge_into(GradientBundle &into, GradientBundle from) {
    for (auto &[name, grad] : from) {
        into.emplace(name, std::move(grad));
    }
}

} // namespace

BundleDeviation bundle_deviation(const GradientBundle &a,
                                 const GradientBundle &b) {
    if (a.size() != b.size()) {
        throw UsageError("bundle_deviation: key sets differ");
    }
    BundleDeviation dev;
    for (const auto &[name, ga] : a) {
        const auto it = b.find(name);
        if (it == b.end() || it->second.size() != ga.size()) {
            throw UsageError("bundle_deviation: mismatched parameter '" +
                             name + "'");
        }
        for (std::size_t i = 0; i < ga.size(); ++i) {
            const double va = ga[i];
            const double vb = it->second[i];
            const double abs_err = std::abs(va - vb);
            const double scaled =
                abs_err / std::max({1.0, std::abs(va), std::abs(vb)});
            if (scaled > dev.max_scaled ||
                (scaled == dev.max_scaled && abs_err > dev.max_abs)) {
                dev.worst_param = name + "[" + std::to_string(i) + "]";
            }
            dev.max_abs = std::max(dev.max_abs, abs_err);
            dev.max_scaled = std::max(dev.max_scaled, scaled);
        }
    }
    return dev;
}

std::string GradCheckReport::text() const {
    std::ostringstream out;
    out << (pass ? "PASS" : "FAIL") << " gradcheck env=" << env
        << " variant=" << to_string(variant)
        << " params_checked=" << params_checked << "\n";
    if (variant == Variant::quantum) {
        out << "  adjoint vs parameter-shift: max |delta| = "
            << max_abs_adjoint_vs_shift << " (tol " << tol_pair << ")\n";
    }
    out << "  analytic vs finite differences: max scaled error = "
        << max_scaled_vs_fd << " (tol " << tol_fd << ")\n";
    if (!pass) {
        out << "  worst parameter: " << worst_param << "\n";
    }
    return out.str();
}

GradCheckReport run_gradcheck(const std::string &env_name, Variant variant,
                              std::uint64_t seed, double tol_pair,
                              double tol_fd) {
    const EnvSpec env = make_env_spec(env_name);
    Rng rng(derive_seed(seed, 0));
    auto [actor, critic] = build_actor_critic(env, variant, rng);

    std::vector<double> obs(static_cast<std::size_t>(env.obs_dim));
    for (double &v : obs) {
        v = rng.uniform(-1.0, 1.0);
    }
    std::vector<double> upstream(static_cast<std::size_t>(env.n_actions));
    for (double &v : upstream) {
        v = rng.uniform(-1.0, 1.0);
    }

    GradCheckReport report;
    report.env = env_name;
    report.variant = variant;
    report.tol_pair = tol_pair;
    report.tol_fd = tol_fd;

    // Adjoint-backed gradients for both models.
    GradientBundle adjoint = analytic_bundle(actor, obs, upstream, true,
                                             VqcGradMethod::adjoint);
    prefix_keys(adjoint, "actor.");
    {
        GradientBundle critic_adj = analytic_bundle(
            critic, obs, upstream, false, VqcGradMethod::adjoint);
        prefix_keys(critic_adj, "critic.");
        merge_into(adjoint, std::move(critic_adj));
    }

    // Finite differences over every parameter of both models.
    GradientBundle fd = fd_bundle(actor, [&](const HybridModel &m) {
        return actor_probe(m, obs, upstream);
    });
    prefix_keys(fd, "actor.");
    {
        GradientBundle critic_fd = fd_bundle(critic, [&](const HybridModel &m) {
            return value_forward(m, obs);
        });
        prefix_keys(critic_fd, "critic.");
        merge_into(fd, std::move(critic_fd));
    }

    long checked = 0;
    for (const auto &[name, grad] : adjoint) {
        checked += static_cast<long>(grad.size());
    }
    report.params_checked = checked;

    const BundleDeviation vs_fd = bundle_deviation(adjoint, fd);
    report.max_scaled_vs_fd = vs_fd.max_scaled;
    report.worst_param = vs_fd.worst_param;
    bool pass = vs_fd.max_scaled < tol_fd;

    if (variant == Variant::quantum) {
        GradientBundle shift = analytic_bundle(actor, obs, upstream, true,
                                               VqcGradMethod::param_shift);
        prefix_keys(shift, "actor.");
        {
            GradientBundle critic_shift = analytic_bundle(
                critic, obs, upstream, false, VqcGradMethod::param_shift);
            prefix_keys(critic_shift, "critic.");
            merge_into(shift, std::move(critic_shift));
        }
        const BundleDeviation pair = bundle_deviation(adjoint, shift);
        report.max_abs_adjoint_vs_shift = pair.max_abs;
        if (pair.max_abs >= tol_pair) {
            pass = false;
            report.worst_param = pair.worst_param;
        }
        const BundleDeviation shift_vs_fd = bundle_deviation(shift, fd);
        if (shift_vs_fd.max_scaled >= tol_fd) {
            pass = false;
            report.worst_param = shift_vs_fd.worst_param;
        }
        report.max_scaled_vs_fd =
            std::max(report.max_scaled_vs_fd, shift_vs_fd.max_scaled);
    }

    report.pass = pass;
    return report;
}

} // namespace qa3c
