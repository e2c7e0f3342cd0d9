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
#include "qa3c/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>
#include <utility>

#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

GradientBundle zero_like(const HybridModel &model) {
    GradientBundle bundle;
    model.for_each_param(
        [&](const std::string &name, const std::vector<double> &values) {
            bundle.emplace(name, std::vector<double>(values.size(), 0.0));
        });
    return bundle;
}

void clip_bundle(GradientBundle &bundle, double max_norm) {
    double sq = 0.0;
    for (const auto &[name, grad] : bundle) {
        for (double g : grad) {
            sq += g * g;
        }
    }
    const double norm = std::sqrt(sq);
    if (norm <= max_norm || norm == 0.0) {
        return;
    }
    const double factor = max_norm / norm;
    for (auto &[name, grad] : bundle) {
        for (double &g : grad) {
            g *= factor;
        }
    }
}

void validate_config(const TrainConfig &cfg) {
    if (cfg.sync_interval < 1) {
        throw ConfigError("sync_interval must be >= 1");
    }
    if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) {
        throw ConfigError("gamma must be in (0, 1]");
    }
    if (cfg.workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
    if (cfg.total_episodes < 0) {
        throw ConfigError("total_episodes must be >= 0");
    }
    if (cfg.lr <= 0.0) {
        throw ConfigError("lr must be positive");
    }
}

} // namespace

std::vector<double> compute_returns(std::span<const double> rewards,
                                    double bootstrap, double gamma) {
    std::vector<double> returns(rewards.size());
    double r = bootstrap;
    for (std::size_t i = rewards.size(); i-- > 0;) {
        r = rewards[i] + gamma * r;
        returns[i] = r;
    }
    return returns;
}

std::pair<GradientBundle, GradientBundle>
accumulate_gradients(const RolloutBuffer &buffer, const HybridModel &actor,
                     const HybridModel &critic, double gamma,
                     double entropy_coef) {
    if (buffer.steps.empty()) {
        throw UsageError("accumulate_gradients: empty rollout buffer");
    }

    std::vector<double> rewards(buffer.steps.size());
    for (std::size_t i = 0; i < buffer.steps.size(); ++i) {
        rewards[i] = buffer.steps[i].reward;
    }
    const std::vector<double> returns =
        compute_returns(rewards, buffer.bootstrap, gamma);

    // Critic first: its forward values double as the V(s_i) baselines.
    Graph critic_graph;
    const ModelParamNodes critic_params =
        register_model_params(critic_graph, critic);
    std::vector<double> baselines(buffer.steps.size(), 0.0);
    Graph::NodeId critic_loss = -1;
    for (std::size_t i = 0; i < buffer.steps.size(); ++i) {
        const Transition &t = buffer.steps[i];
        const Graph::NodeId obs = critic_graph.constant(t.obs);
        const Graph::NodeId value =
            model_logits(critic_graph, critic, critic_params, obs);
        baselines[i] = critic_graph.value(value)[0];
        const Graph::NodeId residual =
            critic_graph.sub(critic_graph.constant({returns[i]}), value);
        const Graph::NodeId term = critic_graph.square(residual);
        critic_loss =
            (critic_loss < 0) ? term : critic_graph.add(critic_loss, term);
    }
    GradientBundle dtheta_v = critic_graph.backward(critic_loss);

    // Actor: the baseline enters only through the constant advantage.
    Graph actor_graph;
    const ModelParamNodes actor_params =
        register_model_params(actor_graph, actor);
    Graph::NodeId actor_loss = -1;
    for (std::size_t i = 0; i < buffer.steps.size(); ++i) {
        const Transition &t = buffer.steps[i];
        const double advantage = returns[i] - baselines[i];
        const Graph::NodeId obs = actor_graph.constant(t.obs);
        const Graph::NodeId logits =
            model_logits(actor_graph, actor, actor_params, obs);
        const Graph::NodeId probs = actor_graph.softmax_node(logits);
        const Graph::NodeId log_probs = actor_graph.log(probs);
        Graph::NodeId term = actor_graph.scale(
            actor_graph.pick(log_probs, t.action), -advantage);
        if (entropy_coef != 0.0) {
            // entropy bonus -coef * H(pi) = +coef * sum(p log p)
            const Graph::NodeId plogp = actor_graph.mul(probs, log_probs);
            term = actor_graph.add(
                term,
                actor_graph.scale(actor_graph.sum(plogp), entropy_coef));
        }
        actor_loss = (actor_loss < 0) ? term : actor_graph.add(actor_loss, term);
    }
    GradientBundle dtheta = actor_graph.backward(actor_loss);

    return {std::move(dtheta), std::move(dtheta_v)};
}

GlobalStore::GlobalStore(HybridModel actor, HybridModel critic)
    : actor_(std::move(actor)), critic_(std::move(critic)) {
    m_actor_ = zero_like(actor_);
    v_actor_ = zero_like(actor_);
    m_critic_ = zero_like(critic_);
    v_critic_ = zero_like(critic_);
}

GlobalStore::Snapshot GlobalStore::snapshot() const {
    std::lock_guard lock(mutex_);
    return {actor_, critic_, version_};
}

std::uint64_t GlobalStore::update_count() const {
    std::lock_guard lock(mutex_);
    return version_;
}

std::uint64_t GlobalStore::adam_step() const {
    std::lock_guard lock(mutex_);
    return t_adam_;
}

long GlobalStore::claim_episode(long t_max) {
    long current = episodes_.load();
    while (current < t_max) {
        if (episodes_.compare_exchange_weak(current, current + 1)) {
            return current + 1;
        }
    }
    return -1;
}

void GlobalStore::set_update_observer(
    std::function<void(std::uint64_t, const HybridModel &,
                       const HybridModel &)>
        observer) {
    std::lock_guard lock(mutex_);
    observer_ = std::move(observer);
}

void GlobalStore::apply_update(const GradientBundle &dtheta,
                               const GradientBundle &dtheta_v,
                               const TrainConfig &cfg) {
    std::lock_guard lock(mutex_);
    ++t_adam_;
    const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t_adam_));
    const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t_adam_));

    auto step = [&](HybridModel &model, GradientBundle &m, GradientBundle &v,
                    const GradientBundle &grads) {
        model.for_each_param([&](const std::string &name,
                                 std::vector<double> &values) {
            const auto it = grads.find(name);
            if (it == grads.end()) {
                throw ConfigError("adam: gradient bundle is missing '" + name +
                                  "'");
            }
            const std::vector<double> &g = it->second;
            if (g.size() != values.size()) {
                throw ConfigError("adam: gradient shape mismatch for '" +
                                  name + "'");
            }
            std::vector<double> &m_t = m.at(name);
            std::vector<double> &v_t = v.at(name);
            for (std::size_t i = 0; i < values.size(); ++i) {
                m_t[i] = cfg.beta1 * m_t[i] + (1.0 - cfg.beta1) * g[i];
                v_t[i] = cfg.beta2 * v_t[i] + (1.0 - cfg.beta2) * g[i] * g[i];
                values[i] -= cfg.lr * (m_t[i] / bias1) /
                             (std::sqrt(v_t[i] / bias2) + cfg.adam_epsilon);
            }
        });
    };
    step(actor_, m_actor_, v_actor_, dtheta);
    step(critic_, m_critic_, v_critic_, dtheta_v);
    ++version_;
    if (observer_) {
        observer_(version_, actor_, critic_);
    }
}

MetricsSink::MetricsSink(std::ostream *csv)
    : csv_(csv), start_(std::chrono::steady_clock::now()) {}

void MetricsSink::write_header(std::ostream &out) {
    out << "global_episode,worker_id,steps,return,ma100,wall_clock_s\n";
}

std::optional<EpisodeRecord> MetricsSink::emit(GlobalStore &store, long t_max,
                                               int worker_id, long steps,
                                               double ep_return) {
    std::lock_guard lock(mutex_);
    const long index = store.claim_episode(t_max);
    if (index < 0) {
        return std::nullopt;
    }
    window_.push_back(ep_return);
    if (window_.size() > 100) {
        window_.pop_front();
    }
    // Fresh summation keeps the stored column in step with any offline
    // recomputation even over very long runs.
    double sum = 0.0;
    for (double r : window_) {
        sum += r;
    }
    EpisodeRecord rec;
    rec.global_episode = index;
    rec.worker_id = worker_id;
    rec.steps = steps;
    rec.ep_return = ep_return;
    rec.ma100 = sum / static_cast<double>(window_.size());
    rec.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    records_.push_back(rec);
    if (csv_ != nullptr) {
        char line[160];
        std::snprintf(line, sizeof line, "%ld,%d,%ld,%.17g,%.17g,%.3f\n",
                      rec.global_episode, rec.worker_id, rec.steps,
                      rec.ep_return, rec.ma100, rec.wall_clock_s);
        (*csv_) << line;
    }
    return rec;
}

std::vector<EpisodeRecord> MetricsSink::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

void worker_loop(int worker_id, GlobalStore &store, MetricsSink &sink,
                 const RunSpec &run, Env &env, Rng &rng) {
    const TrainConfig &cfg = run.cfg;
    GlobalStore::Snapshot local = store.snapshot();
    RolloutBuffer buffer;

    while (!store.stop_requested() &&
           store.episodes() < cfg.total_episodes) {
        std::vector<double> obs = env.reset(rng);
        double ep_return = 0.0;
        long steps = 0;
        buffer.clear();
        bool finished = false;

        while (!finished) {
            if (store.stop_requested()) {
                return;
            }
            const std::vector<double> probs = policy_forward(local.actor, obs);
            const int action = sample_action(probs, rng);
            StepResult result = env.step(action);
            buffer.steps.push_back({std::move(obs), action, result.reward});
            ep_return += result.reward;
            ++steps;
            finished = result.terminal || result.truncated;

            if (static_cast<int>(buffer.steps.size()) >= cfg.sync_interval ||
                finished) {
                // Truncation is not termination: bootstrap from the critic.
                buffer.bootstrap =
                    result.terminal ? 0.0
                                    : value_forward(local.critic, result.obs);
                auto [dtheta, dtheta_v] = accumulate_gradients(
                    buffer, local.actor, local.critic, cfg.gamma,
                    cfg.entropy_coef);
                if (cfg.max_grad_norm > 0.0) {
                    clip_bundle(dtheta, cfg.max_grad_norm);
                    clip_bundle(dtheta_v, cfg.max_grad_norm);
                }
                adam_apply(store, dtheta, dtheta_v, cfg);
                local = store.snapshot();
                buffer.clear();
            }
            obs = std::move(result.obs);
        }

        const std::optional<EpisodeRecord> rec =
            sink.emit(store, cfg.total_episodes, worker_id, steps, ep_return);
        if (!rec) {
            store.request_stop();
            return;
        }
        if (run.stop_at_ma100 && rec->global_episode >= 100 &&
            rec->ma100 >= *run.stop_at_ma100) {
            store.request_stop();
            return;
        }
    }
}

TrainResult train(const RunSpec &run, HybridModel actor, HybridModel critic,
                  std::ostream *metrics_csv) {
    validate_config(run.cfg);
    // Fail before spawning anything if the environment name is bad.
    make_env(run.env_name, run.env_options);

    GlobalStore store(std::move(actor), std::move(critic));
    MetricsSink sink(metrics_csv);
    if (metrics_csv != nullptr) {
        MetricsSink::write_header(*metrics_csv);
    }
    const auto start = std::chrono::steady_clock::now();

    if (run.cfg.total_episodes > 0) {
        const int n_workers = run.cfg.workers;
        std::vector<std::unique_ptr<Env>> envs;
        std::vector<Rng> rngs;
        envs.reserve(static_cast<std::size_t>(n_workers));
        rngs.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            envs.push_back(make_env(run.env_name, run.env_options));
            rngs.emplace_back(derive_seed(run.cfg.seed,
                                          static_cast<std::uint64_t>(w) + 1));
        }

        std::vector<std::exception_ptr> failures(
            static_cast<std::size_t>(n_workers));
        {
            std::vector<std::jthread> threads;
            threads.reserve(static_cast<std::size_t>(n_workers));
            for (int w = 0; w < n_workers; ++w) {
                threads.emplace_back([&, w] {
                    try {
                        worker_loop(w, store, sink, run, *envs[w], rngs[w]);
                    } catch (...) {
                        failures[static_cast<std::size_t>(w)] =
                            std::current_exception();
                        store.request_stop();
                    }
                });
            }
        }
        for (const std::exception_ptr &failure : failures) {
            if (failure) {
                std::rethrow_exception(failure);
            }
        }
    }

    TrainResult result;
    result.records = sink.records();
    result.episodes = store.episodes();
    result.final_ma100 =
        result.records.empty() ? 0.0 : result.records.back().ma100;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    GlobalStore::Snapshot final_state = store.snapshot();
    result.actor = std::move(final_state.actor);
    result.critic = std::move(final_state.critic);
    return result;
}

} // namespace qa3c
