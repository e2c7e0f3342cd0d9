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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qa3c/env/env.hpp"
#include "qa3c/graph.hpp"
#include "qa3c/model.hpp"

namespace qa3c {

struct TrainConfig {
    int sync_interval = 5; // steps between gradient uploads (S)
    double gamma = 0.9;
    double lr = 1e-4;
    double beta1 = 0.92;
    double beta2 = 0.999;
    double adam_epsilon = 1e-8;
    int workers = 1;
    long total_episodes = 0; // T_max
    std::uint64_t seed = 0;
    double entropy_coef = 0.0;
    double max_grad_norm = 0.0; // 0 disables clipping
};

/// Discounted returns, rear to front: R_i = r_i + gamma * R_{i+1}, seeded
/// with the bootstrap value past the last reward. Output is forward-ordered.
std::vector<double> compute_returns(std::span<const double> rewards,
                                    double bootstrap, double gamma);

struct Transition {
    std::vector<double> obs;
    int action = 0;
    double reward = 0.0;
};

/// Per-worker rollout since the last global sync, plus the bootstrap value
/// for the state after the final transition (0 at termination).
struct RolloutBuffer {
    std::vector<Transition> steps;
    double bootstrap = 0.0;

    void clear() {
        steps.clear();
        bootstrap = 0.0;
    }
};

/// Gradient of the summed actor loss -log pi(a_i|s_i) * (R_i - V(s_i)) (the
/// critic value is a constant there) and the summed critic loss
/// (R_i - V(s_i))^2, over the whole rollout.
std::pair<GradientBundle, GradientBundle>
accumulate_gradients(const RolloutBuffer &buffer, const HybridModel &actor,
                     const HybridModel &critic, double gamma,
                     double entropy_coef = 0.0);

/// Shared parameter server: actor/critic tensors, the Adam moments and step
/// counter shared by every worker, the global episode counter and the stop
/// flag. Snapshot reads and updates are serialized by one mutex, so a
/// snapshot always equals a state after a whole number of updates.
class GlobalStore {
  public:
    GlobalStore(HybridModel actor, HybridModel critic);

    struct Snapshot {
        HybridModel actor;
        HybridModel critic;
        std::uint64_t version = 0;
    };

    Snapshot snapshot() const;
    void apply_update(const GradientBundle &dtheta,
                      const GradientBundle &dtheta_v, const TrainConfig &cfg);

    std::uint64_t update_count() const;
    std::uint64_t adam_step() const;

    long episodes() const { return episodes_.load(); }
    /// Atomically claims the next global episode index, or -1 once t_max is
    /// reached. The counter equals the number of successful claims.
    long claim_episode(long t_max);

    bool stop_requested() const { return stop_.load(); }
    void request_stop() { stop_.store(true); }

    /// Invoked inside the update lock after every completed update; lets
    /// tests fingerprint each published parameter state.
    void set_update_observer(
        std::function<void(std::uint64_t, const HybridModel &,
                           const HybridModel &)>
            observer);

  private:
    mutable std::mutex mutex_;
    HybridModel actor_;
    HybridModel critic_;
    GradientBundle m_actor_, v_actor_, m_critic_, v_critic_;
    std::uint64_t t_adam_ = 0;
    std::uint64_t version_ = 0;
    std::atomic<long> episodes_{0};
    std::atomic<bool> stop_{false};
    std::function<void(std::uint64_t, const HybridModel &,
                       const HybridModel &)>
        observer_;
};

/// Shared-moment Adam step applied to both parameter sets under the store's
/// exclusive update right.
inline void adam_apply(GlobalStore &store, const GradientBundle &dtheta,
                       const GradientBundle &dtheta_v,
                       const TrainConfig &cfg) {
    store.apply_update(dtheta, dtheta_v, cfg);
}

struct EpisodeRecord {
    long global_episode = 0;
    int worker_id = 0;
    long steps = 0;
    double ep_return = 0.0;
    double ma100 = 0.0; // mean return of the most recent <= 100 episodes
    double wall_clock_s = 0.0;
};

/// Serialization point for episode records from concurrent workers. Claims
/// the episode index and writes the CSV row under one lock, so indices are
/// strictly increasing in the file.
class MetricsSink {
  public:
    explicit MetricsSink(std::ostream *csv);

    static void write_header(std::ostream &out);
    std::optional<EpisodeRecord> emit(GlobalStore &store, long t_max,
                                      int worker_id, long steps,
                                      double ep_return);
    std::vector<EpisodeRecord> records() const;

  private:
    mutable std::mutex mutex_;
    std::ostream *csv_;
    std::chrono::steady_clock::time_point start_;
    std::deque<double> window_;
    std::vector<EpisodeRecord> records_;
};

/// Everything train() needs beyond the models themselves.
struct RunSpec {
    TrainConfig cfg;
    std::string env_name;
    EnvOptions env_options;
    /// Optional early stop once the full-window ma100 reaches this value.
    std::optional<double> stop_at_ma100;
};

struct TrainResult {
    long episodes = 0;
    double final_ma100 = 0.0;
    double wall_seconds = 0.0;
    std::vector<EpisodeRecord> records;
    HybridModel actor;
    HybridModel critic;
};

/// One actor-learner: repeatedly copies the global parameters, rolls the
/// policy forward, and every sync_interval steps (or at episode end) turns
/// the rollout into gradients, applies them to the store, and refreshes its
/// local copy. Episode records flow through the sink until t_max is claimed.
void worker_loop(int worker_id, GlobalStore &store, MetricsSink &sink,
                 const RunSpec &run, Env &env, Rng &rng);

/// Spawns cfg.workers workers over private environment instances with
/// decorrelated sub-seeds, joins them, and returns the trained parameters
/// plus the full episode log. Streams CSV rows to `metrics_csv` if given.
TrainResult train(const RunSpec &run, HybridModel actor, HybridModel critic,
                  std::ostream *metrics_csv);

} // namespace qa3c
