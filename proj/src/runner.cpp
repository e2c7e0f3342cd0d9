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
#include "qa3c/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qa3c/checkpoint.hpp"
#include "qa3c/env/env.hpp"
#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string &path) {
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + path +
                      "': " + ec.message());
    }
}

} // namespace

TrainResult run_train(const RunConfig &config,
                      const std::string &init_checkpoint) {
    const EnvSpec env = make_env_spec(config.env, config.env_options());

    HybridModel actor;
    HybridModel critic;
    if (init_checkpoint.empty()) {
        Rng init_rng(derive_seed(config.seed, 0));
        std::tie(actor, critic) =
            build_actor_critic(env, config.variant, init_rng, config.n_qubits,
                               config.vqc_layers);
    } else {
        Checkpoint ckpt = load_checkpoint(init_checkpoint);
        if (ckpt.meta.variant != config.variant ||
            ckpt.meta.n_qubits != config.n_qubits ||
            ckpt.meta.n_layers != config.vqc_layers) {
            throw ConfigError("checkpoint '" + init_checkpoint +
                              "' does not match the configured model shape");
        }
        if (ckpt.actor.pre.in_dim != env.obs_dim ||
            ckpt.actor.head_dim() != env.n_actions) {
            throw ConfigError("checkpoint '" + init_checkpoint +
                              "' does not match env '" + config.env + "'");
        }
        actor = std::move(ckpt.actor);
        critic = std::move(ckpt.critic);
    }

    ensure_dir(config.out_dir);
    const std::string metrics_path = config.out_dir + "/metrics.csv";
    std::ofstream metrics(metrics_path);
    if (!metrics) {
        throw IoError("cannot write '" + metrics_path + "'");
    }
    {
        const std::string resolved_path = config.out_dir + "/config.resolved";
        std::ofstream resolved(resolved_path);
        if (!resolved) {
            throw IoError("cannot write '" + resolved_path + "'");
        }
        resolved << dump_config(config);
    }

    RunSpec run;
    run.cfg = config.train_config();
    run.env_name = config.env;
    run.env_options = config.env_options();
    TrainResult result =
        train(run, std::move(actor), std::move(critic), &metrics);
    metrics.close();

    CheckpointMeta meta;
    meta.env = config.env;
    meta.variant = config.variant;
    meta.n_qubits = config.n_qubits;
    meta.n_layers = config.vqc_layers;
    meta.seed = config.seed;
    save_checkpoint(config.out_dir + "/final.ckpt", meta, result.actor,
                    result.critic);
    return result;
}

EvalResult run_eval(const std::string &checkpoint_path,
                    const std::string &env_name, long episodes,
                    std::uint64_t seed, const std::string &out_csv) {
    if (episodes <= 0) {
        throw UsageError("eval: episodes must be >= 1");
    }
    Checkpoint ckpt = load_checkpoint(checkpoint_path);
    const std::unique_ptr<Env> env = make_env(env_name);
    if (ckpt.actor.pre.in_dim != env->spec().obs_dim ||
        ckpt.actor.head_dim() != env->spec().n_actions) {
        throw ConfigError("checkpoint '" + checkpoint_path +
                          "' does not match env '" + env_name + "'");
    }

    std::ofstream csv(out_csv);
    if (!csv) {
        throw IoError("cannot write '" + out_csv + "'");
    }
    csv << "episode,steps,return\n";

    Rng rng(seed);
    EvalResult result;
    for (long episode = 0; episode < episodes; ++episode) {
        std::vector<double> obs = env->reset(rng);
        double ep_return = 0.0;
        long steps = 0;
        for (;;) {
            const std::vector<double> probs = policy_forward(ckpt.actor, obs);
            const int action = static_cast<int>(
                std::max_element(probs.begin(), probs.end()) - probs.begin());
            StepResult sr = env->step(action);
            ep_return += sr.reward;
            ++steps;
            obs = std::move(sr.obs);
            if (sr.terminal || sr.truncated) {
                break;
            }
        }
        result.returns.push_back(ep_return);
        result.steps.push_back(steps);
        char line[96];
        std::snprintf(line, sizeof line, "%ld,%ld,%.17g\n", episode, steps,
                      ep_return);
        csv << line;
    }
    double sum = 0.0;
    for (double r : result.returns) {
        sum += r;
    }
    result.mean_return = sum / static_cast<double>(result.returns.size());
    return result;
}

} // namespace qa3c
