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
#include "qa3c/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qa3c/config.hpp"
#include "qa3c/errors.hpp"
#include "qa3c/gradcheck.hpp"
#include "qa3c/runner.hpp"

namespace qa3c {

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int cmd_train(const std::string &config_path,
              const std::vector<std::string> &overrides,
              const std::string &init_checkpoint) {
    const RunConfig config = parse_config(read_file(config_path), overrides);
    const TrainResult result = run_train(config, init_checkpoint);
    std::printf("episodes=%ld final_ma100=%.6g wall_s=%.1f out_dir=%s\n",
                result.episodes, result.final_ma100, result.wall_seconds,
                config.out_dir.c_str());
    return static_cast<int>(ExitCode::ok);
}

int cmd_eval(const std::string &checkpoint, const std::string &env_name,
             long episodes, std::uint64_t seed, const std::string &out_csv) {
    const EvalResult result =
        run_eval(checkpoint, env_name, episodes, seed, out_csv);
    std::printf("mean_return=%.17g episodes=%ld per_episode_csv=%s\n",
                result.mean_return,
                static_cast<long>(result.returns.size()), out_csv.c_str());
    return static_cast<int>(ExitCode::ok);
}

int cmd_gradcheck(const std::string &env_name, const std::string &variant,
                  std::uint64_t seed) {
    const GradCheckReport report =
        run_gradcheck(env_name, variant_from_string(variant), seed);
    std::fputs(report.text().c_str(), stdout);
    return static_cast<int>(report.pass ? ExitCode::ok : ExitCode::tolerance);
}

} // namespace

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Asynchronous actor-critic training of dressed variational "
                 "quantum policies"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string init_checkpoint;
    CLI::App *train_cmd =
        app.add_subcommand("train", "Train per the given config file");
    train_cmd->add_option("--config", config_path, "key = value config file")
        ->required();
    train_cmd->add_option("--set", overrides,
                          "override a config key, e.g. --set gamma=0.99");
    train_cmd->add_option("--init-checkpoint", init_checkpoint,
                          "resume parameters from a checkpoint");

    std::string checkpoint;
    std::string env_name;
    long episodes = 0;
    std::uint64_t seed = 0;
    std::string eval_out = "eval.csv";
    CLI::App *eval_cmd =
        app.add_subcommand("eval", "Greedy rollouts of a checkpoint");
    eval_cmd->add_option("--checkpoint", checkpoint, "checkpoint file")
        ->required();
    eval_cmd->add_option("--env", env_name, "environment name")->required();
    eval_cmd->add_option("--episodes", episodes, "episode count")->required();
    eval_cmd->add_option("--seed", seed, "rng seed")->required();
    eval_cmd->add_option("--out", eval_out, "per-episode csv path");

    std::string gc_env;
    std::string gc_variant;
    std::uint64_t gc_seed = 0;
    CLI::App *gc_cmd = app.add_subcommand(
        "gradcheck",
        "Compare adjoint, parameter-shift, and finite-difference gradients");
    gc_cmd->add_option("--env", gc_env, "environment name")->required();
    gc_cmd->add_option("--variant", gc_variant, "quantum or classical")
        ->required();
    gc_cmd->add_option("--seed", gc_seed, "rng seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e); // prints help, exits 0
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return static_cast<int>(ExitCode::config);
    }

    try {
        if (train_cmd->parsed()) {
            return cmd_train(config_path, overrides, init_checkpoint);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(checkpoint, env_name, episodes, seed, eval_out);
        }
        return cmd_gradcheck(gc_env, gc_variant, gc_seed);
    } catch (const ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::config);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::config);
    } catch (const IoError &e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::io);
    } catch (const NumericError &e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::numeric);
    }
}

} // namespace qa3c
