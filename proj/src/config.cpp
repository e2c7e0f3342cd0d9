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
#include "qa3c/config.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "qa3c/env/env.hpp"
#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

std::string trim(const std::string &s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string &where, const std::string &message) {
    throw ConfigError(where + ": " + message);
}

double parse_double(const std::string &where, const std::string &value) {
    try {
        std::size_t consumed = 0;
        const double parsed = std::stod(value, &consumed);
        if (consumed != value.size()) {
            fail(where, "trailing characters in '" + value + "'");
        }
        return parsed;
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &) {
        fail(where, "cannot parse number '" + value + "'");
    }
}

long parse_long(const std::string &where, const std::string &value) {
    try {
        std::size_t consumed = 0;
        const long parsed = std::stol(value, &consumed);
        if (consumed != value.size()) {
            fail(where, "trailing characters in '" + value + "'");
        }
        return parsed;
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &) {
        fail(where, "cannot parse integer '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string &where, const std::string &value) {
    try {
        std::size_t consumed = 0;
        const unsigned long long parsed = std::stoull(value, &consumed);
        if (consumed != value.size()) {
            fail(where, "trailing characters in '" + value + "'");
        }
        return parsed;
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &) {
        fail(where, "cannot parse integer '" + value + "'");
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ParseState {
    RunConfig config;
    bool has_env = false;
    bool has_variant = false;
    bool has_episodes = false;
};

void apply_key(ParseState &state, const std::string &key,
               const std::string &value, const std::string &where) {
    RunConfig &c = state.config;
    if (key == "env") {
        c.env = value;
        state.has_env = true;
    } else if (key == "variant") {
        try {
            c.variant = variant_from_string(value);
        } catch (const ConfigError &e) {
            fail(where, e.what());
        }
        state.has_variant = true;
    } else if (key == "total_episodes") {
        c.total_episodes = parse_long(where, value);
        if (c.total_episodes < 0) {
            fail(where, "total_episodes must be >= 0");
        }
        state.has_episodes = true;
    } else if (key == "sync_interval") {
        c.sync_interval = static_cast<int>(parse_long(where, value));
        if (c.sync_interval < 1) {
            fail(where, "sync_interval must be >= 1");
        }
    } else if (key == "gamma") {
        c.gamma = parse_double(where, value);
        if (!(c.gamma > 0.0 && c.gamma <= 1.0)) {
            fail(where, "gamma must be in (0, 1]");
        }
    } else if (key == "lr") {
        c.lr = parse_double(where, value);
        if (c.lr <= 0.0) {
            fail(where, "lr must be positive");
        }
    } else if (key == "beta1") {
        c.beta1 = parse_double(where, value);
    } else if (key == "beta2") {
        c.beta2 = parse_double(where, value);
    } else if (key == "adam_epsilon") {
        c.adam_epsilon = parse_double(where, value);
    } else if (key == "workers") {
        c.workers = static_cast<int>(parse_long(where, value));
        if (c.workers < 0) {
            fail(where, "workers must be >= 0 (0 = available cores)");
        }
    } else if (key == "seed") {
        c.seed = parse_u64(where, value);
    } else if (key == "entropy_coef") {
        c.entropy_coef = parse_double(where, value);
        if (c.entropy_coef < 0.0) {
            fail(where, "entropy_coef must be >= 0");
        }
    } else if (key == "max_grad_norm") {
        c.max_grad_norm = parse_double(where, value);
        if (c.max_grad_norm < 0.0) {
            fail(where, "max_grad_norm must be >= 0 (0 = off)");
        }
    } else if (key == "n_qubits") {
        c.n_qubits = static_cast<int>(parse_long(where, value));
        if (c.n_qubits < 1 || c.n_qubits > 12) {
            fail(where, "n_qubits must be in 1..12");
        }
    } else if (key == "vqc_layers") {
        c.vqc_layers = static_cast<int>(parse_long(where, value));
        if (c.vqc_layers < 1) {
            fail(where, "vqc_layers must be >= 1");
        }
    } else if (key == "max_steps_per_episode") {
        c.max_steps_per_episode = static_cast<int>(parse_long(where, value));
        if (c.max_steps_per_episode < 0) {
            fail(where, "max_steps_per_episode must be >= 0");
        }
    } else if (key == "out_dir") {
        c.out_dir = value;
    } else if (key == "cartpole_angle_limit_deg") {
        c.cartpole_angle_limit_deg = parse_double(where, value);
        if (c.cartpole_angle_limit_deg <= 0.0) {
            fail(where, "cartpole_angle_limit_deg must be positive");
        }
    } else {
        fail(where, "unknown key '" + key + "'");
    }
}

} // namespace

TrainConfig RunConfig::train_config() const {
    TrainConfig cfg;
    cfg.sync_interval = sync_interval;
    cfg.gamma = gamma;
    cfg.lr = lr;
    cfg.beta1 = beta1;
    cfg.beta2 = beta2;
    cfg.adam_epsilon = adam_epsilon;
    cfg.workers = workers;
    cfg.total_episodes = total_episodes;
    cfg.seed = seed;
    cfg.entropy_coef = entropy_coef;
    cfg.max_grad_norm = max_grad_norm;
    return cfg;
}

EnvOptions RunConfig::env_options() const {
    EnvOptions options;
    options.max_steps = max_steps_per_episode;
    options.cartpole_angle_limit_deg = cartpole_angle_limit_deg;
    return options;
}

RunConfig parse_config(const std::string &text,
                       const std::vector<std::string> &overrides) {
    ParseState state;

    std::istringstream stream(text);
    std::string raw_line;
    int line_number = 0;
    while (std::getline(stream, raw_line)) {
        ++line_number;
        const std::string where = "config line " + std::to_string(line_number);
        std::string line = raw_line;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(where, "expected 'key = value', got '" + trim(raw_line) + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            fail(where, "missing key");
        }
        apply_key(state, key, value, where);
    }

    for (const std::string &override_str : overrides) {
        const std::string where = "override '" + override_str + "'";
        const auto eq = override_str.find('=');
        if (eq == std::string::npos) {
            fail(where, "expected key=value");
        }
        const std::string key = trim(override_str.substr(0, eq));
        const std::string value = trim(override_str.substr(eq + 1));
        apply_key(state, key, value, where);
    }

    if (!state.has_env) {
        throw ConfigError("config: missing required key 'env'");
    }
    if (!state.has_variant) {
        throw ConfigError("config: missing required key 'variant'");
    }
    if (!state.has_episodes) {
        throw ConfigError("config: missing required key 'total_episodes'");
    }

    RunConfig &c = state.config;
    if (c.workers == 0) {
        const unsigned cores = std::thread::hardware_concurrency();
        c.workers = cores > 0 ? static_cast<int>(cores) : 1;
    }
    // Validates the env name and pins the per-environment step cap.
    try {
        const EnvSpec spec = make_env_spec(c.env, c.env_options());
        if (c.max_steps_per_episode == 0) {
            c.max_steps_per_episode = spec.max_steps;
        }
    } catch (const ConfigError &e) {
        throw ConfigError("config key 'env': " + std::string(e.what()));
    }
    return c;
}

std::string dump_config(const RunConfig &c) {
    std::ostringstream out;
    out << "env = " << c.env << "\n";
    out << "variant = " << to_string(c.variant) << "\n";
    out << "total_episodes = " << c.total_episodes << "\n";
    out << "sync_interval = " << c.sync_interval << "\n";
    out << "gamma = " << format_double(c.gamma) << "\n";
    out << "lr = " << format_double(c.lr) << "\n";
    out << "beta1 = " << format_double(c.beta1) << "\n";
    out << "beta2 = " << format_double(c.beta2) << "\n";
    out << "adam_epsilon = " << format_double(c.adam_epsilon) << "\n";
    out << "workers = " << c.workers << "\n";
    out << "seed = " << c.seed << "\n";
    out << "entropy_coef = " << format_double(c.entropy_coef) << "\n";
    out << "max_grad_norm = " << format_double(c.max_grad_norm) << "\n";
    out << "n_qubits = " << c.n_qubits << "\n";
    out << "vqc_layers = " << c.vqc_layers << "\n";
    out << "max_steps_per_episode = " << c.max_steps_per_episode << "\n";
    out << "out_dir = " << c.out_dir << "\n";
    out << "cartpole_angle_limit_deg = "
        << format_double(c.cartpole_angle_limit_deg) << "\n";
    return out.str();
}

} // namespace qa3c
