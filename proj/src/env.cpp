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
#include "qa3c/env/env.hpp"

#include "qa3c/env/acrobot.hpp"
#include "qa3c/env/cartpole.hpp"
#include "qa3c/env/crossing.hpp"
#include "qa3c/errors.hpp"

namespace qa3c {

std::unique_ptr<Env> make_env(const std::string &name,
                              const EnvOptions &options) {
    if (name == "cartpole") {
        return std::make_unique<CartPole>(
            options.max_steps > 0 ? options.max_steps : 200,
            options.cartpole_angle_limit_deg);
    }
    if (name == "acrobot") {
        return std::make_unique<Acrobot>(options.max_steps > 0
                                             ? options.max_steps
                                             : 500);
    }
    if (name == "crossing-s9n1" || name == "crossing-s9n2" ||
        name == "crossing-s9n3") {
        const int n = name.back() - '0';
        return std::make_unique<SimpleCrossing>(n, options.max_steps);
    }
    throw ConfigError("unknown env '" + name +
                      "' (expected cartpole, acrobot, or crossing-s9n{1,2,3})");
}

EnvSpec make_env_spec(const std::string &name, const EnvOptions &options) {
    return make_env(name, options)->spec();
}

} // namespace qa3c
