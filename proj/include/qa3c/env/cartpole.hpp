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

#include "qa3c/env/env.hpp"

namespace qa3c {

struct CartPoleState {
    double x = 0.0;
    double x_dot = 0.0;
    double theta = 0.0;
    double theta_dot = 0.0;
};

/// Pole balancing on a frictionless track: +1 reward per step, episode ends
/// when the cart leaves +-2.4 or the pole tips past the angle limit
/// (12 degrees unless configured otherwise).
class CartPole final : public Env {
  public:
    explicit CartPole(int max_steps = 200, double angle_limit_deg = 12.0);

    const EnvSpec &spec() const override { return spec_; }
    std::vector<double> reset(Rng &rng) override;
    StepResult step(int action) override;

    const CartPoleState &state() const { return state_; }
    void set_state(const CartPoleState &s) {
        state_ = s;
        done_ = false;
    }
    bool past_limits(const CartPoleState &s) const;

    /// One explicit-Euler step with the given horizontal force. Position
    /// integrates with the pre-update velocity.
    static CartPoleState euler_step(const CartPoleState &s, double force);

  private:
    std::vector<double> observation() const;

    EnvSpec spec_;
    CartPoleState state_;
    double angle_limit_rad_;
    int steps_ = 0;
    bool done_ = true;
};

} // namespace qa3c
