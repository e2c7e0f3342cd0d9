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

#include <array>

#include "qa3c/env/env.hpp"

namespace qa3c {

struct AcrobotState {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta1_dot = 0.0;
    double theta2_dot = 0.0;
};

/// Two-link underactuated swing-up. Torque in {-1, 0, +1} acts on the elbow
/// joint; -1 reward per step until the free end passes the target height
/// -cos(theta1) - cos(theta1 + theta2) > 1.
class Acrobot final : public Env {
  public:
    explicit Acrobot(int max_steps = 500);

    const EnvSpec &spec() const override { return spec_; }
    std::vector<double> reset(Rng &rng) override;
    StepResult step(int action) override;

    const AcrobotState &state() const { return state_; }
    void set_state(const AcrobotState &s) {
        state_ = s;
        done_ = false;
    }

    /// Time derivative (theta1', theta2', omega1', omega2') of the two-link
    /// equations of motion with the given elbow torque.
    static std::array<double, 4> dynamics(const std::array<double, 4> &s,
                                          double torque);

    /// One classical fourth-order Runge-Kutta step of 0.2 s; angle wrapping
    /// and velocity clamping are applied by step(), not here.
    static AcrobotState rk4_step(const AcrobotState &s, double torque);

    static bool at_target_height(const AcrobotState &s);

    static constexpr double kDt = 0.2;
    static constexpr double kMaxVel1 = 4.0 * 3.14159265358979323846;
    static constexpr double kMaxVel2 = 9.0 * 3.14159265358979323846;

  private:
    std::vector<double> observation() const;

    EnvSpec spec_;
    AcrobotState state_;
    int steps_ = 0;
    bool done_ = true;
};

} // namespace qa3c
