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
#include "qa3c/env/acrobot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Link masses, lengths, centers of mass, and inertias are all 1 or 0.5.
constexpr double kM1 = 1.0, kM2 = 1.0;
constexpr double kL1 = 1.0;
constexpr double kLc1 = 0.5, kLc2 = 0.5;
constexpr double kI1 = 1.0, kI2 = 1.0;
constexpr double kGravity = 9.8;

double wrap_pi(double angle) { return std::remainder(angle, 2.0 * kPi); }

} // namespace

Acrobot::Acrobot(int max_steps) {
    if (max_steps < 1) {
        throw ConfigError("acrobot: max_steps must be >= 1");
    }
    spec_ = EnvSpec{"acrobot", 6, 3, max_steps, -100.0};
}

std::vector<double> Acrobot::observation() const {
    return {std::cos(state_.theta1), std::sin(state_.theta1),
            std::cos(state_.theta2), std::sin(state_.theta2),
            state_.theta1_dot,       state_.theta2_dot};
}

std::vector<double> Acrobot::reset(Rng &rng) {
    state_.theta1 = rng.uniform(-0.1, 0.1);
    state_.theta2 = rng.uniform(-0.1, 0.1);
    state_.theta1_dot = rng.uniform(-0.1, 0.1);
    state_.theta2_dot = rng.uniform(-0.1, 0.1);
    steps_ = 0;
    done_ = false;
    return observation();
}

std::array<double, 4> Acrobot::dynamics(const std::array<double, 4> &s,
                                        double torque) {
    const double theta1 = s[0];
    const double theta2 = s[1];
    const double dtheta1 = s[2];
    const double dtheta2 = s[3];

    const double d1 =
        kM1 * kLc1 * kLc1 +
        kM2 * (kL1 * kL1 + kLc2 * kLc2 + 2.0 * kL1 * kLc2 * std::cos(theta2)) +
        kI1 + kI2;
    const double d2 = kM2 * (kLc2 * kLc2 + kL1 * kLc2 * std::cos(theta2)) + kI2;
    const double phi2 =
        kM2 * kLc2 * kGravity * std::cos(theta1 + theta2 - kPi / 2.0);
    const double phi1 =
        -kM2 * kL1 * kLc2 * dtheta2 * dtheta2 * std::sin(theta2) -
        2.0 * kM2 * kL1 * kLc2 * dtheta2 * dtheta1 * std::sin(theta2) +
        (kM1 * kLc1 + kM2 * kL1) * kGravity * std::cos(theta1 - kPi / 2.0) +
        phi2;
    const double ddtheta2 =
        (torque + (d2 / d1) * phi1 -
         kM2 * kL1 * kLc2 * dtheta1 * dtheta1 * std::sin(theta2) - phi2) /
        (kM2 * kLc2 * kLc2 + kI2 - d2 * d2 / d1);
    const double ddtheta1 = -(d2 * ddtheta2 + phi1) / d1;

    return {dtheta1, dtheta2, ddtheta1, ddtheta2};
}

AcrobotState Acrobot::rk4_step(const AcrobotState &s, double torque) {
    const std::array<double, 4> y0 = {s.theta1, s.theta2, s.theta1_dot,
                                      s.theta2_dot};
    auto axpy = [](const std::array<double, 4> &y, double h,
                   const std::array<double, 4> &k) {
        std::array<double, 4> out;
        for (int i = 0; i < 4; ++i) {
            out[static_cast<std::size_t>(i)] =
                y[static_cast<std::size_t>(i)] +
                h * k[static_cast<std::size_t>(i)];
        }
        return out;
    };

    const std::array<double, 4> k1 = dynamics(y0, torque);
    const std::array<double, 4> k2 = dynamics(axpy(y0, kDt / 2.0, k1), torque);
    const std::array<double, 4> k3 = dynamics(axpy(y0, kDt / 2.0, k2), torque);
    const std::array<double, 4> k4 = dynamics(axpy(y0, kDt, k3), torque);

    AcrobotState next;
    next.theta1 = y0[0] + kDt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    next.theta2 = y0[1] + kDt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    next.theta1_dot =
        y0[2] + kDt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
    next.theta2_dot =
        y0[3] + kDt / 6.0 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]);
    return next;
}

bool Acrobot::at_target_height(const AcrobotState &s) {
    return -std::cos(s.theta1) - std::cos(s.theta1 + s.theta2) > 1.0;
}

StepResult Acrobot::step(int action) {
    if (done_) {
        throw UsageError("acrobot: step on a finished episode");
    }
    if (action < 0 || action > 2) {
        throw UsageError("acrobot: action must be in {0, 1, 2}, got " +
                         std::to_string(action));
    }
    const double torque = static_cast<double>(action - 1);
    state_ = rk4_step(state_, torque);
    state_.theta1 = wrap_pi(state_.theta1);
    state_.theta2 = wrap_pi(state_.theta2);
    state_.theta1_dot = std::clamp(state_.theta1_dot, -kMaxVel1, kMaxVel1);
    state_.theta2_dot = std::clamp(state_.theta2_dot, -kMaxVel2, kMaxVel2);
    ++steps_;

    StepResult out;
    out.obs = observation();
    out.terminal = at_target_height(state_);
    out.reward = out.terminal ? 0.0 : -1.0;
    out.truncated = !out.terminal && steps_ >= spec_.max_steps;
    done_ = out.terminal || out.truncated;
    return out;
}

} // namespace qa3c
