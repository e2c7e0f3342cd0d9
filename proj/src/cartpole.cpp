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
#include "qa3c/env/cartpole.hpp"

#include <cmath>
#include <string>

#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

constexpr double kGravity = 9.8;
constexpr double kMassCart = 1.0;
constexpr double kMassPole = 0.1;
constexpr double kTotalMass = kMassCart + kMassPole;
constexpr double kPoleHalfLength = 0.5;
constexpr double kPoleMassLength = kMassPole * kPoleHalfLength;
constexpr double kForceMag = 10.0;
constexpr double kTau = 0.02;
constexpr double kXLimit = 2.4;
constexpr double kPi = 3.14159265358979323846;

} // namespace

CartPole::CartPole(int max_steps, double angle_limit_deg)
    : angle_limit_rad_(angle_limit_deg * kPi / 180.0) {
    if (max_steps < 1) {
        throw ConfigError("cartpole: max_steps must be >= 1");
    }
    if (angle_limit_deg <= 0.0) {
        throw ConfigError("cartpole: angle limit must be positive");
    }
    spec_ = EnvSpec{"cartpole", 4, 2, max_steps, 195.0};
}

std::vector<double> CartPole::observation() const {
    return {state_.x, state_.x_dot, state_.theta, state_.theta_dot};
}

std::vector<double> CartPole::reset(Rng &rng) {
    state_.x = rng.uniform(-0.05, 0.05);
    state_.x_dot = rng.uniform(-0.05, 0.05);
    state_.theta = rng.uniform(-0.05, 0.05);
    state_.theta_dot = rng.uniform(-0.05, 0.05);
    steps_ = 0;
    done_ = false;
    return observation();
}

bool CartPole::past_limits(const CartPoleState &s) const {
    return std::abs(s.x) > kXLimit || std::abs(s.theta) > angle_limit_rad_;
}

CartPoleState CartPole::euler_step(const CartPoleState &s, double force) {
    const double cos_theta = std::cos(s.theta);
    const double sin_theta = std::sin(s.theta);
    const double temp =
        (force + kPoleMassLength * s.theta_dot * s.theta_dot * sin_theta) /
        kTotalMass;
    const double theta_acc =
        (kGravity * sin_theta - cos_theta * temp) /
        (kPoleHalfLength *
         (4.0 / 3.0 - kMassPole * cos_theta * cos_theta / kTotalMass));
    const double x_acc =
        temp - kPoleMassLength * theta_acc * cos_theta / kTotalMass;

    CartPoleState next;
    next.x = s.x + kTau * s.x_dot;
    next.x_dot = s.x_dot + kTau * x_acc;
    next.theta = s.theta + kTau * s.theta_dot;
    next.theta_dot = s.theta_dot + kTau * theta_acc;
    return next;
}

StepResult CartPole::step(int action) {
    if (done_) {
        throw UsageError("cartpole: step on a finished episode");
    }
    if (action != 0 && action != 1) {
        throw UsageError("cartpole: action must be 0 or 1, got " +
                         std::to_string(action));
    }
    state_ = euler_step(state_, action == 1 ? kForceMag : -kForceMag);
    ++steps_;

    StepResult out;
    out.obs = observation();
    out.reward = 1.0;
    out.terminal = past_limits(state_);
    out.truncated = !out.terminal && steps_ >= spec_.max_steps;
    done_ = out.terminal || out.truncated;
    return out;
}

} // namespace qa3c
