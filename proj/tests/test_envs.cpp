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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>
#include <set>

#include "qa3c/env/acrobot.hpp"
#include "qa3c/env/cartpole.hpp"
#include "qa3c/env/crossing.hpp"
#include "qa3c/env/env.hpp"
#include "qa3c/errors.hpp"

using namespace qa3c;

namespace {

// Independent scalar RK4 of the two-link equations, written against the
// closed-form accelerations rather than the env's vector helpers.
void oracle_acrobot_rk4(double &th1, double &th2, double &om1, double &om2,
                        double torque, double dt) {
    auto accel = [&](double t1, double t2, double w1, double w2, double &a1,
                     double &a2) {
        const double pi = 3.14159265358979323846;
        const double d1 =
            1.0 * 0.25 + 1.0 * (1.0 + 0.25 + 2.0 * 0.5 * std::cos(t2)) + 2.0;
        const double d2 = 1.0 * (0.25 + 0.5 * std::cos(t2)) + 1.0;
        const double phi2 = 1.0 * 0.5 * 9.8 * std::cos(t1 + t2 - pi / 2.0);
        const double phi1 = -1.0 * 0.5 * w2 * w2 * std::sin(t2) -
                            2.0 * 0.5 * w2 * w1 * std::sin(t2) +
                            (1.0 * 0.5 + 1.0 * 1.0) * 9.8 *
                                std::cos(t1 - pi / 2.0) +
                            phi2;
        a2 = (torque + (d2 / d1) * phi1 - 0.5 * w1 * w1 * std::sin(t2) -
              phi2) /
             (0.25 + 1.0 - d2 * d2 / d1);
        a1 = -(d2 * a2 + phi1) / d1;
    };

    double k1a1, k1a2, k2a1, k2a2, k3a1, k3a2, k4a1, k4a2;
    accel(th1, th2, om1, om2, k1a1, k1a2);
    const double h = dt / 2.0;
    accel(th1 + h * om1, th2 + h * om2, om1 + h * k1a1, om2 + h * k1a2, k2a1,
          k2a2);
    accel(th1 + h * (om1 + h * k1a1), th2 + h * (om2 + h * k1a2),
          om1 + h * k2a1, om2 + h * k2a2, k3a1, k3a2);
    accel(th1 + dt * (om1 + h * k2a1), th2 + dt * (om2 + h * k2a2),
          om1 + dt * k3a1, om2 + dt * k3a2, k4a1, k4a2);

    const double new_th1 =
        th1 + dt / 6.0 *
                  (om1 + 2.0 * (om1 + h * k1a1) + 2.0 * (om1 + h * k2a1) +
                   (om1 + dt * k3a1));
    const double new_th2 =
        th2 + dt / 6.0 *
                  (om2 + 2.0 * (om2 + h * k1a2) + 2.0 * (om2 + h * k2a2) +
                   (om2 + dt * k3a2));
    const double new_om1 = om1 + dt / 6.0 * (k1a1 + 2.0 * k2a1 + 2.0 * k3a1 + k4a1);
    const double new_om2 = om2 + dt / 6.0 * (k1a2 + 2.0 * k2a2 + 2.0 * k3a2 + k4a2);
    th1 = new_th1;
    th2 = new_th2;
    om1 = new_om1;
    om2 = new_om2;
}

// Flood fill written independently of SimpleCrossing::bfs_solvable.
bool oracle_reachable(const SimpleCrossing &env) {
    std::set<std::pair<int, int>> seen;
    std::deque<std::pair<int, int>> frontier{{1, 1}};
    seen.insert({1, 1});
    while (!frontier.empty()) {
        const auto [x, y] = frontier.front();
        frontier.pop_front();
        if (env.cell(x, y) == Cell::goal) {
            return true;
        }
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            const int nx = x + dx[d];
            const int ny = y + dy[d];
            if (nx < 0 || ny < 0 || nx >= kCrossingSize || ny >= kCrossingSize) {
                continue;
            }
            if (env.cell(nx, ny) == Cell::wall || seen.count({nx, ny})) {
                continue;
            }
            seen.insert({nx, ny});
            frontier.push_back({nx, ny});
        }
    }
    return false;
}

// Shortest action sequence to the goal via BFS over (x, y, heading).
std::vector<int> oracle_route(const SimpleCrossing &env) {
    struct Node {
        int x, y, h;
    };
    std::set<std::tuple<int, int, int>> seen;
    std::deque<std::pair<Node, std::vector<int>>> frontier;
    const auto [sx, sy] = env.agent_pos();
    frontier.push_back({{sx, sy, static_cast<int>(env.heading())}, {}});
    seen.insert({sx, sy, static_cast<int>(env.heading())});
    const int dx[4] = {1, 0, -1, 0};
    const int dy[4] = {0, 1, 0, -1};
    while (!frontier.empty()) {
        auto [node, actions] = frontier.front();
        frontier.pop_front();
        if (env.cell(node.x, node.y) == Cell::goal) {
            return actions;
        }
        for (int action : {0, 1, 2}) {
            Node next = node;
            if (action == 0) {
                next.h = (node.h + 3) % 4;
            } else if (action == 1) {
                next.h = (node.h + 1) % 4;
            } else {
                const int nx = node.x + dx[node.h];
                const int ny = node.y + dy[node.h];
                if (env.cell(nx, ny) == Cell::wall) {
                    continue;
                }
                next.x = nx;
                next.y = ny;
            }
            if (seen.count({next.x, next.y, next.h})) {
                continue;
            }
            seen.insert({next.x, next.y, next.h});
            std::vector<int> extended = actions;
            extended.push_back(action);
            frontier.push_back({next, std::move(extended)});
        }
    }
    return {};
}

} // namespace

TEST_CASE("cartpole reset distribution") {
    CartPole env;
    Rng rng(50);
    double mean[4] = {0, 0, 0, 0};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const std::vector<double> obs = env.reset(rng);
        for (int k = 0; k < 4; ++k) {
            CHECK(obs[static_cast<std::size_t>(k)] > -0.05);
            CHECK(obs[static_cast<std::size_t>(k)] < 0.05);
            mean[k] += obs[static_cast<std::size_t>(k)];
        }
    }
    for (double m : mean) {
        CHECK(std::abs(m / n) < 0.002);
    }

    Rng a(51), b(51);
    CartPole e1, e2;
    CHECK(e1.reset(a) == e2.reset(b));
}

TEST_CASE("cartpole hand Euler step") {
    const CartPoleState next = CartPole::euler_step({0, 0, 0, 0}, 10.0);
    CHECK(next.x == 0.0); // position moves with the old velocity
    CHECK(next.theta == 0.0);

    // hand chain from rest with F = +10: the force term is 10/1.1, the pole
    // reacts with theta_acc = -temp / (l (4/3 - m_p/M)), and its back-push
    // raises the cart acceleration to 400/41
    const double temp = 10.0 / 1.1;
    CHECK(std::abs(temp - 9.090909090909091) < 1e-12);
    const double theta_acc = -temp / (0.5 * (4.0 / 3.0 - 0.1 / 1.1));
    const double x_acc = temp - 0.05 * theta_acc / 1.1;
    CHECK(std::abs(x_acc - 400.0 / 41.0) < 1e-12);
    CHECK(std::abs(next.x_dot - 0.02 * x_acc) < 1e-15);
    CHECK(std::abs(next.theta_dot - 0.02 * theta_acc) < 1e-15);

    // mirrored force flips the x-channel
    const CartPoleState mirror = CartPole::euler_step({0, 0, 0, 0}, -10.0);
    CHECK(mirror.x_dot == doctest::Approx(-next.x_dot).epsilon(1e-15));
    CHECK(mirror.theta_dot == doctest::Approx(-next.theta_dot).epsilon(1e-15));
}

TEST_CASE("cartpole termination and truncation") {
    CartPole env(10);
    CHECK(env.past_limits({0, 0, 0.25, 0})); // 0.25 rad > 12 deg
    CHECK(env.past_limits({2.5, 0, 0, 0}));
    CHECK(!env.past_limits({0, 0, 0.2, 0}));

    // stepping from a state beyond the angle bound terminates immediately
    Rng rng(52);
    env.reset(rng);
    env.set_state({0, 0, 0.25, 0});
    const StepResult r = env.step(0);
    CHECK(r.terminal);
    CHECK(r.reward == 1.0);
    CHECK_THROWS_AS(env.step(0), UsageError);

    // a 15-degree limit keeps the same state alive
    CartPole wide(10, 15.0);
    CHECK(!wide.past_limits({0, 0, 0.25, 0}));

    CartPole short_ep(3);
    Rng rng2(53);
    short_ep.reset(rng2);
    double ep_return = 0.0;
    for (int i = 0; i < 3; ++i) {
        const StepResult sr = short_ep.step(0);
        ep_return += sr.reward;
        if (i == 2) {
            CHECK((sr.truncated || sr.terminal));
        }
    }
    CHECK(ep_return >= 1.0);
    CHECK(ep_return <= 3.0);
    CHECK_THROWS_AS(short_ep.step(5), UsageError);
}

TEST_CASE("acrobot rest state and inverted state") {
    CHECK(!Acrobot::at_target_height({0, 0, 0, 0}));
    CHECK(Acrobot::at_target_height({3.14159265358979323846, 0, 0, 0}));

    Acrobot env;
    Rng rng(54);
    env.reset(rng);
    env.set_state({0, 0, 0, 0});
    const StepResult r = env.step(1); // zero torque
    CHECK(!r.terminal);
    CHECK(r.reward == -1.0);
}

TEST_CASE("acrobot single RK4 step matches the independent integrator") {
    const AcrobotState next = Acrobot::rk4_step({0, 0, 0, 0}, 1.0);
    double th1 = 0, th2 = 0, om1 = 0, om2 = 0;
    oracle_acrobot_rk4(th1, th2, om1, om2, 1.0, 0.2);
    CHECK(std::abs(next.theta1 - th1) < 1e-12);
    CHECK(std::abs(next.theta2 - th2) < 1e-12);
    CHECK(std::abs(next.theta1_dot - om1) < 1e-12);
    CHECK(std::abs(next.theta2_dot - om2) < 1e-12);

    // and from a non-trivial state
    const AcrobotState s2 = Acrobot::rk4_step({0.3, -0.8, 1.5, -2.0}, -1.0);
    th1 = 0.3;
    th2 = -0.8;
    om1 = 1.5;
    om2 = -2.0;
    oracle_acrobot_rk4(th1, th2, om1, om2, -1.0, 0.2);
    CHECK(std::abs(s2.theta1 - th1) < 1e-12);
    CHECK(std::abs(s2.theta2 - th2) < 1e-12);
    CHECK(std::abs(s2.theta1_dot - om1) < 1e-12);
    CHECK(std::abs(s2.theta2_dot - om2) < 1e-12);
}

TEST_CASE("cartpole and acrobot stay finite under random actions") {
    Rng rng(55);
    CartPole cart(5000000);
    Acrobot acro(5000000);
    cart.reset(rng);
    acro.reset(rng);
    for (int i = 0; i < 100000; ++i) {
        {
            const StepResult r = cart.step(static_cast<int>(rng.below(2)));
            for (double v : r.obs) {
                CHECK(std::isfinite(v));
            }
            if (r.terminal || r.truncated) {
                cart.reset(rng);
            }
        }
        {
            const StepResult r = acro.step(static_cast<int>(rng.below(3)));
            for (double v : r.obs) {
                CHECK(std::isfinite(v));
            }
            CHECK(std::abs(acro.state().theta1_dot) <= Acrobot::kMaxVel1);
            CHECK(std::abs(acro.state().theta2_dot) <= Acrobot::kMaxVel2);
            if (r.terminal || r.truncated) {
                acro.reset(rng);
            }
        }
    }
}

TEST_CASE("crossing layout obeys the construction rules") {
    Rng rng(56);
    for (int n = 1; n <= 3; ++n) {
        SimpleCrossing env(n);
        for (int trial = 0; trial < 200; ++trial) {
            env.reset(rng);
            CHECK(oracle_reachable(env));

            // interior walls live on even coordinates; count them
            int walls_found = 0;
            for (int c = 2; c <= 6; c += 2) {
                int vertical = 0;
                int horizontal = 0;
                for (int i = 1; i <= 7; ++i) {
                    vertical += env.cell(c, i) == Cell::wall ? 1 : 0;
                    horizontal += env.cell(i, c) == Cell::wall ? 1 : 0;
                }
                // a full-span wall has exactly one gap, at an odd coordinate
                if (vertical >= 6) {
                    ++walls_found;
                    CHECK(vertical == 6);
                    for (int i = 1; i <= 7; ++i) {
                        if (env.cell(c, i) != Cell::wall) {
                            CHECK(i % 2 == 1);
                        }
                    }
                }
                if (horizontal >= 6) {
                    ++walls_found;
                    CHECK(horizontal == 6);
                    for (int i = 1; i <= 7; ++i) {
                        if (env.cell(i, c) != Cell::wall) {
                            CHECK(i % 2 == 1);
                        }
                    }
                }
            }
            CHECK(walls_found == n);

            // interior odd/odd cells are never walls
            for (int x = 1; x <= 7; x += 2) {
                for (int y = 1; y <= 7; y += 2) {
                    CHECK(env.cell(x, y) != Cell::wall);
                }
            }
        }
    }
    CHECK_THROWS_AS(SimpleCrossing(4), ConfigError);
    CHECK_THROWS_AS(SimpleCrossing(0), ConfigError);
}

TEST_CASE("crossing optimal routes fit well inside the step budget") {
    Rng rng(155);
    for (int n = 1; n <= 3; ++n) {
        SimpleCrossing env(n);
        for (int trial = 0; trial < 100; ++trial) {
            env.reset(rng);
            const std::vector<int> route = oracle_route(env);
            CHECK(!route.empty());
            CHECK(route.size() <= 324);
        }
    }
}

TEST_CASE("crossing goal reward follows the step-count formula") {
    Rng rng(57);
    SimpleCrossing env(1);
    env.reset(rng);
    const std::vector<int> route = oracle_route(env);
    REQUIRE(!route.empty());
    StepResult last;
    for (int action : route) {
        last = env.step(action);
    }
    CHECK(last.terminal);
    const double expected =
        1.0 - 0.9 * (static_cast<double>(route.size()) / 324.0);
    CHECK(std::abs(last.reward - expected) < 1e-12);
    CHECK(env.steps_taken() == static_cast<int>(route.size()));
}

TEST_CASE("crossing no-op actions and wall bumps") {
    Rng rng(58);
    SimpleCrossing env(1);
    env.reset(rng);
    const auto pos_before = env.agent_pos();
    const Heading dir_before = env.heading();
    for (int action : {3, 4, 5}) {
        env.step(action);
        CHECK(env.agent_pos() == pos_before);
        CHECK(env.heading() == dir_before);
    }
    CHECK(env.steps_taken() == 3);

    // face north into the border wall: forward is a no-op
    env.step(0); // east -> north
    CHECK(env.heading() == Heading::north);
    env.step(2);
    CHECK(env.agent_pos() == pos_before);
    CHECK(env.steps_taken() == 5);
}

TEST_CASE("crossing truncates at the step limit with zero reward") {
    Rng rng(59);
    SimpleCrossing env(1);
    env.reset(rng);
    StepResult last;
    for (int i = 0; i < 324; ++i) {
        last = env.step(0); // spin in place
    }
    CHECK(last.truncated);
    CHECK(!last.terminal);
    CHECK(last.reward == 0.0);
    CHECK_THROWS_AS(env.step(0), UsageError);
}

TEST_CASE("crossing observation geometry") {
    Rng rng(60);
    SimpleCrossing env(1);
    env.reset(rng);
    const std::vector<double> obs = env.observe();
    REQUIRE(obs.size() == 147);

    // agent at (1,1) facing east: the window covers y in [-2, 4]; the two
    // leftmost columns (north of the grid) are out of bounds -> code 0
    for (int wy = 0; wy < 7; ++wy) {
        for (int wx = 0; wx < 2; ++wx) {
            const double code = obs[static_cast<std::size_t>((wy * 7 + wx) * 3)];
            CHECK(code == 0.0);
        }
    }
    // color and state channels are always zero
    for (int cell = 0; cell < 49; ++cell) {
        CHECK(obs[static_cast<std::size_t>(cell * 3 + 1)] == 0.0);
        CHECK(obs[static_cast<std::size_t>(cell * 3 + 2)] == 0.0);
    }
    // the agent's own cell is visible and empty
    CHECK(obs[static_cast<std::size_t>(((6 * 7) + 3) * 3)] == 1.0);

    // rotating in place changes the observation but not the grid
    const CrossingGrid grid_before = env.grid();
    const StepResult turned = env.step(1);
    CHECK(env.grid() == grid_before);
    CHECK(turned.obs != obs);

    // with the goal in view, exactly one cell encodes 3
    SimpleCrossing open(1);
    open.reset(rng);
    // drive to a position where the goal must be visible: walk the route
    // until the goal is within 6 cells ahead
    const std::vector<int> route = oracle_route(open);
    int goal_codes = 0;
    for (int action : route) {
        const StepResult sr = open.step(action);
        goal_codes = 0;
        for (int cell = 0; cell < 49; ++cell) {
            if (sr.obs[static_cast<std::size_t>(cell * 3)] == 3.0) {
                ++goal_codes;
            }
        }
        if (sr.terminal) {
            break;
        }
    }
    // on the step that entered the goal the cell below the window center
    // holds the goal itself
    CHECK(goal_codes == 1);
}

TEST_CASE("episode trajectories are seed-deterministic") {
    for (const char *name : {"cartpole", "acrobot", "crossing-s9n2"}) {
        auto run = [&](std::uint64_t seed) {
            std::unique_ptr<Env> env = make_env(name);
            Rng rng(seed);
            std::vector<double> trace;
            std::vector<double> obs = env->reset(rng);
            trace.insert(trace.end(), obs.begin(), obs.end());
            for (int i = 0; i < 50; ++i) {
                const int action = static_cast<int>(
                    rng.below(static_cast<std::uint64_t>(env->spec().n_actions)));
                const StepResult sr = env->step(action);
                trace.push_back(sr.reward);
                trace.insert(trace.end(), sr.obs.begin(), sr.obs.end());
                if (sr.terminal || sr.truncated) {
                    obs = env->reset(rng);
                }
            }
            return trace;
        };
        CHECK(run(99) == run(99));
        CHECK(run(99) != run(100));
    }
}

TEST_CASE("unknown environment names are rejected") {
    CHECK_THROWS_AS(make_env("pong"), ConfigError);
    CHECK_THROWS_AS(make_env_spec("pong"), ConfigError);
}
