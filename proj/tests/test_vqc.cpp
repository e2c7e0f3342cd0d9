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

#include "qa3c/errors.hpp"
#include "qa3c/vqc.hpp"
#include "test_util.hpp"

using namespace qa3c;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

VqcLayerSpec random_spec(Rng &rng, int n_qubits, int n_layers) {
    VqcLayerSpec spec = VqcLayerSpec::zeros(n_qubits, n_layers);
    for (double &w : spec.weights) {
        w = rng.uniform(-kPi, kPi);
    }
    return spec;
}

std::vector<double> random_vec(Rng &rng, int n, double lo, double hi) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double &x : v) {
        x = rng.uniform(lo, hi);
    }
    return v;
}

} // namespace

TEST_CASE("program layout follows the four-qubit reference circuit") {
    const VqcLayerSpec spec = VqcLayerSpec::zeros(4, 1);
    const CircuitProgram p = build_vqc_program(spec);
    REQUIRE(p.gates.size() == 4 + 4 + 4 + 8 + 4);

    for (int i = 0; i < 4; ++i) {
        CHECK(p.gates[static_cast<std::size_t>(i)].kind == GateKind::H);
        CHECK(p.gates[static_cast<std::size_t>(4 + i)].kind == GateKind::RY);
        CHECK(p.gates[static_cast<std::size_t>(8 + i)].kind == GateKind::RZ);
        CHECK(p.gates[static_cast<std::size_t>(i)].target == i);
    }
    // entangler ring: distance 1 then distance 2, control -> target
    const std::pair<int, int> expected[8] = {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                                             {0, 2}, {1, 3}, {2, 0}, {3, 1}};
    for (int i = 0; i < 8; ++i) {
        const GateOp &g = p.gates[static_cast<std::size_t>(12 + i)];
        CHECK(g.kind == GateKind::CNOT);
        CHECK(g.control == expected[i].first);
        CHECK(g.target == expected[i].second);
    }
    for (int i = 0; i < 4; ++i) {
        CHECK(p.gates[static_cast<std::size_t>(20 + i)].kind == GateKind::ROT);
    }
}

TEST_CASE("slot bookkeeping for the default shape") {
    const VqcLayerSpec spec = VqcLayerSpec::zeros(8, 2);
    CHECK(spec.weight_count() == 48);
    const CircuitProgram p = build_vqc_program(spec);
    CHECK(p.trainable_slots.size() == 48);
    CHECK(p.angle_slot_count() == 16 + 48); // 8 RY + 8 RZ encodings
    for (std::size_t i = 0; i < p.trainable_slots.size(); ++i) {
        CHECK(p.trainable_slots[i] == 16 + static_cast<int>(i));
    }
}

TEST_CASE("zero weights and zero input leave every qubit unbiased") {
    const VqcLayerSpec spec = VqcLayerSpec::zeros(8, 2);
    const std::vector<double> x(8, 0.0);
    for (double z : vqc_forward(spec, x)) {
        CHECK(std::abs(z) < 1e-12);
    }
}

TEST_CASE("forward agrees with a hand-built program through the oracle") {
    Rng rng(21);
    const VqcLayerSpec spec = random_spec(rng, 2, 1);
    const std::vector<double> x = {1.0, 0.0};

    // hand-built: H, RY(atan x), RZ(atan x^2) per qubit; CNOT ring; ROT
    CircuitProgram p;
    p.n_qubits = 2;
    p.gates = {GateOp::h(0), GateOp::h(1),
               GateOp::ry(0, 0.0), GateOp::ry(1, 0.0),
               GateOp::rz(0, 0.0), GateOp::rz(1, 0.0),
               GateOp::cnot(0, 1), GateOp::cnot(1, 0),
               GateOp::rot(0, 0, 0, 0), GateOp::rot(1, 0, 0, 0)};
    std::vector<double> angles = {std::atan(x[0]), std::atan(x[1]),
                                  std::atan(x[0] * x[0]),
                                  std::atan(x[1] * x[1])};
    angles.insert(angles.end(), spec.weights.begin(), spec.weights.end());

    const std::vector<double> expected = test::oracle_expectations(p, angles);
    const std::vector<double> got = vqc_forward(spec, x);
    REQUIRE(got.size() == 2);
    CHECK(std::abs(got[0] - expected[0]) < 1e-10);
    CHECK(std::abs(got[1] - expected[1]) < 1e-10);
}

TEST_CASE("outputs stay inside [-1, 1]") {
    Rng rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const VqcLayerSpec spec = random_spec(rng, n, 2);
        const std::vector<double> x = random_vec(rng, n, -50.0, 50.0);
        for (double z : vqc_forward(spec, x)) {
            CHECK(z <= 1.0 + 1e-12);
            CHECK(z >= -1.0 - 1e-12);
        }
    }
}

TEST_CASE("shift rule on a single RY matches cos(theta) analytically") {
    CircuitProgram p;
    p.n_qubits = 1;
    p.gates = {GateOp::ry(0, 0.0)};
    auto d_expect = [&](double theta) {
        const std::vector<double> plus = run_circuit(p, {{theta + kHalfPi}});
        const std::vector<double> minus = run_circuit(p, {{theta - kHalfPi}});
        return 0.5 * (plus[0] - minus[0]);
    };
    CHECK(std::abs(d_expect(0.0)) < 1e-12);           // extremum of cos
    CHECK(d_expect(kHalfPi) == doctest::Approx(-1.0)); // -sin(pi/2)
    CHECK(d_expect(1.234) == doctest::Approx(-std::sin(1.234)));
}

TEST_CASE("zero upstream makes the vjp vanish") {
    Rng rng(23);
    const VqcLayerSpec spec = random_spec(rng, 3, 2);
    const std::vector<double> x = random_vec(rng, 3, -2.0, 2.0);
    const VqcVjpResult vjp = vqc_vjp(spec, x, std::vector<double>(3, 0.0));
    for (double g : vjp.dx) {
        CHECK(g == 0.0);
    }
    for (double g : vjp.dweights) {
        CHECK(g == 0.0);
    }
}

TEST_CASE("adjoint, shift rule, and finite differences agree") {
    Rng rng(24);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const int layers = 1 + static_cast<int>(rng.below(2));
        const VqcLayerSpec spec = random_spec(rng, n, layers);
        const std::vector<double> x = random_vec(rng, n, -2.0, 2.0);
        const std::vector<double> upstream = random_vec(rng, n, -1.0, 1.0);

        const VqcVjpResult adj = vqc_vjp(spec, x, upstream);
        const VqcVjpResult shift = vqc_vjp_via_shift(spec, x, upstream);

        REQUIRE(adj.dx.size() == shift.dx.size());
        REQUIRE(adj.dweights.size() == shift.dweights.size());
        for (std::size_t i = 0; i < adj.dx.size(); ++i) {
            CHECK(std::abs(adj.dx[i] - shift.dx[i]) < 1e-8);
        }
        for (std::size_t i = 0; i < adj.dweights.size(); ++i) {
            CHECK(std::abs(adj.dweights[i] - shift.dweights[i]) < 1e-8);
        }

        // finite differences of the upstream-contracted scalar
        auto contracted_x = [&](const std::vector<double> &xv) {
            const std::vector<double> out = vqc_forward(spec, xv);
            double acc = 0.0;
            for (std::size_t k = 0; k < out.size(); ++k) {
                acc += upstream[k] * out[k];
            }
            return acc;
        };
        const std::vector<double> fd_x = test::fd_gradient(contracted_x, x);
        for (std::size_t i = 0; i < fd_x.size(); ++i) {
            CHECK(test::scaled_err(adj.dx[i], fd_x[i]) < 1e-4);
        }

        auto contracted_w = [&](const std::vector<double> &wv) {
            VqcLayerSpec s2 = spec;
            s2.weights = wv;
            const std::vector<double> out = vqc_forward(s2, x);
            double acc = 0.0;
            for (std::size_t k = 0; k < out.size(); ++k) {
                acc += upstream[k] * out[k];
            }
            return acc;
        };
        const std::vector<double> fd_w =
            test::fd_gradient(contracted_w, spec.weights);
        for (std::size_t i = 0; i < fd_w.size(); ++i) {
            CHECK(test::scaled_err(adj.dweights[i], fd_w[i]) < 1e-4);
        }
    }
}

TEST_CASE("shape validation") {
    const VqcLayerSpec spec = VqcLayerSpec::zeros(4, 1);
    CHECK_THROWS_AS(vqc_forward(spec, std::vector<double>(3, 0.0)),
                    ConfigError);
    VqcLayerSpec bad = spec;
    bad.weights.pop_back();
    CHECK_THROWS_AS(vqc_forward(bad, std::vector<double>(4, 0.0)),
                    ConfigError);
    CHECK_THROWS_AS(
        vqc_vjp(spec, std::vector<double>(4, 0.0), std::vector<double>(3, 0.0)),
        ConfigError);
}
