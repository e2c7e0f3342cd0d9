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
#include "qa3c/vqc.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

// Single-parameter primitive view of the circuit: ROT gates are lowered to
// RZ/RY/RZ so that every parametrized primitive has a single-Pauli generator.
// `slot` indexes the program's flattened angle-slot list, -1 if fixed.
struct Prim {
    GateKind kind;
    int target;
    int control;
    int slot;
};

struct Topology {
    int n_qubits = 0;
    int n_layers = 0;
    int n_slots = 0;          // 2n encoding + 3nL trainable
    int enc_slots = 0;        // 2n
    std::size_t first_param = 0; // index of the earliest sloted primitive
    std::vector<Prim> prims;
};

Topology make_topology(int n_qubits, int n_layers) {
    Topology t;
    t.n_qubits = n_qubits;
    t.n_layers = n_layers;
    t.enc_slots = 2 * n_qubits;
    t.n_slots = 2 * n_qubits + 3 * n_qubits * n_layers;

    for (int q = 0; q < n_qubits; ++q) {
        t.prims.push_back({GateKind::H, q, -1, -1});
    }
    for (int q = 0; q < n_qubits; ++q) {
        t.prims.push_back({GateKind::RY, q, -1, q});
    }
    for (int q = 0; q < n_qubits; ++q) {
        t.prims.push_back({GateKind::RZ, q, -1, n_qubits + q});
    }
    for (int layer = 0; layer < n_layers; ++layer) {
        for (int dist = 1; dist <= 2; ++dist) {
            for (int q = 0; q < n_qubits; ++q) {
                const int target = (q + dist) % n_qubits;
                if (target == q) {
                    continue; // degenerate ring on tiny registers
                }
                t.prims.push_back({GateKind::CNOT, target, q, -1});
            }
        }
        for (int q = 0; q < n_qubits; ++q) {
            const int base = 2 * n_qubits + 3 * (layer * n_qubits + q);
            // ROT(alpha, beta, gamma) = RZ(alpha), RY(beta), RZ(gamma)
            t.prims.push_back({GateKind::RZ, q, -1, base + 0});
            t.prims.push_back({GateKind::RY, q, -1, base + 1});
            t.prims.push_back({GateKind::RZ, q, -1, base + 2});
        }
    }
    t.first_param = 0;
    while (t.first_param < t.prims.size() &&
           t.prims[t.first_param].slot < 0) {
        ++t.first_param;
    }
    return t;
}

const Topology &topology(int n_qubits, int n_layers) {
    thread_local std::map<std::pair<int, int>, Topology> cache;
    auto [it, inserted] = cache.try_emplace({n_qubits, n_layers});
    if (inserted) {
        it->second = make_topology(n_qubits, n_layers);
    }
    return it->second;
}

void check_spec(const VqcLayerSpec &spec) {
    if (spec.n_qubits < kMinQubits || spec.n_qubits > kMaxQubits) {
        throw ConfigError("VqcLayerSpec: n_qubits out of range: " +
                          std::to_string(spec.n_qubits));
    }
    if (spec.n_layers < 1) {
        throw ConfigError("VqcLayerSpec: n_layers must be >= 1");
    }
    if (static_cast<int>(spec.weights.size()) != spec.weight_count()) {
        throw ConfigError("VqcLayerSpec: expected " +
                          std::to_string(spec.weight_count()) +
                          " weights, got " +
                          std::to_string(spec.weights.size()));
    }
}

void check_input(const VqcLayerSpec &spec, std::span<const double> x) {
    if (static_cast<int>(x.size()) != spec.n_qubits) {
        throw ConfigError("vqc: expected input of size " +
                          std::to_string(spec.n_qubits) + ", got " +
                          std::to_string(x.size()));
    }
}

// Fills the flat slot buffer: arctan encodings first, then the raw weights.
void bind_slots(const VqcLayerSpec &spec, std::span<const double> x,
                std::vector<double> &slots) {
    slots.resize(static_cast<std::size_t>(2 * spec.n_qubits) +
                 spec.weights.size());
    for (int q = 0; q < spec.n_qubits; ++q) {
        const double v = x[static_cast<std::size_t>(q)];
        slots[static_cast<std::size_t>(q)] = std::atan(v);
        slots[static_cast<std::size_t>(spec.n_qubits + q)] = std::atan(v * v);
    }
    std::copy(spec.weights.begin(), spec.weights.end(),
              slots.begin() + 2 * spec.n_qubits);
}

void reset_zero(StateVector &s, int n_qubits) {
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, Amplitude{0, 0});
    s.amplitudes[0] = Amplitude{1, 0};
}

void apply_prim(StateVector &s, const Prim &p, double angle) {
    switch (p.kind) {
    case GateKind::H:
        apply_gate_in_place(s, GateOp::h(p.target));
        return;
    case GateKind::RY:
        apply_gate_in_place(s, GateOp::ry(p.target, angle));
        return;
    case GateKind::RZ:
        apply_gate_in_place(s, GateOp::rz(p.target, angle));
        return;
    case GateKind::CNOT:
        apply_gate_in_place(s, GateOp::cnot(p.control, p.target));
        return;
    default:
        throw UsageError("unexpected primitive gate");
    }
}

void apply_prim_adjoint(StateVector &s, const Prim &p, double angle) {
    switch (p.kind) {
    case GateKind::H:
    case GateKind::CNOT:
        apply_prim(s, p, 0.0); // self-inverse
        return;
    case GateKind::RY:
        apply_gate_in_place(s, GateOp::ry(p.target, -angle));
        return;
    case GateKind::RZ:
        apply_gate_in_place(s, GateOp::rz(p.target, -angle));
        return;
    default:
        throw UsageError("unexpected primitive gate");
    }
}

void run_prims(StateVector &s, const Topology &topo,
               std::span<const double> slots) {
    reset_zero(s, topo.n_qubits);
    for (const Prim &p : topo.prims) {
        apply_prim(s, p, p.slot >= 0 ? slots[static_cast<std::size_t>(p.slot)]
                                     : 0.0);
    }
}

// Im(<lam| Y_target |ket>) without materializing the product state.
double gen_inner_y(const StateVector &lam, const StateVector &ket,
                   int target) {
    const std::size_t stride =
        std::size_t{1} << (ket.n_qubits - 1 - target);
    const std::size_t dim = ket.dim();
    double acc = 0.0;
    // Y maps (a0, a1) -> (-i a1, i a0); Im(i z) = Re(z).
    for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::size_t idx = ((k & ~(stride - 1)) << 1) | (k & (stride - 1));
        const Amplitude &l0 = lam.amplitudes[idx];
        const Amplitude &l1 = lam.amplitudes[idx + stride];
        const Amplitude &k0 = ket.amplitudes[idx];
        const Amplitude &k1 = ket.amplitudes[idx + stride];
        acc += l1.real() * k0.real() + l1.imag() * k0.imag() -
               l0.real() * k1.real() - l0.imag() * k1.imag();
    }
    return acc;
}

// Im(<lam| Z_target |ket>).
double gen_inner_z(const StateVector &lam, const StateVector &ket,
                   int target) {
    const std::size_t mask = std::size_t{1} << (ket.n_qubits - 1 - target);
    const std::size_t dim = ket.dim();
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const Amplitude &l = lam.amplitudes[i];
        const Amplitude &k = ket.amplitudes[i];
        const double term = l.real() * k.imag() - l.imag() * k.real();
        acc += (i & mask) ? -term : term;
    }
    return acc;
}

double d_atan(double x) { return 1.0 / (1.0 + x * x); }
double d_atan_sq(double x) { return 2.0 * x / (1.0 + x * x * x * x); }

} // namespace

VqcLayerSpec VqcLayerSpec::zeros(int n_qubits, int n_layers) {
    VqcLayerSpec spec;
    spec.n_qubits = n_qubits;
    spec.n_layers = n_layers;
    spec.weights.assign(
        static_cast<std::size_t>(spec.weight_count()), 0.0);
    return spec;
}

CircuitProgram build_vqc_program(const VqcLayerSpec &spec) {
    check_spec(spec);
    const int n = spec.n_qubits;
    CircuitProgram program;
    program.n_qubits = n;

    for (int q = 0; q < n; ++q) {
        program.gates.push_back(GateOp::h(q));
    }
    for (int q = 0; q < n; ++q) {
        program.gates.push_back(GateOp::ry(q, 0.0));
    }
    for (int q = 0; q < n; ++q) {
        program.gates.push_back(GateOp::rz(q, 0.0));
    }
    for (int layer = 0; layer < spec.n_layers; ++layer) {
        for (int dist = 1; dist <= 2; ++dist) {
            for (int q = 0; q < n; ++q) {
                const int target = (q + dist) % n;
                if (target == q) {
                    continue;
                }
                program.gates.push_back(GateOp::cnot(q, target));
            }
        }
        for (int q = 0; q < n; ++q) {
            const std::size_t w =
                static_cast<std::size_t>(3 * (layer * n + q));
            program.gates.push_back(GateOp::rot(q, spec.weights[w],
                                                spec.weights[w + 1],
                                                spec.weights[w + 2]));
        }
    }

    const int enc = 2 * n;
    program.trainable_slots.resize(
        static_cast<std::size_t>(spec.weight_count()));
    for (int i = 0; i < spec.weight_count(); ++i) {
        program.trainable_slots[static_cast<std::size_t>(i)] = enc + i;
    }
    return program;
}

std::vector<double> vqc_forward(const VqcLayerSpec &spec,
                                std::span<const double> x,
                                StateVector *final_state) {
    check_spec(spec);
    check_input(spec, x);
    const Topology &topo = topology(spec.n_qubits, spec.n_layers);

    thread_local std::vector<double> slots;
    thread_local StateVector ket;
    bind_slots(spec, x, slots);
    run_prims(ket, topo, slots);

    std::vector<double> out(static_cast<std::size_t>(spec.n_qubits));
    for (int q = 0; q < spec.n_qubits; ++q) {
        out[static_cast<std::size_t>(q)] = expectation_z(ket, q);
    }
    if (final_state != nullptr) {
        *final_state = ket;
    }
    return out;
}

VqcVjpResult vqc_vjp(const VqcLayerSpec &spec, std::span<const double> x,
                     std::span<const double> upstream,
                     const StateVector *final_state) {
    check_spec(spec);
    check_input(spec, x);
    if (upstream.size() != x.size()) {
        throw ConfigError("vqc_vjp: upstream size mismatch");
    }
    const Topology &topo = topology(spec.n_qubits, spec.n_layers);
    const int n = spec.n_qubits;

    thread_local std::vector<double> slots;
    thread_local StateVector ket;
    thread_local StateVector lam;
    bind_slots(spec, x, slots);
    if (final_state != nullptr &&
        final_state->n_qubits == spec.n_qubits) {
        ket = *final_state;
    } else {
        run_prims(ket, topo, slots);
    }

    // lam = sum_k upstream[k] Z_k |ket>, built amplitude-wise: the combined
    // observable is diagonal with entry sum_k upstream[k] * (+-1).
    lam.n_qubits = n;
    lam.amplitudes.resize(ket.dim());
    for (std::size_t i = 0; i < ket.dim(); ++i) {
        double w = 0.0;
        for (int k = 0; k < n; ++k) {
            const std::size_t mask = std::size_t{1} << (n - 1 - k);
            w += (i & mask) ? -upstream[static_cast<std::size_t>(k)]
                            : upstream[static_cast<std::size_t>(k)];
        }
        lam.amplitudes[i] = w * ket.amplitudes[i];
    }

    // Reverse sweep. At primitive i, ket holds psi_i and lam holds the
    // back-evolved observable state; d<obs>/d(theta_i) = Im(<lam|P|ket>) for
    // generator convention G = exp(-i theta P / 2). Primitives in front of
    // the first sloted one never need to be unwound.
    std::vector<double> slot_grad(static_cast<std::size_t>(topo.n_slots), 0.0);
    for (std::size_t i = topo.prims.size(); i-- > topo.first_param;) {
        const Prim &p = topo.prims[i];
        if (p.slot >= 0) {
            slot_grad[static_cast<std::size_t>(p.slot)] +=
                (p.kind == GateKind::RY) ? gen_inner_y(lam, ket, p.target)
                                         : gen_inner_z(lam, ket, p.target);
        }
        if (i == topo.first_param) {
            break;
        }
        const double angle =
            p.slot >= 0 ? slots[static_cast<std::size_t>(p.slot)] : 0.0;
        apply_prim_adjoint(ket, p, angle);
        apply_prim_adjoint(lam, p, angle);
    }

    VqcVjpResult out;
    out.dx.assign(static_cast<std::size_t>(n), 0.0);
    for (int q = 0; q < n; ++q) {
        const double xv = x[static_cast<std::size_t>(q)];
        out.dx[static_cast<std::size_t>(q)] =
            slot_grad[static_cast<std::size_t>(q)] * d_atan(xv) +
            slot_grad[static_cast<std::size_t>(n + q)] * d_atan_sq(xv);
    }
    out.dweights.assign(slot_grad.begin() + topo.enc_slots, slot_grad.end());
    return out;
}

VqcJacobians param_shift_grad(const VqcLayerSpec &spec,
                              std::span<const double> x) {
    check_spec(spec);
    check_input(spec, x);
    const int n = spec.n_qubits;
    const int n_weights = spec.weight_count();
    const CircuitProgram program = build_vqc_program(spec);

    std::vector<double> slots;
    bind_slots(spec, x, slots);

    // d<Z_k>/d(slot_j) = (<Z_k>(+pi/2) - <Z_k>(-pi/2)) / 2 per angle slot.
    const int n_slots = static_cast<int>(slots.size());
    std::vector<double> slot_jac(static_cast<std::size_t>(n) *
                                     static_cast<std::size_t>(n_slots),
                                 0.0);
    for (int j = 0; j < n_slots; ++j) {
        const double saved = slots[static_cast<std::size_t>(j)];
        slots[static_cast<std::size_t>(j)] = saved + kHalfPi;
        const std::vector<double> plus = run_circuit(program, slots);
        slots[static_cast<std::size_t>(j)] = saved - kHalfPi;
        const std::vector<double> minus = run_circuit(program, slots);
        slots[static_cast<std::size_t>(j)] = saved;
        for (int k = 0; k < n; ++k) {
            slot_jac[static_cast<std::size_t>(k) *
                         static_cast<std::size_t>(n_slots) +
                     static_cast<std::size_t>(j)] =
                0.5 * (plus[static_cast<std::size_t>(k)] -
                       minus[static_cast<std::size_t>(k)]);
        }
    }

    VqcJacobians jac;
    jac.d_inputs.assign(static_cast<std::size_t>(n) *
                            static_cast<std::size_t>(n),
                        0.0);
    jac.d_weights.assign(static_cast<std::size_t>(n) *
                             static_cast<std::size_t>(n_weights),
                         0.0);
    for (int k = 0; k < n; ++k) {
        const std::size_t row = static_cast<std::size_t>(k) *
                                static_cast<std::size_t>(n_slots);
        for (int q = 0; q < n; ++q) {
            const double xv = x[static_cast<std::size_t>(q)];
            jac.d_inputs[static_cast<std::size_t>(k) *
                             static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(q)] =
                slot_jac[row + static_cast<std::size_t>(q)] * d_atan(xv) +
                slot_jac[row + static_cast<std::size_t>(n + q)] *
                    d_atan_sq(xv);
        }
        for (int w = 0; w < n_weights; ++w) {
            jac.d_weights[static_cast<std::size_t>(k) *
                              static_cast<std::size_t>(n_weights) +
                          static_cast<std::size_t>(w)] =
                slot_jac[row + static_cast<std::size_t>(2 * n + w)];
        }
    }
    return jac;
}

VqcVjpResult vqc_vjp_via_shift(const VqcLayerSpec &spec,
                               std::span<const double> x,
                               std::span<const double> upstream) {
    if (upstream.size() != x.size()) {
        throw ConfigError("vqc_vjp_via_shift: upstream size mismatch");
    }
    const VqcJacobians jac = param_shift_grad(spec, x);
    const int n = spec.n_qubits;
    const int n_weights = spec.weight_count();

    VqcVjpResult out;
    out.dx.assign(static_cast<std::size_t>(n), 0.0);
    out.dweights.assign(static_cast<std::size_t>(n_weights), 0.0);
    for (int k = 0; k < n; ++k) {
        const double up = upstream[static_cast<std::size_t>(k)];
        for (int q = 0; q < n; ++q) {
            out.dx[static_cast<std::size_t>(q)] +=
                up * jac.d_inputs[static_cast<std::size_t>(k) *
                                      static_cast<std::size_t>(n) +
                                  static_cast<std::size_t>(q)];
        }
        for (int w = 0; w < n_weights; ++w) {
            out.dweights[static_cast<std::size_t>(w)] +=
                up * jac.d_weights[static_cast<std::size_t>(k) *
                                       static_cast<std::size_t>(n_weights) +
                                   static_cast<std::size_t>(w)];
        }
    }
    return out;
}

} // namespace qa3c
