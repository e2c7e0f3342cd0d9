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
#include "qa3c/statevector.hpp"

#include <cmath>
#include <string>

#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

void check_qubit(int q, int n_qubits, const char *what) {
    if (q < 0 || q >= n_qubits) {
        throw ConfigError(std::string(what) + " qubit " + std::to_string(q) +
                          " out of range for " + std::to_string(n_qubits) +
                          " qubits");
    }
}

std::size_t qubit_stride(const StateVector &s, int qubit) {
    return std::size_t{1} << (s.n_qubits - 1 - qubit);
}

// Kernels work on explicit re/im components: complex<double> operator* would
// route every product through the checked __muldc3 helper, which dominates
// the runtime at 8 qubits.

// Generic dense 2x2 kernel; RY/RZ/H below use cheaper specializations.
void apply_matrix2(StateVector &s, int target,
                   const std::array<Amplitude, 4> &m) {
    const std::size_t stride = qubit_stride(s, target);
    const std::size_t dim = s.dim();
    const double m00r = m[0].real(), m00i = m[0].imag();
    const double m01r = m[1].real(), m01i = m[1].imag();
    const double m10r = m[2].real(), m10i = m[2].imag();
    const double m11r = m[3].real(), m11i = m[3].imag();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t off = base; off < base + stride; ++off) {
        Amplitude &a0 = s.amplitudes[off];
        Amplitude &a1 = s.amplitudes[off + stride];
        const double r0 = a0.real(), i0 = a0.imag();
        const double r1 = a1.real(), i1 = a1.imag();
        a0 = {m00r * r0 - m00i * i0 + m01r * r1 - m01i * i1,
              m00r * i0 + m00i * r0 + m01r * i1 + m01i * r1};
        a1 = {m10r * r0 - m10i * i0 + m11r * r1 - m11i * i1,
              m10r * i0 + m10i * r0 + m11r * i1 + m11i * r1};
      }
    }
}

void apply_h(StateVector &s, int target) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    const std::size_t stride = qubit_stride(s, target);
    const std::size_t dim = s.dim();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t off = base; off < base + stride; ++off) {
        Amplitude &a0 = s.amplitudes[off];
        Amplitude &a1 = s.amplitudes[off + stride];
        const double r0 = a0.real(), i0 = a0.imag();
        const double r1 = a1.real(), i1 = a1.imag();
        a0 = {(r0 + r1) * inv_sqrt2, (i0 + i1) * inv_sqrt2};
        a1 = {(r0 - r1) * inv_sqrt2, (i0 - i1) * inv_sqrt2};
      }
    }
}

// RY has a real matrix [[c, -s], [s, c]] with c = cos(theta/2).
void apply_ry(StateVector &s, int target, double theta) {
    const double c = std::cos(0.5 * theta);
    const double sn = std::sin(0.5 * theta);
    const std::size_t stride = qubit_stride(s, target);
    const std::size_t dim = s.dim();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t off = base; off < base + stride; ++off) {
        Amplitude &a0 = s.amplitudes[off];
        Amplitude &a1 = s.amplitudes[off + stride];
        const double r0 = a0.real(), i0 = a0.imag();
        const double r1 = a1.real(), i1 = a1.imag();
        a0 = {c * r0 - sn * r1, c * i0 - sn * i1};
        a1 = {sn * r0 + c * r1, sn * i0 + c * i1};
      }
    }
}

// RZ is diagonal: diag(e^{-i theta/2}, e^{+i theta/2}).
void apply_rz(StateVector &s, int target, double theta) {
    const double c = std::cos(0.5 * theta);
    const double sn = std::sin(0.5 * theta);
    const std::size_t stride = qubit_stride(s, target);
    const std::size_t dim = s.dim();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t off = base; off < base + stride; ++off) {
        Amplitude &a0 = s.amplitudes[off];
        Amplitude &a1 = s.amplitudes[off + stride];
        const double r0 = a0.real(), i0 = a0.imag();
        const double r1 = a1.real(), i1 = a1.imag();
        a0 = {c * r0 + sn * i0, c * i0 - sn * r0};  // * (c - i sn)
        a1 = {c * r1 - sn * i1, c * i1 + sn * r1};  // * (c + i sn)
      }
    }
}

void apply_cnot(StateVector &s, int control, int target) {
    const std::size_t cmask = qubit_stride(s, control);
    const std::size_t tmask = qubit_stride(s, target);
    const std::size_t dim = s.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(s.amplitudes[i], s.amplitudes[i | tmask]);
        }
    }
}

void validate_gate(const StateVector &s, const GateOp &g) {
    check_qubit(g.target, s.n_qubits, "target");
    if (g.kind == GateKind::CNOT) {
        check_qubit(g.control, s.n_qubits, "control");
        if (g.control == g.target) {
            throw ConfigError("CNOT control equals target (" +
                              std::to_string(g.target) + ")");
        }
    }
}

} // namespace

int angle_count(GateKind kind) {
    switch (kind) {
    case GateKind::H:
    case GateKind::CNOT:
        return 0;
    case GateKind::RY:
    case GateKind::RZ:
        return 1;
    case GateKind::ROT:
        return 3;
    }
    return 0;
}

const char *gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::H:
        return "H";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::ROT:
        return "ROT";
    }
    return "?";
}

GateOp GateOp::h(int target) { return {GateKind::H, target, -1, {}}; }

GateOp GateOp::ry(int target, double theta) {
    return {GateKind::RY, target, -1, {theta, 0.0, 0.0}};
}

GateOp GateOp::rz(int target, double theta) {
    return {GateKind::RZ, target, -1, {theta, 0.0, 0.0}};
}

GateOp GateOp::cnot(int control, int target) {
    return {GateKind::CNOT, target, control, {}};
}

GateOp GateOp::rot(int target, double alpha, double beta, double gamma) {
    return {GateKind::ROT, target, -1, {alpha, beta, gamma}};
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const Amplitude &a : amplitudes) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

int CircuitProgram::angle_slot_count() const {
    int count = 0;
    for (const GateOp &g : gates) {
        count += angle_count(g.kind);
    }
    return count;
}

StateVector new_zero_state(int n_qubits) {
    if (n_qubits < kMinQubits || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must be in [" + std::to_string(kMinQubits) +
                          ", " + std::to_string(kMaxQubits) + "], got " +
                          std::to_string(n_qubits));
    }
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    s.amplitudes[0] = Amplitude{1.0, 0.0};
    return s;
}

std::array<Amplitude, 4> single_qubit_matrix(const GateOp &gate) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    switch (gate.kind) {
    case GateKind::H:
        return {Amplitude{inv_sqrt2, 0}, Amplitude{inv_sqrt2, 0},
                Amplitude{inv_sqrt2, 0}, Amplitude{-inv_sqrt2, 0}};
    case GateKind::RY: {
        const double c = std::cos(0.5 * gate.angles[0]);
        const double s = std::sin(0.5 * gate.angles[0]);
        return {Amplitude{c, 0}, Amplitude{-s, 0}, Amplitude{s, 0},
                Amplitude{c, 0}};
    }
    case GateKind::RZ: {
        const Amplitude p0 = std::polar(1.0, -0.5 * gate.angles[0]);
        const Amplitude p1 = std::polar(1.0, +0.5 * gate.angles[0]);
        return {p0, Amplitude{0, 0}, Amplitude{0, 0}, p1};
    }
    case GateKind::ROT: {
        // RZ(gamma) . RY(beta) . RZ(alpha): rightmost factor acts first.
        const auto za = single_qubit_matrix(GateOp::rz(0, gate.angles[0]));
        const auto yb = single_qubit_matrix(GateOp::ry(0, gate.angles[1]));
        const auto zg = single_qubit_matrix(GateOp::rz(0, gate.angles[2]));
        auto mul = [](const std::array<Amplitude, 4> &a,
                      const std::array<Amplitude, 4> &b) {
            return std::array<Amplitude, 4>{
                a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
        };
        return mul(zg, mul(yb, za));
    }
    case GateKind::CNOT:
        break;
    }
    throw UsageError("single_qubit_matrix: CNOT is not a single-qubit gate");
}

void apply_gate_in_place(StateVector &state, const GateOp &gate) {
    validate_gate(state, gate);
    switch (gate.kind) {
    case GateKind::H:
        apply_h(state, gate.target);
        return;
    case GateKind::RY:
        apply_ry(state, gate.target, gate.angles[0]);
        return;
    case GateKind::RZ:
        apply_rz(state, gate.target, gate.angles[0]);
        return;
    case GateKind::CNOT:
        apply_cnot(state, gate.control, gate.target);
        return;
    case GateKind::ROT:
        apply_matrix2(state, gate.target, single_qubit_matrix(gate));
        return;
    }
}

StateVector apply_gate(StateVector state, const GateOp &gate) {
    apply_gate_in_place(state, gate);
    return state;
}

void apply_gate_adjoint_in_place(StateVector &state, const GateOp &gate) {
    validate_gate(state, gate);
    switch (gate.kind) {
    case GateKind::H:
        apply_h(state, gate.target);
        return;
    case GateKind::RY:
        apply_ry(state, gate.target, -gate.angles[0]);
        return;
    case GateKind::RZ:
        apply_rz(state, gate.target, -gate.angles[0]);
        return;
    case GateKind::CNOT:
        apply_cnot(state, gate.control, gate.target);
        return;
    case GateKind::ROT:
        apply_matrix2(state, gate.target,
                      single_qubit_matrix(GateOp::rot(gate.target,
                                                      -gate.angles[2],
                                                      -gate.angles[1],
                                                      -gate.angles[0])));
        return;
    }
}

void apply_pauli_y_in_place(StateVector &state, int target) {
    check_qubit(target, state.n_qubits, "target");
    const std::size_t stride = qubit_stride(state, target);
    const std::size_t dim = state.dim();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t off = base; off < base + stride; ++off) {
        Amplitude &a0 = state.amplitudes[off];
        Amplitude &a1 = state.amplitudes[off + stride];
        const double r0 = a0.real(), i0 = a0.imag();
        const double r1 = a1.real(), i1 = a1.imag();
        a0 = {i1, -r1};  // -i * a1
        a1 = {-i0, r0};  // +i * a0
      }
    }
}

void apply_pauli_z_in_place(StateVector &state, int target) {
    check_qubit(target, state.n_qubits, "target");
    const std::size_t stride = qubit_stride(state, target);
    const std::size_t dim = state.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & stride) != 0) {
            state.amplitudes[i] = -state.amplitudes[i];
        }
    }
}

double expectation_z(const StateVector &state, int qubit) {
    check_qubit(qubit, state.n_qubits, "readout");
    const std::size_t mask = qubit_stride(state, qubit);
    double value = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        value += (i & mask) ? -p : p;
    }
    return value;
}

double imag_inner(const StateVector &a, const StateVector &b) {
    double im = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const Amplitude &x = a.amplitudes[i];
        const Amplitude &y = b.amplitudes[i];
        im += x.real() * y.imag() - x.imag() * y.real();
    }
    return im;
}

std::vector<double> run_circuit(const CircuitProgram &program,
                                std::span<const double> angle_values) {
    const int n_slots = program.angle_slot_count();
    if (static_cast<int>(angle_values.size()) != n_slots) {
        throw ConfigError("run_circuit: program has " +
                          std::to_string(n_slots) + " angle slots, got " +
                          std::to_string(angle_values.size()) + " values");
    }
    for (int slot : program.trainable_slots) {
        if (slot < 0 || slot >= n_slots) {
            throw ConfigError("trainable slot " + std::to_string(slot) +
                              " out of range");
        }
    }

    StateVector state = new_zero_state(program.n_qubits);
    int cursor = 0;
    for (const GateOp &g : program.gates) {
        const int n_angles = angle_count(g.kind);
        if (n_angles == 0) {
            apply_gate_in_place(state, g);
        } else {
            GateOp bound = g;
            for (int k = 0; k < n_angles; ++k) {
                bound.angles[static_cast<std::size_t>(k)] =
                    angle_values[static_cast<std::size_t>(cursor + k)];
            }
            apply_gate_in_place(state, bound);
            cursor += n_angles;
        }
    }

    std::vector<double> out(static_cast<std::size_t>(program.n_qubits));
    for (int q = 0; q < program.n_qubits; ++q) {
        out[static_cast<std::size_t>(q)] = expectation_z(state, q);
    }
    return out;
}

} // namespace qa3c
