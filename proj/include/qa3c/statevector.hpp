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
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qa3c {

using Amplitude = std::complex<double>;

inline constexpr int kMinQubits = 1;
inline constexpr int kMaxQubits = 12;

/// Gate vocabulary: Hadamard, axis rotations RY/RZ, CNOT, and the general
/// three-angle rotation ROT(alpha, beta, gamma) which applies RZ(alpha), then
/// RY(beta), then RZ(gamma) to its target.
enum class GateKind { H, RY, RZ, CNOT, ROT };

int angle_count(GateKind kind);
const char *gate_name(GateKind kind);

struct GateOp {
    GateKind kind = GateKind::H;
    int target = 0;
    int control = -1;               // CNOT only
    std::array<double, 3> angles{}; // RY/RZ use [0]; ROT all three

    static GateOp h(int target);
    static GateOp ry(int target, double theta);
    static GateOp rz(int target, double theta);
    static GateOp cnot(int control, int target);
    static GateOp rot(int target, double alpha, double beta, double gamma);
};

/// 2^n complex amplitudes of an n-qubit register. Qubit 0 is the most
/// significant bit of the amplitude index, so |10> on two qubits is index 2.
struct StateVector {
    int n_qubits = 0;
    std::vector<Amplitude> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
};

/// Ordered gate list plus its angle-slot table. Slots are numbered in gate
/// order (H and CNOT contribute none, RY/RZ one, ROT three); trainable_slots
/// lists the slots holding trainable weights, the rest are data-encoding
/// inputs.
struct CircuitProgram {
    int n_qubits = 0;
    std::vector<GateOp> gates;
    std::vector<int> trainable_slots;

    int angle_slot_count() const;
};

/// |0...0> on n qubits.
StateVector new_zero_state(int n_qubits);

void apply_gate_in_place(StateVector &state, const GateOp &gate);
StateVector apply_gate(StateVector state, const GateOp &gate);

/// Applies the inverse of `gate`.
void apply_gate_adjoint_in_place(StateVector &state, const GateOp &gate);

/// Pauli generators, used by the adjoint differentiation sweep.
void apply_pauli_y_in_place(StateVector &state, int target);
void apply_pauli_z_in_place(StateVector &state, int target);

/// <Z> of one qubit: sum of +-|amplitude|^2, + where the qubit's bit is 0.
double expectation_z(const StateVector &state, int qubit);

/// Im(<a|b>).
double imag_inner(const StateVector &a, const StateVector &b);

/// 2x2 matrix {m00, m01, m10, m11} of a single-qubit gate (ROT composed).
std::array<Amplitude, 4> single_qubit_matrix(const GateOp &gate);

/// Executes the program with the given slot angles and returns the Pauli-Z
/// expectation of every qubit. Expectations are exact (infinite-shot limit).
std::vector<double> run_circuit(const CircuitProgram &program,
                                std::span<const double> angle_values);

} // namespace qa3c
