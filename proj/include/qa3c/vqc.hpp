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

#include <span>
#include <vector>

#include "qa3c/statevector.hpp"

namespace qa3c {

/// Shape and weights of the variational circuit block: per layer, a ring of
/// CNOTs at distance 1 and 2 followed by a trainable ROT on every qubit. The
/// classical input enters once, through H + RY(arctan x) + RZ(arctan x^2) on
/// each qubit.
struct VqcLayerSpec {
    int n_qubits = 8;
    int n_layers = 2;
    std::vector<double> weights; // (n_layers, n_qubits, 3) flattened, radians

    static VqcLayerSpec zeros(int n_qubits = 8, int n_layers = 2);
    int weight_count() const { return n_layers * n_qubits * 3; }
};

/// Materializes the circuit. Angle slots 0..n-1 hold the RY encodings,
/// n..2n-1 the RZ encodings, and the remaining 3*n*n_layers slots the ROT
/// weights (these are the trainable slots).
CircuitProgram build_vqc_program(const VqcLayerSpec &spec);

/// <Z_q> for every qubit with enc_a = arctan(x), enc_b = arctan(x^2).
/// `final_state`, when given, receives the post-circuit statevector so a
/// later vjp can skip the repeated forward sweep.
std::vector<double> vqc_forward(const VqcLayerSpec &spec,
                                std::span<const double> x,
                                StateVector *final_state = nullptr);

struct VqcVjpResult {
    std::vector<double> dx;       // n_qubits
    std::vector<double> dweights; // weight_count
};

/// Vector-Jacobian product via one forward and one reverse sweep over the
/// statevector. Encoding-angle gradients arrive already chained through the
/// arctan maps, so dx is the gradient wrt the raw inputs. Passing the
/// forward's final state skips recomputing it.
VqcVjpResult vqc_vjp(const VqcLayerSpec &spec, std::span<const double> x,
                     std::span<const double> upstream,
                     const StateVector *final_state = nullptr);

/// Row-major Jacobians of all circuit outputs: d_inputs is n x n, d_weights
/// is n x weight_count. Every angle is evaluated at +-pi/2 shifts; encoding
/// slots are chained through the arctan maps.
struct VqcJacobians {
    std::vector<double> d_inputs;
    std::vector<double> d_weights;
};

VqcJacobians param_shift_grad(const VqcLayerSpec &spec,
                              std::span<const double> x);

/// Same contraction as vqc_vjp but routed through the shift-rule Jacobians.
/// Retained as the independent oracle for the adjoint sweep.
VqcVjpResult vqc_vjp_via_shift(const VqcLayerSpec &spec,
                               std::span<const double> x,
                               std::span<const double> upstream);

} // namespace qa3c
