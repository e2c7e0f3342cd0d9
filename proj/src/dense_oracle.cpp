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
#include "qa3c/dense_oracle.hpp"

#include <string>

#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

// Big-endian bit of a basis index, matching StateVector's convention.
int bit_of(std::size_t index, int qubit, int n_qubits) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

DenseMatrix embed_single(const std::array<Amplitude, 4> &m, int target,
                         int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    DenseMatrix full;
    full.dim = dim;
    full.elems.assign(dim * dim, Amplitude{0, 0});
    const std::size_t mask = std::size_t{1} << (n_qubits - 1 - target);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~mask) != (c & ~mask)) {
                continue;
            }
            const int rb = (r & mask) ? 1 : 0;
            const int cb = (c & mask) ? 1 : 0;
            full.at(r, c) = m[static_cast<std::size_t>(rb * 2 + cb)];
        }
    }
    return full;
}

DenseMatrix embed_cnot(int control, int target, int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    DenseMatrix full;
    full.dim = dim;
    full.elems.assign(dim * dim, Amplitude{0, 0});
    const std::size_t tmask = std::size_t{1} << (n_qubits - 1 - target);
    for (std::size_t c = 0; c < dim; ++c) {
        const std::size_t image =
            bit_of(c, control, n_qubits) ? (c ^ tmask) : c;
        full.at(image, c) = Amplitude{1, 0};
    }
    return full;
}

} // namespace

DenseMatrix DenseMatrix::identity(std::size_t dim) {
    DenseMatrix m;
    m.dim = dim;
    m.elems.assign(dim * dim, Amplitude{0, 0});
    for (std::size_t i = 0; i < dim; ++i) {
        m.at(i, i) = Amplitude{1, 0};
    }
    return m;
}

DenseMatrix matmul(const DenseMatrix &a, const DenseMatrix &b) {
    DenseMatrix out;
    out.dim = a.dim;
    out.elems.assign(a.dim * a.dim, Amplitude{0, 0});
    for (std::size_t r = 0; r < a.dim; ++r) {
        for (std::size_t k = 0; k < a.dim; ++k) {
            const Amplitude ark = a.at(r, k);
            if (ark == Amplitude{0, 0}) {
                continue;
            }
            for (std::size_t c = 0; c < a.dim; ++c) {
                out.at(r, c) += ark * b.at(k, c);
            }
        }
    }
    return out;
}

DenseMatrix dagger(const DenseMatrix &m) {
    DenseMatrix out;
    out.dim = m.dim;
    out.elems.assign(m.dim * m.dim, Amplitude{0, 0});
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t c = 0; c < m.dim; ++c) {
            out.at(r, c) = std::conj(m.at(c, r));
        }
    }
    return out;
}

std::vector<Amplitude> apply_matrix(const DenseMatrix &m,
                                    std::span<const Amplitude> v) {
    std::vector<Amplitude> out(m.dim, Amplitude{0, 0});
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t c = 0; c < m.dim; ++c) {
            out[r] += m.at(r, c) * v[c];
        }
    }
    return out;
}

DenseMatrix dense_unitary_oracle(const CircuitProgram &program,
                                 std::span<const double> angle_values) {
    if (program.n_qubits > 4) {
        throw UsageError("dense_unitary_oracle handles at most 4 qubits, got " +
                         std::to_string(program.n_qubits));
    }
    if (program.n_qubits < kMinQubits) {
        throw ConfigError("dense_unitary_oracle: invalid qubit count");
    }
    const int n_slots = program.angle_slot_count();
    if (static_cast<int>(angle_values.size()) != n_slots) {
        throw ConfigError("dense_unitary_oracle: angle slot mismatch");
    }

    DenseMatrix u = DenseMatrix::identity(std::size_t{1} << program.n_qubits);
    int cursor = 0;
    for (const GateOp &g : program.gates) {
        GateOp bound = g;
        const int n_angles = angle_count(g.kind);
        for (int k = 0; k < n_angles; ++k) {
            bound.angles[static_cast<std::size_t>(k)] =
                angle_values[static_cast<std::size_t>(cursor + k)];
        }
        cursor += n_angles;

        DenseMatrix full =
            (g.kind == GateKind::CNOT)
                ? embed_cnot(g.control, g.target, program.n_qubits)
                : embed_single(single_qubit_matrix(bound), g.target,
                               program.n_qubits);
        u = matmul(full, u);
    }
    return u;
}

} // namespace qa3c
