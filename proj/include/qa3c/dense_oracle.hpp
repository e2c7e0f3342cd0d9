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

#include <cstddef>
#include <span>
#include <vector>

#include "qa3c/statevector.hpp"

namespace qa3c {

/// Row-major complex matrix, sized for small-register oracles only.
struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<Amplitude> elems;

    static DenseMatrix identity(std::size_t dim);
    Amplitude &at(std::size_t r, std::size_t c) { return elems[r * dim + c]; }
    const Amplitude &at(std::size_t r, std::size_t c) const {
        return elems[r * dim + c];
    }
};

DenseMatrix matmul(const DenseMatrix &a, const DenseMatrix &b);
DenseMatrix dagger(const DenseMatrix &m);
std::vector<Amplitude> apply_matrix(const DenseMatrix &m,
                                    std::span<const Amplitude> v);

/// Full 2^n x 2^n unitary of the program as an explicit Kronecker-expanded
/// matrix product. Independent of the stride kernels; refuses n_qubits > 4
/// because it exists only to cross-check small instances.
DenseMatrix dense_unitary_oracle(const CircuitProgram &program,
                                 std::span<const double> angle_values);

} // namespace qa3c
