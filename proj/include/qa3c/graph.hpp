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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qa3c/nn.hpp"
#include "qa3c/vqc.hpp"

namespace qa3c {

/// Gradients keyed by parameter name, each congruent in size with the
/// parameter it names. Every registered parameter appears exactly once.
using GradientBundle = std::map<std::string, std::vector<double>>;

/// Backward route for VQC nodes: the adjoint sweep is the production path,
/// the shift rule stays available as the independent cross-check.
enum class VqcGradMethod { adjoint, param_shift };

/// Minimal reverse-mode tape over the node set the hybrid models need.
/// Nodes are appended in evaluation order, so one reverse pass over the tape
/// visits them in reverse topological order.
class Graph {
  public:
    using NodeId = int;

    NodeId constant(std::vector<double> value);
    /// Leaf whose gradient is collected into the bundle. Names must be
    /// unique within a graph.
    NodeId parameter(const std::string &name, std::span<const double> value);

    NodeId linear(NodeId weight, NodeId bias, NodeId x, int out_dim,
                  int in_dim);
    NodeId vqc(NodeId weights, NodeId x, int n_qubits, int n_layers,
               VqcGradMethod method = VqcGradMethod::adjoint);
    NodeId arctan(NodeId x);
    NodeId softmax_node(NodeId x);
    NodeId log(NodeId x);
    NodeId square(NodeId x);
    NodeId sum(NodeId x);
    NodeId pick(NodeId x, int index);
    NodeId add(NodeId a, NodeId b);
    NodeId sub(NodeId a, NodeId b);
    NodeId mul(NodeId a, NodeId b); // elementwise
    NodeId scale(NodeId x, double factor);

    const std::vector<double> &value(NodeId id) const;

    /// Reverse pass from a scalar root. Returns the gradient of every
    /// registered parameter (zeros where the root does not depend on it).
    GradientBundle backward(NodeId root);

  private:
    enum class Op {
        constant,
        parameter,
        linear,
        vqc,
        arctan,
        softmax,
        log,
        square,
        sum,
        pick,
        add,
        sub,
        mul,
        scale,
    };

    struct Node {
        Op op;
        NodeId a = -1;
        NodeId b = -1;
        NodeId c = -1;
        std::vector<double> value;
        std::vector<double> grad;
        std::string name; // parameter nodes
        int i0 = 0;       // out_dim / pick index / n_qubits
        int i1 = 0;       // in_dim / n_layers
        double scalar = 0.0;
        VqcGradMethod method = VqcGradMethod::adjoint;
        StateVector state; // vqc nodes keep their final state for the vjp
    };

    NodeId push(Node node);
    const Node &at(NodeId id) const;
    void backprop_node(NodeId id);

    std::vector<Node> nodes_;
};

} // namespace qa3c
