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
#include "qa3c/graph.hpp"

#include <cmath>

#include "qa3c/errors.hpp"

namespace qa3c {

Graph::NodeId Graph::push(Node node) {
    node.grad.assign(node.value.size(), 0.0);
    nodes_.push_back(std::move(node));
    return static_cast<NodeId>(nodes_.size()) - 1;
}

const Graph::Node &Graph::at(NodeId id) const {
    if (id < 0 || id >= static_cast<NodeId>(nodes_.size())) {
        throw UsageError("graph: node id out of range");
    }
    return nodes_[static_cast<std::size_t>(id)];
}

const std::vector<double> &Graph::value(NodeId id) const {
    return at(id).value;
}

Graph::NodeId Graph::constant(std::vector<double> value) {
    Node n;
    n.op = Op::constant;
    n.value = std::move(value);
    return push(std::move(n));
}

Graph::NodeId Graph::parameter(const std::string &name,
                               std::span<const double> value) {
    for (const Node &existing : nodes_) {
        if (existing.op == Op::parameter && existing.name == name) {
            throw UsageError("graph: duplicate parameter name '" + name + "'");
        }
    }
    Node n;
    n.op = Op::parameter;
    n.name = name;
    n.value.assign(value.begin(), value.end());
    return push(std::move(n));
}

Graph::NodeId Graph::linear(NodeId weight, NodeId bias, NodeId x, int out_dim,
                            int in_dim) {
    const Node &w = at(weight);
    const Node &b = at(bias);
    const Node &xv = at(x);
    if (static_cast<int>(w.value.size()) != out_dim * in_dim ||
        static_cast<int>(b.value.size()) != out_dim ||
        static_cast<int>(xv.value.size()) != in_dim) {
        throw ConfigError("graph: linear dimension mismatch");
    }
    Node n;
    n.op = Op::linear;
    n.a = weight;
    n.b = bias;
    n.c = x;
    n.i0 = out_dim;
    n.i1 = in_dim;
    n.value.assign(static_cast<std::size_t>(out_dim), 0.0);
    for (int o = 0; o < out_dim; ++o) {
        double acc = b.value[static_cast<std::size_t>(o)];
        for (int i = 0; i < in_dim; ++i) {
            acc += w.value[static_cast<std::size_t>(o * in_dim + i)] *
                   xv.value[static_cast<std::size_t>(i)];
        }
        n.value[static_cast<std::size_t>(o)] = acc;
    }
    return push(std::move(n));
}

Graph::NodeId Graph::vqc(NodeId weights, NodeId x, int n_qubits, int n_layers,
                         VqcGradMethod method) {
    const Node &w = at(weights);
    const Node &xv = at(x);
    VqcLayerSpec spec;
    spec.n_qubits = n_qubits;
    spec.n_layers = n_layers;
    spec.weights = w.value;
    Node n;
    n.op = Op::vqc;
    n.a = weights;
    n.b = x;
    n.i0 = n_qubits;
    n.i1 = n_layers;
    n.method = method;
    n.value = vqc_forward(spec, xv.value, &n.state);
    return push(std::move(n));
}

Graph::NodeId Graph::arctan(NodeId x) {
    Node n;
    n.op = Op::arctan;
    n.a = x;
    n.value = at(x).value;
    for (double &v : n.value) {
        v = std::atan(v);
    }
    return push(std::move(n));
}

Graph::NodeId Graph::softmax_node(NodeId x) {
    Node n;
    n.op = Op::softmax;
    n.a = x;
    n.value = softmax(at(x).value);
    return push(std::move(n));
}

Graph::NodeId Graph::log(NodeId x) {
    Node n;
    n.op = Op::log;
    n.a = x;
    n.value = at(x).value;
    for (double &v : n.value) {
        v = std::log(v);
    }
    return push(std::move(n));
}

Graph::NodeId Graph::square(NodeId x) {
    Node n;
    n.op = Op::square;
    n.a = x;
    n.value = at(x).value;
    for (double &v : n.value) {
        v = v * v;
    }
    return push(std::move(n));
}

Graph::NodeId Graph::sum(NodeId x) {
    Node n;
    n.op = Op::sum;
    n.a = x;
    double acc = 0.0;
    for (double v : at(x).value) {
        acc += v;
    }
    n.value = {acc};
    return push(std::move(n));
}

Graph::NodeId Graph::pick(NodeId x, int index) {
    const Node &xv = at(x);
    if (index < 0 || index >= static_cast<int>(xv.value.size())) {
        throw UsageError("graph: pick index out of range");
    }
    Node n;
    n.op = Op::pick;
    n.a = x;
    n.i0 = index;
    n.value = {xv.value[static_cast<std::size_t>(index)]};
    return push(std::move(n));
}

Graph::NodeId Graph::add(NodeId a, NodeId b) {
    const Node &av = at(a);
    const Node &bv = at(b);
    if (av.value.size() != bv.value.size()) {
        throw ConfigError("graph: add size mismatch");
    }
    Node n;
    n.op = Op::add;
    n.a = a;
    n.b = b;
    n.value = av.value;
    for (std::size_t i = 0; i < n.value.size(); ++i) {
        n.value[i] += bv.value[i];
    }
    return push(std::move(n));
}

Graph::NodeId Graph::sub(NodeId a, NodeId b) {
    const Node &av = at(a);
    const Node &bv = at(b);
    if (av.value.size() != bv.value.size()) {
        throw ConfigError("graph: sub size mismatch");
    }
    Node n;
    n.op = Op::sub;
    n.a = a;
    n.b = b;
    n.value = av.value;
    for (std::size_t i = 0; i < n.value.size(); ++i) {
        n.value[i] -= bv.value[i];
    }
    return push(std::move(n));
}

Graph::NodeId Graph::mul(NodeId a, NodeId b) {
    const Node &av = at(a);
    const Node &bv = at(b);
    if (av.value.size() != bv.value.size()) {
        throw ConfigError("graph: mul size mismatch");
    }
    Node n;
    n.op = Op::mul;
    n.a = a;
    n.b = b;
    n.value = av.value;
    for (std::size_t i = 0; i < n.value.size(); ++i) {
        n.value[i] *= bv.value[i];
    }
    return push(std::move(n));
}

Graph::NodeId Graph::scale(NodeId x, double factor) {
    Node n;
    n.op = Op::scale;
    n.a = x;
    n.scalar = factor;
    n.value = at(x).value;
    for (double &v : n.value) {
        v *= factor;
    }
    return push(std::move(n));
}

void Graph::backprop_node(NodeId id) {
    Node &n = nodes_[static_cast<std::size_t>(id)];
    switch (n.op) {
    case Op::constant:
    case Op::parameter:
        return;
    case Op::linear: {
        Node &w = nodes_[static_cast<std::size_t>(n.a)];
        Node &b = nodes_[static_cast<std::size_t>(n.b)];
        Node &x = nodes_[static_cast<std::size_t>(n.c)];
        const int out_dim = n.i0;
        const int in_dim = n.i1;
        for (int o = 0; o < out_dim; ++o) {
            const double g = n.grad[static_cast<std::size_t>(o)];
            b.grad[static_cast<std::size_t>(o)] += g;
            for (int i = 0; i < in_dim; ++i) {
                w.grad[static_cast<std::size_t>(o * in_dim + i)] +=
                    g * x.value[static_cast<std::size_t>(i)];
                x.grad[static_cast<std::size_t>(i)] +=
                    g * w.value[static_cast<std::size_t>(o * in_dim + i)];
            }
        }
        return;
    }
    case Op::vqc: {
        Node &w = nodes_[static_cast<std::size_t>(n.a)];
        Node &x = nodes_[static_cast<std::size_t>(n.b)];
        VqcLayerSpec spec;
        spec.n_qubits = n.i0;
        spec.n_layers = n.i1;
        spec.weights = w.value;
        const VqcVjpResult vjp =
            n.method == VqcGradMethod::adjoint
                ? vqc_vjp(spec, x.value, n.grad, &n.state)
                : vqc_vjp_via_shift(spec, x.value, n.grad);
        for (std::size_t i = 0; i < vjp.dx.size(); ++i) {
            x.grad[i] += vjp.dx[i];
        }
        for (std::size_t i = 0; i < vjp.dweights.size(); ++i) {
            w.grad[i] += vjp.dweights[i];
        }
        return;
    }
    case Op::arctan: {
        Node &x = nodes_[static_cast<std::size_t>(n.a)];
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
            const double xv = x.value[i];
            x.grad[i] += n.grad[i] / (1.0 + xv * xv);
        }
        return;
    }
    case Op::softmax: {
        Node &x = nodes_[static_cast<std::size_t>(n.a)];
        double dot = 0.0;
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
            dot += n.grad[i] * n.value[i];
        }
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
            x.grad[i] += n.value[i] * (n.grad[i] - dot);
        }
        return;
    }
    case Op::log: {
        Node &x = nodes_[static_cast<std::size_t>(n.a)];
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
            x.grad[i] += n.grad[i] / x.value[i];
        }
        return;
    }
    case Op::square: {
        Node &x = nodes_[static_cast<std::size_t>(n.a)];
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
            x.grad[i] += 2.0 * x.value[i] * n.grad[i];
        }
        return;
    }
    case Op::sum: {
        Node &x = nodes_[static_cast<std::size_t>(n.a)];
        for (double &g : x.grad) {
            g += n.grad[0];
        }
        return;
    }
    case Op::pick: {
        Node &x = nodes_[static_cast<std::size_t>(n.a)];
        x.grad[static_cast<std::size_t>(n.i0)] += n.grad[0];
        return;
    }
    case Op::add: {
        Node &a = nodes_[static_cast<std::size_t>(n.a)];
        Node &b = nodes_[static_cast<std::size_t>(n.b)];
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
            a.grad[i] += n.grad[i];
            b.grad[i] += n.grad[i];
        }
        return;
    }
    case Op::sub: {
        Node &a = nodes_[static_cast<std::size_t>(n.a)];
        Node &b = nodes_[static_cast<std::size_t>(n.b)];
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
            a.grad[i] += n.grad[i];
            b.grad[i] -= n.grad[i];
        }
        return;
    }
    case Op::mul: {
        Node &a = nodes_[static_cast<std::size_t>(n.a)];
        Node &b = nodes_[static_cast<std::size_t>(n.b)];
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
            a.grad[i] += n.grad[i] * b.value[i];
            b.grad[i] += n.grad[i] * a.value[i];
        }
        return;
    }
    case Op::scale: {
        Node &x = nodes_[static_cast<std::size_t>(n.a)];
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
            x.grad[i] += n.scalar * n.grad[i];
        }
        return;
    }
    }
}

GradientBundle Graph::backward(NodeId root) {
    const Node &r = at(root);
    if (r.value.size() != 1) {
        throw UsageError("graph: backward root must be a scalar");
    }
    for (Node &n : nodes_) {
        std::fill(n.grad.begin(), n.grad.end(), 0.0);
    }
    nodes_[static_cast<std::size_t>(root)].grad[0] = 1.0;
    for (NodeId id = root; id >= 0; --id) {
        backprop_node(id);
    }

    GradientBundle bundle;
    for (const Node &n : nodes_) {
        if (n.op == Op::parameter) {
            bundle.emplace(n.name, n.grad);
        }
    }
    return bundle;
}

} // namespace qa3c
