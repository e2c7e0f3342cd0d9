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
#include "qa3c/checkpoint.hpp"

#include <fstream>
#include <vector>

#include <json.hpp>

#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

using nlohmann::json;

// Shape of each named tensor, derived from the model dimensions. Vectors
// serialize flat, matrices as rows, VQC weights as (layer, qubit, 3).
json to_nested(const std::string &name, const HybridModel &m,
               const std::vector<double> &flat) {
    auto matrix = [&](int rows, int cols) {
        json out = json::array();
        for (int r = 0; r < rows; ++r) {
            json row = json::array();
            for (int c = 0; c < cols; ++c) {
                row.push_back(flat[static_cast<std::size_t>(r * cols + c)]);
            }
            out.push_back(std::move(row));
        }
        return out;
    };
    if (name == "pre.weight") {
        return matrix(m.pre.out_dim, m.pre.in_dim);
    }
    if (name == "core.weight") {
        return matrix(m.core_linear.out_dim, m.core_linear.in_dim);
    }
    if (name == "post.weight") {
        return matrix(m.post.out_dim, m.post.in_dim);
    }
    if (name == "core.weights") {
        json layers = json::array();
        int idx = 0;
        for (int l = 0; l < m.core_vqc.n_layers; ++l) {
            json qubits = json::array();
            for (int q = 0; q < m.core_vqc.n_qubits; ++q) {
                json angles = json::array();
                for (int k = 0; k < 3; ++k) {
                    angles.push_back(flat[static_cast<std::size_t>(idx++)]);
                }
                qubits.push_back(std::move(angles));
            }
            layers.push_back(std::move(qubits));
        }
        return layers;
    }
    return json(flat); // biases stay one-dimensional
}

void flatten_into(const json &node, std::vector<double> &out) {
    if (node.is_array()) {
        for (const json &child : node) {
            flatten_into(child, out);
        }
        return;
    }
    if (!node.is_number()) {
        throw ConfigError("checkpoint: parameter entries must be numbers");
    }
    out.push_back(node.get<double>());
}

void load_param(const json &doc, const std::string &key,
                std::vector<double> &values) {
    if (!doc.contains(key)) {
        throw ConfigError("checkpoint: missing parameter '" + key + "'");
    }
    std::vector<double> flat;
    flatten_into(doc.at(key), flat);
    if (flat.size() != values.size()) {
        throw ConfigError("checkpoint: parameter '" + key + "' has " +
                          std::to_string(flat.size()) + " entries, expected " +
                          std::to_string(values.size()));
    }
    values = std::move(flat);
}

int require_int(const json &meta, const char *key) {
    if (!meta.contains(key) || !meta.at(key).is_number_integer()) {
        throw ConfigError(std::string("checkpoint: meta is missing '") + key +
                          "'");
    }
    return meta.at(key).get<int>();
}

} // namespace

void save_checkpoint(const std::string &path, const CheckpointMeta &meta,
                     const HybridModel &actor, const HybridModel &critic) {
    json doc;
    doc["meta"] = {
        {"env", meta.env},           {"variant", to_string(meta.variant)},
        {"n_qubits", meta.n_qubits}, {"n_layers", meta.n_layers},
        {"seed", meta.seed},
    };
    actor.for_each_param(
        [&](const std::string &name, const std::vector<double> &values) {
            doc["actor." + name] = to_nested(name, actor, values);
        });
    critic.for_each_param(
        [&](const std::string &name, const std::vector<double> &values) {
            doc["critic." + name] = to_nested(name, critic, values);
        });

    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write checkpoint '" + path + "'");
    }
    out << doc.dump(1) << "\n";
    if (!out) {
        throw IoError("failed writing checkpoint '" + path + "'");
    }
}

Checkpoint load_checkpoint(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read checkpoint '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error &e) {
        throw ConfigError("checkpoint '" + path + "' is not valid JSON: " +
                          e.what());
    }
    if (!doc.contains("meta")) {
        throw ConfigError("checkpoint '" + path + "' has no meta block");
    }
    const json &meta_doc = doc.at("meta");

    Checkpoint ckpt;
    ckpt.meta.env = meta_doc.value("env", std::string{});
    ckpt.meta.variant =
        variant_from_string(meta_doc.value("variant", std::string{}));
    ckpt.meta.n_qubits = require_int(meta_doc, "n_qubits");
    ckpt.meta.n_layers = require_int(meta_doc, "n_layers");
    ckpt.meta.seed = meta_doc.value("seed", std::uint64_t{0});

    // Model shapes are recovered from the stored arrays themselves.
    auto shape_of = [&](const std::string &key) -> std::pair<int, int> {
        if (!doc.contains(key) || !doc.at(key).is_array() ||
            doc.at(key).empty() || !doc.at(key).at(0).is_array()) {
            throw ConfigError("checkpoint: '" + key +
                              "' must be a nested array");
        }
        return {static_cast<int>(doc.at(key).size()),
                static_cast<int>(doc.at(key).at(0).size())};
    };

    for (const char *role : {"actor", "critic"}) {
        const std::string prefix = std::string(role) + ".";
        const auto [width, obs_dim] = shape_of(prefix + "pre.weight");
        const auto [head_dim, width2] = shape_of(prefix + "post.weight");
        if (width != ckpt.meta.n_qubits || width2 != width) {
            throw ConfigError("checkpoint: inconsistent layer widths for " +
                              std::string(role));
        }
        HybridModel m;
        m.variant = ckpt.meta.variant;
        m.pre = LinearLayer::zeros(width, obs_dim);
        if (m.variant == Variant::quantum) {
            m.core_vqc =
                VqcLayerSpec::zeros(ckpt.meta.n_qubits, ckpt.meta.n_layers);
        } else {
            m.core_linear = LinearLayer::zeros(width, width);
        }
        m.post = LinearLayer::zeros(head_dim, width);
        m.for_each_param(
            [&](const std::string &name, std::vector<double> &values) {
                load_param(doc, prefix + name, values);
            });
        if (std::string(role) == "actor") {
            ckpt.actor = std::move(m);
        } else {
            ckpt.critic = std::move(m);
        }
    }
    if (ckpt.critic.head_dim() != 1) {
        throw ConfigError("checkpoint: critic head must be scalar");
    }
    return ckpt;
}

} // namespace qa3c
