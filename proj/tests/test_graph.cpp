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
#include "qa3c/graph.hpp"
#include "test_util.hpp"

using namespace qa3c;

TEST_CASE("linear_forward examples") {
    LinearLayer identity = LinearLayer::zeros(2, 2);
    identity.weight = {1, 0, 0, 1};
    const std::vector<double> y =
        linear_forward(identity, std::vector<double>{1.0, 2.0});
    CHECK(y[0] == 1.0);
    CHECK(y[1] == 2.0);

    LinearLayer bias_only = LinearLayer::zeros(1, 2);
    bias_only.bias = {3.0};
    CHECK(linear_forward(bias_only, std::vector<double>{7.0, -4.0})[0] == 3.0);

    LinearLayer row = LinearLayer::zeros(1, 2);
    row.weight = {1, 1};
    row.bias = {0.5};
    CHECK(linear_forward(row, std::vector<double>{2.0, 3.0})[0] ==
          doctest::Approx(5.5));

    CHECK_THROWS_AS(linear_forward(row, std::vector<double>{1.0}),
                    ConfigError);
}

TEST_CASE("softmax examples and properties") {
    const std::vector<double> even = softmax(std::vector<double>{0.0, 0.0});
    CHECK(even[0] == doctest::Approx(0.5));
    CHECK(even[1] == doctest::Approx(0.5));

    const std::vector<double> big =
        softmax(std::vector<double>{1000.0, 1000.0, 1000.0});
    for (double p : big) {
        CHECK(p == doctest::Approx(1.0 / 3.0));
    }

    const std::vector<double> closed =
        softmax(std::vector<double>{std::log(2.0), 0.0});
    CHECK(closed[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(closed[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> logits(5);
        for (double &v : logits) {
            v = rng.uniform(-30.0, 30.0);
        }
        const std::vector<double> p = softmax(logits);
        double sum = 0.0;
        for (double v : p) {
            sum += v;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);

        const double shift = rng.uniform(-100.0, 100.0);
        std::vector<double> shifted = logits;
        for (double &v : shifted) {
            v += shift;
        }
        const std::vector<double> q = softmax(shifted);
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(std::abs(p[i] - q[i]) < 1e-12);
        }
    }

    CHECK_THROWS_AS(softmax(std::vector<double>{std::nan(""), 0.0}),
                    NumericError);
}

TEST_CASE("identity of a single parameter has gradient one") {
    Graph g;
    const Graph::NodeId p = g.parameter("w", std::vector<double>{2.5});
    const GradientBundle grads = g.backward(g.pick(p, 0));
    CHECK(grads.at("w")[0] == 1.0);
}

TEST_CASE("squared residual is stationary at the target") {
    Graph g;
    const Graph::NodeId v = g.parameter("v", std::vector<double>{4.0});
    const Graph::NodeId r = g.constant({4.0});
    const Graph::NodeId loss = g.sum(g.square(g.sub(r, v)));
    const GradientBundle grads = g.backward(loss);
    CHECK(grads.at("v")[0] == 0.0);
}

TEST_CASE("non-scalar backward root is rejected") {
    Graph g;
    const Graph::NodeId p = g.parameter("w", std::vector<double>{1.0, 2.0});
    CHECK_THROWS_AS(g.backward(p), UsageError);
}

TEST_CASE("duplicate parameter names are rejected") {
    Graph g;
    g.parameter("w", std::vector<double>{1.0});
    CHECK_THROWS_AS(g.parameter("w", std::vector<double>{2.0}), UsageError);
}

TEST_CASE("node set matches finite differences on a composed scalar") {
    // softmax . linear with arctan squashing and a log-pick head, plus
    // square/sum/mul/scale branches: every node type in one scalar.
    Rng rng(32);
    std::vector<double> w0 = {0.3, -0.7, 0.2, 0.9, -0.1, 0.4};
    std::vector<double> b0 = {0.05, -0.2};
    const std::vector<double> x = {0.4, -1.2, 2.2};

    auto scalar_of = [&](const std::vector<double> &wv,
                         const std::vector<double> &bv, double *out_value) {
        Graph g;
        const Graph::NodeId w = g.parameter("w", wv);
        const Graph::NodeId b = g.parameter("b", bv);
        const Graph::NodeId in = g.constant(x);
        const Graph::NodeId squashed = g.arctan(in);
        const Graph::NodeId logits = g.linear(w, b, squashed, 2, 3);
        const Graph::NodeId probs = g.softmax_node(logits);
        const Graph::NodeId logp = g.log(probs);
        const Graph::NodeId plogp = g.mul(probs, logp);
        const Graph::NodeId entropy_ish = g.scale(g.sum(plogp), -1.0);
        const Graph::NodeId picked = g.pick(logp, 1);
        const Graph::NodeId sq = g.sum(g.square(logits));
        const Graph::NodeId root =
            g.add(g.add(picked, entropy_ish), g.scale(sq, 0.25));
        if (out_value != nullptr) {
            *out_value = g.value(root)[0];
        }
        return g.backward(root);
    };

    double base_value = 0.0;
    const GradientBundle analytic = scalar_of(w0, b0, &base_value);
    CHECK(std::isfinite(base_value));

    const std::vector<double> fd_w = test::fd_gradient(
        [&](const std::vector<double> &wv) {
            double value = 0.0;
            scalar_of(wv, b0, &value);
            return value;
        },
        w0);
    for (std::size_t i = 0; i < fd_w.size(); ++i) {
        CHECK(test::scaled_err(analytic.at("w")[i], fd_w[i]) < 1e-6);
    }
    const std::vector<double> fd_b = test::fd_gradient(
        [&](const std::vector<double> &bv) {
            double value = 0.0;
            scalar_of(w0, bv, &value);
            return value;
        },
        b0);
    for (std::size_t i = 0; i < fd_b.size(); ++i) {
        CHECK(test::scaled_err(analytic.at("b")[i], fd_b[i]) < 1e-6);
    }
    (void)rng;
}

TEST_CASE("vqc node routes gradients through both methods") {
    Rng rng(33);
    VqcLayerSpec spec = VqcLayerSpec::zeros(3, 1);
    for (double &w : spec.weights) {
        w = rng.uniform(-1.5, 1.5);
    }
    const std::vector<double> x = {0.2, -0.8, 1.4};

    auto bundle_with = [&](VqcGradMethod method) {
        Graph g;
        const Graph::NodeId w = g.parameter("w", spec.weights);
        const Graph::NodeId in = g.constant(x);
        const Graph::NodeId z = g.vqc(w, in, 3, 1, method);
        return g.backward(g.sum(z));
    };
    const GradientBundle adj = bundle_with(VqcGradMethod::adjoint);
    const GradientBundle shift = bundle_with(VqcGradMethod::param_shift);
    for (std::size_t i = 0; i < adj.at("w").size(); ++i) {
        CHECK(std::abs(adj.at("w")[i] - shift.at("w")[i]) < 1e-8);
    }
}

TEST_CASE("backward of a sum equals the sum of backwards") {
    Rng rng(34);
    std::vector<double> w = {0.5, -0.25, 0.75, 0.1, 0.9, -0.6};
    std::vector<double> xs[2] = {{0.3, -0.4, 1.1}, {-2.0, 0.7, 0.2}};

    auto term_bundle = [&](int which) {
        Graph g;
        const Graph::NodeId wp = g.parameter("w", w);
        const Graph::NodeId b = g.constant({0.0, 0.0});
        const Graph::NodeId logits = g.linear(
            wp, b, g.constant(xs[which]), 2, 3);
        return g.backward(g.pick(g.log(g.softmax_node(logits)), 0));
    };
    auto combined_bundle = [&] {
        Graph g;
        const Graph::NodeId wp = g.parameter("w", w);
        Graph::NodeId total = -1;
        for (int which = 0; which < 2; ++which) {
            const Graph::NodeId b = g.constant({0.0, 0.0});
            const Graph::NodeId logits =
                g.linear(wp, b, g.constant(xs[which]), 2, 3);
            const Graph::NodeId term =
                g.pick(g.log(g.softmax_node(logits)), 0);
            total = total < 0 ? term : g.add(total, term);
        }
        return g.backward(total);
    };

    const GradientBundle a = term_bundle(0);
    const GradientBundle b = term_bundle(1);
    const GradientBundle both = combined_bundle();
    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(std::abs(both.at("w")[i] - (a.at("w")[i] + b.at("w")[i])) <
              1e-14);
    }
    (void)rng;
}
