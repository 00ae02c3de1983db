/*
 * Copyright (C) 2026 netsis contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "helpers.hpp"
#include "netsis/graph.hpp"

using namespace netsis;

TEST_CASE("from_edges enforces simplicity and minimum degree")
{
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), std::invalid_argument);      // self-loop
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument); // duplicate
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}}), std::invalid_argument);      // isolated node 2
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5}}), std::invalid_argument);      // out of range

    const auto g = testing::star(4);
    CHECK(g.node_count() == 5);
    CHECK(g.edge_count() == 4);
    CHECK(g.max_degree() == 4);
    CHECK(g.degree(0) == 4);
    CHECK(g.degree(3) == 1);
    CHECK(g.has_edge(0, 3));
    CHECK(!g.has_edge(1, 2));
}

TEST_CASE("node_at_stub maps stubs in degree proportion")
{
    const auto g = testing::star(4);
    // stubs: node 0 owns 4 of the 8
    int hub_stubs = 0;
    for (std::size_t s = 0; s < g.stub_count(); ++s) {
        if (g.node_at_stub(s) == 0) {
            ++hub_stubs;
        }
    }
    CHECK(hub_stubs == 4);
}

TEST_CASE("edge list round-trips through the text format")
{
    const auto g = testing::star(4);
    std::stringstream buffer;
    write_edge_list(buffer, g);
    const auto back = read_edge_list(buffer);
    CHECK(back.node_count() == g.node_count());
    CHECK(back.edge_list() == g.edge_list());
}

TEST_CASE("edge list reader rejects malformed input")
{
    std::stringstream bad("0 1\nnot numbers\n");
    CHECK_THROWS_AS(read_edge_list(bad), std::invalid_argument);
    std::stringstream loop("0 0\n");
    CHECK_THROWS_AS(read_edge_list(loop), std::invalid_argument);
}

TEST_CASE("explicit degree sequences pass through with parity repair")
{
    Rng rng(11);
    DegreeSequenceSpec spec;
    spec.explicit_degrees = std::vector<int>{4, 1, 1, 1, 1};
    CHECK(sample_degree_sequence(spec, 5, rng) == std::vector<int>{4, 1, 1, 1, 1});

    spec.explicit_degrees = std::vector<int>{3, 1, 1};
    const auto repaired = sample_degree_sequence(spec, 3, rng);
    const long long sum = std::accumulate(repaired.begin(), repaired.end(), 0LL);
    CHECK(sum % 2 == 0);
    // exactly one entry changed by exactly 1
    const std::vector<int> original{3, 1, 1};
    int changed = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const int diff = std::abs(repaired[i] - original[i]);
        CHECK(diff <= 1);
        changed += diff;
    }
    CHECK(changed == 1);
}

TEST_CASE("power-law sampling matches the analytic truncated mean")
{
    // Independent oracle: the truncated zeta mean, summed directly.
    const double alpha = 2.5;
    const int k_min = 1, k_max = 100;
    double num = 0.0, den = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const double w = std::pow(static_cast<double>(k), -alpha);
        num += k * w;
        den += w;
    }
    const double analytic_mean = num / den;

    Rng rng(2024);
    DegreeSequenceSpec spec;
    spec.power_law = PowerLawSpec{alpha, k_min, k_max};
    const auto degrees = sample_degree_sequence(spec, 10000, rng);
    CHECK(degrees.size() == 10000);
    const double mean = std::accumulate(degrees.begin(), degrees.end(), 0.0) / 10000.0;
    CHECK(std::abs(mean - analytic_mean) / analytic_mean < 0.10);
    for (int d : degrees) {
        CHECK(d >= k_min);
        CHECK(d <= k_max);
    }
    CHECK(std::accumulate(degrees.begin(), degrees.end(), 0LL) % 2 == 0);
}

TEST_CASE("degree sequence sampling rejects infeasible specs")
{
    Rng rng(1);
    DegreeSequenceSpec spec;
    spec.power_law = PowerLawSpec{2.5, 10, 5}; // k_min > k_max
    CHECK_THROWS_AS(sample_degree_sequence(spec, 100, rng), std::invalid_argument);
    spec.power_law = PowerLawSpec{0.5, 1, 5}; // alpha <= 1
    CHECK_THROWS_AS(sample_degree_sequence(spec, 100, rng), std::invalid_argument);
    spec.power_law = PowerLawSpec{2.5, 1, 200}; // k_max >= n
    CHECK_THROWS_AS(sample_degree_sequence(spec, 100, rng), std::invalid_argument);
}

TEST_CASE("configuration model realizes forced sequences")
{
    Rng rng(5);
    SUBCASE("single edge")
    {
        const auto g = build_configuration_model({1, 1}, rng);
        CHECK(g.edge_count() == 1);
        CHECK(g.has_edge(0, 1));
    }
    SUBCASE("star")
    {
        const auto g = build_configuration_model({4, 1, 1, 1, 1}, rng);
        CHECK(g.degree(0) == 4);
        for (NodeId v = 1; v <= 4; ++v) {
            CHECK(g.degree(v) == 1);
            CHECK(g.has_edge(0, v));
        }
    }
    SUBCASE("triangle")
    {
        const auto g = build_configuration_model({2, 2, 2}, rng);
        CHECK(g.edge_count() == 3);
        CHECK(g.has_edge(0, 1));
        CHECK(g.has_edge(1, 2));
        CHECK(g.has_edge(0, 2));
    }
}

TEST_CASE("configuration model realizes requested degrees on heavy tails")
{
    Rng rng(99);
    DegreeSequenceSpec spec;
    spec.power_law = PowerLawSpec{2.5, 1, 40};
    const auto degrees = sample_degree_sequence(spec, 2000, rng);
    ConfigModelReport report;
    const auto g = build_configuration_model(degrees, rng, 100, &report);
    CHECK(g.node_count() == 2000);
    // Fallback may erase a tiny fraction of stubs; realized degrees can be
    // at most `degrees` and the deviation must stay within the 1% budget.
    CHECK(report.stub_deviation <= 0.01);
    std::size_t mismatched = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        CHECK(g.degree(v) <= degrees[v]);
        mismatched += g.degree(v) != degrees[v] ? 1 : 0;
    }
    CHECK(mismatched <= 2 * report.erased_edges);
}

TEST_CASE("infeasible dense sequences fail with deviation statistics")
{
    // 10 nodes of degree 50 among 60: hub-hub multi-edges are unavoidable,
    // so the erasure fallback blows the 1% stub budget
    std::vector<int> degrees;
    for (int i = 0; i < 10; ++i) {
        degrees.push_back(50);
    }
    for (int i = 0; i < 50; ++i) {
        degrees.push_back(2);
    }
    Rng rng(1);
    try {
        build_configuration_model(degrees, rng, 20);
        FAIL("expected GraphConstructionError");
    } catch (const GraphConstructionError& err) {
        CHECK(err.stub_deviation > 0.01);
        CHECK(err.erased_edges > 0);
        CHECK(err.restarts == 21); // budget 20 + the final counted attempt
    }
}

TEST_CASE("configuration model validates input")
{
    Rng rng(1);
    CHECK_THROWS_AS(build_configuration_model({1, 1, 1}, rng), std::invalid_argument); // odd sum
    CHECK_THROWS_AS(build_configuration_model({3, 1, 1}, rng),
                    std::invalid_argument); // max degree >= n
    CHECK_THROWS_AS(build_configuration_model({0, 2, 2}, rng),
                    std::invalid_argument); // zero degree
}
