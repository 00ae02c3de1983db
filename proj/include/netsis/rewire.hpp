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
#ifndef NETSIS_REWIRE_HPP
#define NETSIS_REWIRE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "netsis/degree_stats.hpp"
#include "netsis/errors.hpp"
#include "netsis/graph.hpp"
#include "netsis/rng.hpp"

namespace netsis {

struct RewireResult {
    Graph graph;
    double assortativity;      // r of the returned graph
    std::size_t swaps_applied; // accepted double-edge swaps
    std::size_t proposals;     // proposals examined
    bool converged;            // |r - target| <= tolerance
};

/// Degree-preserving edge rewiring toward a target assortativity.
///
/// Repeatedly picks two edges uniformly, considers the two alternative
/// endpoint pairings, and greedily accepts the one that moves r strictly
/// closer to the target; pairings creating self-loops or duplicate edges
/// are rejected. r is tracked through the sufficient statistic
/// S = sum over edges of d(u) d(v), which swaps change in O(1); the degree
/// sequence (hence P(k), q(k) and sigma_q) is invariant throughout.
///
/// Returns early once within tolerance; otherwise returns the best-effort
/// graph with converged = false after max_swaps proposals.
inline RewireResult rewire_to_assortativity(const Graph& g, double target_r,
                                            std::size_t max_swaps, double tolerance, Rng& rng)
{
    if (g.edge_count() < 2) {
        throw std::invalid_argument("rewire_to_assortativity: need at least 2 edges");
    }
    const auto degrees = g.degree_sequence();
    // sigma_q = 0 exactly when the graph is regular
    if (*std::min_element(degrees.begin(), degrees.end()) == g.max_degree()) {
        throw UndefinedAssortativityError();
    }
    const double stubs = static_cast<double>(g.stub_count());
    double mu_q = 0.0, mu_q2 = 0.0;
    for (int d : degrees) {
        mu_q += static_cast<double>(d) * d / stubs;
        mu_q2 += static_cast<double>(d) * d * d / stubs;
    }
    const double var_q = mu_q2 - mu_q * mu_q;

    std::vector<Edge> edges = g.edge_list();
    const double edge_count = static_cast<double>(edges.size());
    auto pack = [](NodeId u, NodeId v) {
        return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    };
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    long long s = 0; // sum of d(u) d(v) over edges, exact in integers
    for (const auto& [u, v] : edges) {
        present.insert(pack(u, v));
        s += static_cast<long long>(degrees[u]) * degrees[v];
    }
    auto r_of = [&](long long sum) {
        return (static_cast<double>(sum) / edge_count - mu_q * mu_q) / var_q;
    };

    double r = r_of(s);
    std::size_t proposals = 0, accepted = 0;
    while (std::abs(r - target_r) > tolerance && proposals < max_swaps) {
        ++proposals;
        const std::size_t i = static_cast<std::size_t>(rng.below(edges.size()));
        const std::size_t j = static_cast<std::size_t>(rng.below(edges.size()));
        if (i == j) {
            continue;
        }
        const auto [a, b] = edges[i];
        const auto [c, d] = edges[j];
        if (a == c || a == d || b == c || b == d) {
            continue;
        }
        const long long da = degrees[a], db = degrees[b], dc = degrees[c], dd = degrees[d];
        const long long base = da * db + dc * dd;

        // pairing 1: (a,c) + (b,d); pairing 2: (a,d) + (b,c)
        long long best_s = s;
        int best = 0;
        if (!present.contains(pack(a, c)) && !present.contains(pack(b, d))) {
            const long long s1 = s + da * dc + db * dd - base;
            if (std::abs(r_of(s1) - target_r) < std::abs(r_of(best_s) - target_r)) {
                best_s = s1;
                best = 1;
            }
        }
        if (!present.contains(pack(a, d)) && !present.contains(pack(b, c))) {
            const long long s2 = s + da * dd + db * dc - base;
            if (std::abs(r_of(s2) - target_r) < std::abs(r_of(best_s) - target_r)) {
                best_s = s2;
                best = 2;
            }
        }
        if (best == 0) {
            continue;
        }
        present.erase(pack(a, b));
        present.erase(pack(c, d));
        if (best == 1) {
            edges[i] = {a, c};
            edges[j] = {b, d};
        } else {
            edges[i] = {a, d};
            edges[j] = {b, c};
        }
        present.insert(pack(edges[i].first, edges[i].second));
        present.insert(pack(edges[j].first, edges[j].second));
        s = best_s;
        r = r_of(s);
        ++accepted;
    }

    Graph rewired = Graph::from_edges(g.node_count(), std::move(edges));
    return {std::move(rewired), r, accepted, proposals, std::abs(r - target_r) <= tolerance};
}

} // namespace netsis

#endif // NETSIS_REWIRE_HPP
