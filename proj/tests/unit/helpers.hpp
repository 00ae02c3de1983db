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
#ifndef NETSIS_TEST_HELPERS_HPP
#define NETSIS_TEST_HELPERS_HPP

#include <vector>

#include "netsis/graph.hpp"

namespace netsis::testing {

/// K_{1,n}: node 0 is the hub.
inline Graph star(int leaves)
{
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) {
        edges.emplace_back(0, static_cast<NodeId>(i));
    }
    return Graph::from_edges(static_cast<std::size_t>(leaves) + 1, std::move(edges));
}

inline Graph triangle()
{
    return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
}

inline Graph cycle(int n)
{
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
    }
    return Graph::from_edges(static_cast<std::size_t>(n), std::move(edges));
}

/// Two disjoint copies of g.
inline Graph disjoint_double(const Graph& g)
{
    const auto offset = static_cast<NodeId>(g.node_count());
    std::vector<Edge> edges = g.edge_list();
    const std::size_t original = edges.size();
    edges.reserve(2 * original);
    for (std::size_t i = 0; i < original; ++i) {
        edges.emplace_back(edges[i].first + offset, edges[i].second + offset);
    }
    return Graph::from_edges(2 * g.node_count(), std::move(edges));
}

} // namespace netsis::testing

#endif // NETSIS_TEST_HELPERS_HPP
