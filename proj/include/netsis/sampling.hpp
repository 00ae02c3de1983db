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
#ifndef NETSIS_SAMPLING_HPP
#define NETSIS_SAMPLING_HPP

#include "netsis/degree_stats.hpp"
#include "netsis/graph.hpp"
#include "netsis/rng.hpp"

namespace netsis {

inline NodeId sample_uniform_node(const Graph& g, Rng& rng)
{
    return static_cast<NodeId>(rng.below(g.node_count()));
}

/// Uniform end of a uniform edge. Implemented as a uniform stub draw, which
/// weights node v by d(v)/2E; this stays well-defined on multi-component
/// graphs.
inline NodeId sample_edge_end(const Graph& g, Rng& rng)
{
    return g.node_at_stub(static_cast<std::size_t>(rng.below(g.stub_count())));
}

/// Uniform neighbor of a uniformly drawn node.
inline NodeId sample_random_neighbor(const Graph& g, Rng& rng)
{
    const NodeId x = sample_uniform_node(g, rng);
    const auto nbrs = g.neighbors(x);
    return nbrs[static_cast<std::size_t>(rng.below(nbrs.size()))];
}

inline NodeId sample_node(const Graph& g, SamplingScheme scheme, Rng& rng)
{
    switch (scheme) {
    case SamplingScheme::uniform_node:
        return sample_uniform_node(g, rng);
    case SamplingScheme::edge_end:
        return sample_edge_end(g, rng);
    case SamplingScheme::random_neighbor:
        return sample_random_neighbor(g, rng);
    }
    throw std::logic_error("sample_node: bad scheme");
}

} // namespace netsis

#endif // NETSIS_SAMPLING_HPP
