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
#ifndef NETSIS_GRAPH_HPP
#define NETSIS_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netsis/errors.hpp"
#include "netsis/rng.hpp"

namespace netsis {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Simple undirected graph, immutable after construction.
///
/// Invariants enforced by from_edges():
///   - u in adj(v)  <=>  v in adj(u)
///   - no self-loops, no duplicate neighbors
///   - every node has degree >= 1
/// Neighbor lists are sorted; max_degree() is derived from the realized
/// degrees. Cumulative stub offsets are precomputed so degree-weighted
/// node draws (random edge end) take O(log M).
class Graph {
public:
    static Graph from_edges(std::size_t node_count, std::vector<Edge> edges)
    {
        if (node_count < 2) {
            throw std::invalid_argument("Graph: need at least 2 nodes");
        }
        std::vector<std::vector<NodeId>> adj(node_count);
        for (const auto& [u, v] : edges) {
            if (u >= node_count || v >= node_count) {
                throw std::invalid_argument("Graph: edge endpoint out of range");
            }
            if (u == v) {
                throw std::invalid_argument("Graph: self-loop at node " + std::to_string(u));
            }
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (std::size_t v = 0; v < node_count; ++v) {
            auto& nbrs = adj[v];
            if (nbrs.empty()) {
                throw std::invalid_argument("Graph: isolated node " + std::to_string(v)
                                            + " (minimum degree is 1)");
            }
            std::sort(nbrs.begin(), nbrs.end());
            if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
                throw std::invalid_argument("Graph: duplicate edge at node " + std::to_string(v));
            }
        }
        return Graph(std::move(adj), edges.size());
    }

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t stub_count() const { return 2 * edge_count_; }

    int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }
    int max_degree() const { return max_degree_; }

    std::span<const NodeId> neighbors(NodeId v) const
    {
        return {adjacency_[v].data(), adjacency_[v].size()};
    }

    /// Degrees of all nodes, indexed by node id.
    std::vector<int> degree_sequence() const
    {
        std::vector<int> degs(node_count());
        for (std::size_t v = 0; v < node_count(); ++v) {
            degs[v] = degree(static_cast<NodeId>(v));
        }
        return degs;
    }

    /// Node owning the given stub index in [0, 2E). Stubs are laid out in
    /// node order, so a uniform stub draw is a degree-weighted node draw.
    NodeId node_at_stub(std::size_t stub) const
    {
        auto it = std::upper_bound(stub_offset_.begin(), stub_offset_.end(),
                                   static_cast<std::uint64_t>(stub));
        return static_cast<NodeId>(std::distance(stub_offset_.begin(), it) - 1);
    }

    /// Canonical edge list (u < v), sorted.
    std::vector<Edge> edge_list() const
    {
        std::vector<Edge> edges;
        edges.reserve(edge_count_);
        for (NodeId u = 0; u < node_count(); ++u) {
            for (NodeId v : adjacency_[u]) {
                if (u < v) {
                    edges.emplace_back(u, v);
                }
            }
        }
        return edges;
    }

    bool has_edge(NodeId u, NodeId v) const
    {
        const auto& nbrs = adjacency_[u];
        return std::binary_search(nbrs.begin(), nbrs.end(), v);
    }

private:
    Graph(std::vector<std::vector<NodeId>> adjacency, std::size_t edge_count)
        : adjacency_(std::move(adjacency))
        , edge_count_(edge_count)
    {
        stub_offset_.resize(adjacency_.size() + 1, 0);
        max_degree_ = 0;
        for (std::size_t v = 0; v < adjacency_.size(); ++v) {
            const int d = static_cast<int>(adjacency_[v].size());
            max_degree_ = std::max(max_degree_, d);
            stub_offset_[v + 1] = stub_offset_[v] + static_cast<std::uint64_t>(d);
        }
    }

    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::uint64_t> stub_offset_;
    std::size_t edge_count_ = 0;
    int max_degree_ = 0;
};

// ---------------------------------------------------------------------------
// Edge-list and degree-sequence files
// ---------------------------------------------------------------------------

/// Plain-text edge list: one "u v" pair per line, 0-based ids, undirected,
/// no duplicates. Node count is 1 + the largest id seen.
inline Graph read_edge_list(std::istream& in)
{
    std::vector<Edge> edges;
    NodeId max_id = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        long long u = -1, v = -1;
        if (!(ls >> u >> v) || u < 0 || v < 0) {
            throw std::invalid_argument("edge list: malformed line " + std::to_string(line_no));
        }
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    if (edges.empty()) {
        throw std::invalid_argument("edge list: no edges");
    }
    return Graph::from_edges(static_cast<std::size_t>(max_id) + 1, std::move(edges));
}

inline Graph read_edge_list_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open edge list: " + path);
    }
    return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g)
{
    for (const auto& [u, v] : g.edge_list()) {
        out << u << ' ' << v << '\n';
    }
}

inline void write_edge_list_file(const std::string& path, const Graph& g)
{
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write edge list: " + path);
    }
    write_edge_list(out, g);
}

/// Degree-sequence file: one integer per line.
inline std::vector<int> read_degree_sequence(std::istream& in)
{
    std::vector<int> degrees;
    long long d = 0;
    while (in >> d) {
        if (d < 1) {
            throw std::invalid_argument("degree sequence: degrees must be >= 1");
        }
        degrees.push_back(static_cast<int>(d));
    }
    return degrees;
}

inline std::vector<int> read_degree_sequence_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open degree sequence: " + path);
    }
    return read_degree_sequence(in);
}

// ---------------------------------------------------------------------------
// Degree-sequence sampling
// ---------------------------------------------------------------------------

/// Truncated power law P(k) proportional to k^(-alpha) on [k_min, k_max].
struct PowerLawSpec {
    double alpha = 2.5;
    int k_min = 1;
    int k_max = 100;
};

/// One of: sample degrees from a power law, or use an explicit list.
struct DegreeSequenceSpec {
    std::optional<PowerLawSpec> power_law;
    std::optional<std::vector<int>> explicit_degrees;
};

/// Repairs sum parity in place: if the degree sum is odd, one uniformly
/// chosen entry is incremented when it is below k_max, otherwise decremented.
inline void repair_parity(std::vector<int>& degrees, int k_max, Rng& rng)
{
    long long sum = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    if (sum % 2 == 0) {
        return;
    }
    const std::size_t i = static_cast<std::size_t>(rng.below(degrees.size()));
    if (degrees[i] < k_max) {
        ++degrees[i];
    } else {
        --degrees[i];
    }
    if (degrees[i] < 1) {
        throw std::invalid_argument("repair_parity: adjustment would create a zero degree");
    }
}

/// Draws n degrees from the given distribution and guarantees an even sum.
/// Deterministic given the generator state.
inline std::vector<int> sample_degree_sequence(const DegreeSequenceSpec& spec, std::size_t n,
                                               Rng& rng)
{
    if (spec.explicit_degrees.has_value()) {
        std::vector<int> degrees = *spec.explicit_degrees;
        if (degrees.empty()) {
            throw std::invalid_argument("sample_degree_sequence: empty explicit list");
        }
        for (int d : degrees) {
            if (d < 1) {
                throw std::invalid_argument("sample_degree_sequence: degrees must be >= 1");
            }
        }
        const int k_max = *std::max_element(degrees.begin(), degrees.end());
        repair_parity(degrees, k_max, rng);
        return degrees;
    }

    if (!spec.power_law.has_value()) {
        throw std::invalid_argument("sample_degree_sequence: no distribution given");
    }
    const PowerLawSpec& pl = *spec.power_law;
    if (n < 2) {
        throw std::invalid_argument("sample_degree_sequence: n must be >= 2");
    }
    if (pl.alpha <= 1.0) {
        throw std::invalid_argument("sample_degree_sequence: alpha must exceed 1");
    }
    if (pl.k_min < 1 || pl.k_min > pl.k_max || static_cast<std::size_t>(pl.k_max) >= n) {
        throw std::invalid_argument("sample_degree_sequence: need 1 <= k_min <= k_max < n");
    }

    // Cumulative table over the finite support, then inverse-CDF draws.
    const int span = pl.k_max - pl.k_min + 1;
    std::vector<double> cdf(span);
    double total = 0.0;
    for (int i = 0; i < span; ++i) {
        total += std::pow(static_cast<double>(pl.k_min + i), -pl.alpha);
        cdf[i] = total;
    }
    std::vector<int> degrees(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double u = rng.uniform01() * total;
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        degrees[j] = pl.k_min + static_cast<int>(std::distance(cdf.begin(), it));
    }
    repair_parity(degrees, pl.k_max, rng);
    return degrees;
}

// ---------------------------------------------------------------------------
// Configuration model
// ---------------------------------------------------------------------------

struct ConfigModelReport {
    std::size_t restarts = 0;      // full re-shuffles before giving up on a clean match
    std::size_t erased_edges = 0;  // stub pairs dropped by the fallback
    double stub_deviation = 0.0;   // fraction of stubs lost
};

namespace detail {

/// One stub-matching pass. Returns edges on success, nullopt as soon as a
/// self-loop or duplicate shows up (failed attempts must be cheap: heavy
/// tails collide almost surely).
inline std::optional<std::vector<Edge>> try_stub_match(std::vector<NodeId>& stubs, Rng& rng,
                                                       std::unordered_set<std::uint64_t>& seen)
{
    rng.shuffle(stubs);
    seen.clear();
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const NodeId u = stubs[i], v = stubs[i + 1];
        if (u == v) {
            return std::nullopt;
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
        if (!seen.insert(key).second) {
            return std::nullopt;
        }
        edges.emplace_back(u, v);
    }
    return edges;
}

} // namespace detail

/// Builds a simple graph realizing the degree sequence via stub matching
/// with restart on collision. After the restart budget is exhausted, a final
/// pass keeps clean pairs, retries the colliding stubs a few rounds, and
/// erases whatever still collides. If the erased fraction of stubs exceeds
/// 1%, construction fails with the deviation statistics attached.
inline Graph build_configuration_model(const std::vector<int>& degrees, Rng& rng,
                                       std::size_t restart_budget = 100,
                                       ConfigModelReport* report = nullptr)
{
    const std::size_t n = degrees.size();
    if (n < 2) {
        throw std::invalid_argument("configuration model: need at least 2 nodes");
    }
    long long sum = 0;
    int k_max = 0;
    for (int d : degrees) {
        if (d < 1) {
            throw std::invalid_argument("configuration model: degrees must be >= 1");
        }
        sum += d;
        k_max = std::max(k_max, d);
    }
    if (sum % 2 != 0) {
        throw std::invalid_argument("configuration model: degree sum must be even");
    }
    if (static_cast<std::size_t>(k_max) >= n) {
        throw std::invalid_argument("configuration model: max degree must be < node count");
    }

    std::vector<NodeId> stubs;
    stubs.reserve(static_cast<std::size_t>(sum));
    for (std::size_t v = 0; v < n; ++v) {
        for (int i = 0; i < degrees[v]; ++i) {
            stubs.push_back(static_cast<NodeId>(v));
        }
    }

    ConfigModelReport local_report;
    std::unordered_set<std::uint64_t> seen_scratch;
    seen_scratch.reserve(stubs.size() / 2);
    for (std::size_t attempt = 0; attempt <= restart_budget; ++attempt) {
        if (auto edges = detail::try_stub_match(stubs, rng, seen_scratch)) {
            local_report.restarts = attempt;
            if (report) {
                *report = local_report;
            }
            return Graph::from_edges(n, std::move(*edges));
        }
    }
    local_report.restarts = restart_budget + 1;

    // Fallback: keep clean pairs, re-match the collision pool, erase the rest.
    rng.shuffle(stubs);
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(stubs.size() / 2);
    auto pack = [](NodeId u, NodeId v) {
        return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    };
    auto is_clean = [&](NodeId u, NodeId v) { return u != v && !seen.contains(pack(u, v)); };
    auto add_edge = [&](NodeId u, NodeId v) {
        seen.insert(pack(u, v));
        edges.emplace_back(u, v);
    };

    std::vector<NodeId> pool = std::move(stubs);
    const std::size_t total_stubs = pool.size();
    for (std::size_t round = 0; round < 20 && pool.size() >= 2; ++round) {
        if (round > 0) {
            rng.shuffle(pool);
        }
        std::vector<NodeId> leftover;
        for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
            if (is_clean(pool[i], pool[i + 1])) {
                add_edge(pool[i], pool[i + 1]);
            } else {
                leftover.push_back(pool[i]);
                leftover.push_back(pool[i + 1]);
            }
        }
        if (pool.size() % 2 == 1) {
            leftover.push_back(pool.back()); // cannot happen with even sum, kept for safety
        }
        pool = std::move(leftover);
    }

    local_report.erased_edges = pool.size() / 2;
    local_report.stub_deviation =
        static_cast<double>(pool.size()) / static_cast<double>(total_stubs);
    if (report) {
        *report = local_report;
    }
    if (local_report.stub_deviation > 0.01) {
        throw GraphConstructionError("configuration model: erased-edge fallback changed "
                                     + std::to_string(local_report.stub_deviation * 100.0)
                                     + "% of stubs",
                                     local_report.restarts, local_report.erased_edges,
                                     local_report.stub_deviation);
    }
    try {
        return Graph::from_edges(n, std::move(edges));
    } catch (const std::invalid_argument&) {
        // Erasure stripped some node of its last stub.
        throw GraphConstructionError("configuration model: fallback left an isolated node",
                                     local_report.restarts, local_report.erased_edges,
                                     local_report.stub_deviation);
    }
}

} // namespace netsis

#endif // NETSIS_GRAPH_HPP
