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
#ifndef NETSIS_DEGREE_STATS_HPP
#define NETSIS_DEGREE_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "netsis/errors.hpp"
#include "netsis/graph.hpp"

namespace netsis {

/// How a node is drawn from the network:
///   uniform_node    - uniformly over all nodes
///   edge_end        - uniform end of a uniform edge (weight d(v) / sum d)
///   random_neighbor - uniform neighbor of a uniformly drawn node
enum class SamplingScheme { uniform_node, edge_end, random_neighbor };

/// P(k) = M(k)/M plus the per-class counts. Dense over k = 0..D with
/// pmf[0] == 0; support() lists the degrees with positive mass.
struct DegreeDistribution {
    std::vector<double> pmf;               // index by degree k
    std::vector<std::size_t> class_counts; // M(k); empty when built from a pmf file
    std::vector<int> support;              // ascending degrees with pmf[k] > 0
    int max_degree = 0;

    static DegreeDistribution from_graph(const Graph& g)
    {
        DegreeDistribution dist;
        dist.max_degree = g.max_degree();
        dist.pmf.assign(dist.max_degree + 1, 0.0);
        dist.class_counts.assign(dist.max_degree + 1, 0);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            ++dist.class_counts[g.degree(v)];
        }
        const double m = static_cast<double>(g.node_count());
        for (int k = 1; k <= dist.max_degree; ++k) {
            dist.pmf[k] = static_cast<double>(dist.class_counts[k]) / m;
            if (dist.class_counts[k] > 0) {
                dist.support.push_back(k);
            }
        }
        return dist;
    }

    /// From an explicit pmf (index = degree). Entry 0 must be zero.
    static DegreeDistribution from_pmf(std::vector<double> pmf)
    {
        if (pmf.size() < 2) {
            throw std::invalid_argument("DegreeDistribution: pmf needs entries for k >= 1");
        }
        if (pmf[0] != 0.0) {
            throw std::invalid_argument("DegreeDistribution: P(0) must be zero");
        }
        double total = 0.0;
        for (double p : pmf) {
            if (p < 0.0) {
                throw std::invalid_argument("DegreeDistribution: negative mass");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw std::invalid_argument("DegreeDistribution: pmf does not sum to 1");
        }
        DegreeDistribution dist;
        dist.pmf = std::move(pmf);
        dist.max_degree = static_cast<int>(dist.pmf.size()) - 1;
        for (int k = 1; k <= dist.max_degree; ++k) {
            if (dist.pmf[k] > 0.0) {
                dist.support.push_back(k);
            }
        }
        return dist;
    }

    double mean() const
    {
        double m = 0.0;
        for (int k : support) {
            m += static_cast<double>(k) * pmf[k];
        }
        return m;
    }
};

/// Joint degree statistics of a graph: the edge-endpoint fraction matrix
/// e(k,k'), its marginal q(k), and the conditional P(k|k') = e(k,k')/q(k'),
/// the probability that a random neighbor of a degree-k' node has degree k.
/// Each undirected edge contributes two ordered endpoint pairs, so e is
/// symmetric and sums to 1.
class JointDegreeStats {
public:
    static JointDegreeStats from_graph(const Graph& g)
    {
        JointDegreeStats s;
        s.max_degree_ = g.max_degree();
        s.degree_dist_ = DegreeDistribution::from_graph(g);
        const int dim = s.max_degree_ + 1;
        s.edge_fraction_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
        s.end_degree_.assign(dim, 0.0);

        const double stubs = static_cast<double>(g.stub_count());
        for (NodeId u = 0; u < g.node_count(); ++u) {
            const int ku = g.degree(u);
            for (NodeId v : g.neighbors(u)) {
                // ordered pair (u, v): first end degree ku, second end d(v)
                s.edge_fraction_[static_cast<std::size_t>(ku) * dim + g.degree(v)] += 1.0 / stubs;
            }
        }
        s.finalize();
        return s;
    }

    /// From an explicit symmetric e(k,k') matrix (dense, (D+1)^2, row k,
    /// column k') and the matching degree distribution.
    static JointDegreeStats from_edge_fractions(std::vector<double> e, DegreeDistribution dist)
    {
        JointDegreeStats s;
        s.max_degree_ = dist.max_degree;
        const std::size_t dim = static_cast<std::size_t>(s.max_degree_) + 1;
        if (e.size() != dim * dim) {
            throw std::invalid_argument("JointDegreeStats: e matrix has wrong shape");
        }
        double total = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            for (std::size_t k2 = 0; k2 < dim; ++k2) {
                const double val = e[k * dim + k2];
                if (val < 0.0) {
                    throw std::invalid_argument("JointDegreeStats: negative e entry");
                }
                if (std::abs(val - e[k2 * dim + k]) > 1e-12) {
                    throw std::invalid_argument("JointDegreeStats: e must be symmetric");
                }
                total += val;
            }
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw std::invalid_argument("JointDegreeStats: e must sum to 1");
        }
        s.degree_dist_ = std::move(dist);
        s.edge_fraction_ = std::move(e);
        s.end_degree_.assign(dim, 0.0);
        s.finalize();
        return s;
    }

    /// Degree-uncorrelated stats for a bare distribution: e(k,k') factorizes
    /// as q(k) q(k') with q(k) = k P(k) / k-bar, so P(k|k') = q(k) for every
    /// k'. This is the natural completion when only P(k) is known.
    static JointDegreeStats uncorrelated(DegreeDistribution dist)
    {
        const double mean = dist.mean();
        if (mean <= 0.0) {
            throw std::invalid_argument("JointDegreeStats: distribution has zero mean degree");
        }
        const std::size_t dim = static_cast<std::size_t>(dist.max_degree) + 1;
        std::vector<double> q(dim, 0.0);
        for (int k : dist.support) {
            q[k] = static_cast<double>(k) * dist.pmf[k] / mean;
        }
        std::vector<double> e(dim * dim, 0.0);
        for (std::size_t k = 1; k < dim; ++k) {
            for (std::size_t k2 = 1; k2 < dim; ++k2) {
                e[k * dim + k2] = q[k] * q[k2];
            }
        }
        return from_edge_fractions(std::move(e), std::move(dist));
    }

    int max_degree() const { return max_degree_; }
    const DegreeDistribution& degree_dist() const { return degree_dist_; }

    double e(int k, int k2) const
    {
        return edge_fraction_[static_cast<std::size_t>(k) * (max_degree_ + 1) + k2];
    }
    double q(int k) const { return end_degree_[k]; }

    /// P(k | k'): neighbor degree k given node degree k'. Zero when q(k') = 0.
    double conditional(int k, int given) const
    {
        return end_degree_[given] > 0.0 ? e(k, given) / end_degree_[given] : 0.0;
    }

    double sigma_q() const { return sigma_q_; }

    /// Average degree k-bar = E[d(X)].
    double mean_degree() const { return degree_dist_.mean(); }

private:
    void finalize()
    {
        const int dim = max_degree_ + 1;
        for (int k = 0; k < dim; ++k) {
            double qk = 0.0;
            for (int k2 = 0; k2 < dim; ++k2) {
                qk += edge_fraction_[static_cast<std::size_t>(k) * dim + k2];
            }
            end_degree_[k] = qk;
        }
        double mean_q = 0.0, mean_q2 = 0.0;
        int q_support = 0;
        for (int k = 1; k < dim; ++k) {
            mean_q += k * end_degree_[k];
            mean_q2 += static_cast<double>(k) * k * end_degree_[k];
            q_support += end_degree_[k] > 0.0 ? 1 : 0;
        }
        mean_end_degree_ = mean_q;
        // All edge ends share one degree <=> the variance is structurally
        // zero; the float cancellation residue would otherwise leak through.
        sigma_q_ = q_support <= 1 ? 0.0 : std::sqrt(std::max(0.0, mean_q2 - mean_q * mean_q));
    }

    int max_degree_ = 0;
    DegreeDistribution degree_dist_;
    std::vector<double> edge_fraction_; // e(k,k'), row-major (D+1)^2
    std::vector<double> end_degree_;    // q(k)
    double sigma_q_ = 0.0;
    double mean_end_degree_ = 0.0;

    friend double assortativity(const JointDegreeStats&);
};

inline JointDegreeStats joint_degree_stats(const Graph& g)
{
    return JointDegreeStats::from_graph(g);
}

/// Degree-degree correlation coefficient
///   r = (1/sigma_q^2) * sum_{k,k'} k k' (e(k,k') - q(k) q(k')).
/// Throws UndefinedAssortativityError on regular graphs (sigma_q = 0).
inline double assortativity(const JointDegreeStats& stats)
{
    const double var_q = stats.sigma_q_ * stats.sigma_q_;
    if (var_q <= 0.0) {
        throw UndefinedAssortativityError();
    }
    const int dim = stats.max_degree_ + 1;
    double cross = 0.0;
    for (int k = 1; k < dim; ++k) {
        for (int k2 = 1; k2 < dim; ++k2) {
            cross += static_cast<double>(k) * k2
                     * stats.edge_fraction_[static_cast<std::size_t>(k) * dim + k2];
        }
    }
    double r = (cross - stats.mean_end_degree_ * stats.mean_end_degree_) / var_q;
    if (r > 1.0 + 1e-9 || r < -1.0 - 1e-9) {
        throw std::logic_error("assortativity outside [-1, 1]");
    }
    return std::clamp(r, -1.0, 1.0);
}

/// Exact degree law of the given sampling scheme, dense over k = 0..D:
///   uniform_node    -> P(k)
///   edge_end        -> q(k) = k P(k) / k-bar
///   random_neighbor -> sum_{k'} P(k') P(k|k')
inline std::vector<double> degree_law(const JointDegreeStats& stats, SamplingScheme scheme)
{
    const int dim = stats.max_degree() + 1;
    std::vector<double> law(dim, 0.0);
    switch (scheme) {
    case SamplingScheme::uniform_node:
        for (int k = 1; k < dim; ++k) {
            law[k] = stats.degree_dist().pmf[k];
        }
        break;
    case SamplingScheme::edge_end:
        for (int k = 1; k < dim; ++k) {
            law[k] = stats.q(k);
        }
        break;
    case SamplingScheme::random_neighbor:
        for (int k = 1; k < dim; ++k) {
            double mass = 0.0;
            for (int given : stats.degree_dist().support) {
                mass += stats.degree_dist().pmf[given] * stats.conditional(k, given);
            }
            law[k] = mass;
        }
        break;
    }
    return law;
}

inline double expected_degree(std::span<const double> law)
{
    double mean = 0.0;
    for (std::size_t k = 1; k < law.size(); ++k) {
        mean += static_cast<double>(k) * law[k];
    }
    return mean;
}

/// True iff law_a first-order stochastically dominates law_b: the CDF of a
/// is pointwise <= the CDF of b (within 1e-12). Shorter vectors are padded
/// with zeros.
inline bool fosd_check(std::span<const double> law_a, std::span<const double> law_b)
{
    const std::size_t dim = std::max(law_a.size(), law_b.size());
    double cum_a = 0.0, cum_b = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        cum_a += k < law_a.size() ? law_a[k] : 0.0;
        cum_b += k < law_b.size() ? law_b[k] : 0.0;
        if (cum_a > cum_b + 1e-12) {
            return false;
        }
    }
    return true;
}

} // namespace netsis

#endif // NETSIS_DEGREE_STATS_HPP
