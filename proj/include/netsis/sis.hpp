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
#ifndef NETSIS_SIS_HPP
#define NETSIS_SIS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "netsis/degree_stats.hpp"
#include "netsis/graph.hpp"
#include "netsis/model.hpp"
#include "netsis/parallel.hpp"
#include "netsis/population.hpp"
#include "netsis/rng.hpp"
#include "netsis/sampling.hpp"

namespace netsis {

/// Per-node infection states plus per-degree-class infected counts kept in
/// sync, so the exact population state M1(k)/M(k) is available at any time
/// without a rescan.
class NodeStateVector {
public:
    static NodeStateVector all_susceptible(const Graph& g)
    {
        NodeStateVector s;
        s.state_.assign(g.node_count(), 0);
        s.node_degree_ = g.degree_sequence();
        const auto dist = DegreeDistribution::from_graph(g);
        s.class_degrees_ = dist.support;
        s.slot_of_degree_.assign(g.max_degree() + 1, -1);
        for (std::size_t i = 0; i < s.class_degrees_.size(); ++i) {
            s.slot_of_degree_[s.class_degrees_[i]] = static_cast<int>(i);
        }
        s.class_size_.assign(s.class_degrees_.size(), 0);
        for (int k : s.node_degree_) {
            ++s.class_size_[s.slot_of_degree_[k]];
        }
        s.infected_in_class_.assign(s.class_degrees_.size(), 0);
        return s;
    }

    bool infected(NodeId v) const { return state_[v] != 0; }
    std::size_t node_count() const { return state_.size(); }
    std::size_t infected_count() const { return infected_total_; }

    void set_infected(NodeId v, bool value)
    {
        if (infected(v) == value) {
            return;
        }
        const int slot = slot_of_degree_[node_degree_[v]];
        if (value) {
            state_[v] = 1;
            ++infected_in_class_[slot];
            ++infected_total_;
        } else {
            state_[v] = 0;
            --infected_in_class_[slot];
            --infected_total_;
        }
    }

    /// Exact infected fraction per degree class.
    PopulationState population_state() const
    {
        PopulationState p;
        p.degrees = class_degrees_;
        p.x.resize(class_degrees_.size());
        for (std::size_t i = 0; i < class_degrees_.size(); ++i) {
            p.x[i] = static_cast<double>(infected_in_class_[i])
                     / static_cast<double>(class_size_[i]);
        }
        return p;
    }

    double infected_fraction() const
    {
        return static_cast<double>(infected_total_) / static_cast<double>(state_.size());
    }

    std::size_t infected_in_class(std::size_t slot) const { return infected_in_class_[slot]; }
    std::size_t class_size(std::size_t slot) const { return class_size_[slot]; }
    const std::vector<int>& class_degrees() const { return class_degrees_; }

private:
    std::vector<std::uint8_t> state_;
    std::vector<int> node_degree_;
    std::vector<int> slot_of_degree_;
    std::vector<int> class_degrees_;
    std::vector<std::size_t> class_size_;
    std::vector<std::size_t> infected_in_class_;
    std::size_t infected_total_ = 0;
};

/// Exactly round(fraction * M) nodes infected, chosen uniformly without
/// replacement. Deterministic given the generator.
inline NodeStateVector init_population(const Graph& g, double initial_infected_fraction, Rng& rng)
{
    if (initial_infected_fraction < 0.0 || initial_infected_fraction > 1.0) {
        throw std::invalid_argument("init_population: fraction outside [0, 1]");
    }
    auto states = NodeStateVector::all_susceptible(g);
    const auto count = static_cast<std::size_t>(
        std::llround(initial_infected_fraction * static_cast<double>(g.node_count())));
    for (std::size_t idx : rng.sample_without_replacement(g.node_count(), count)) {
        states.set_infected(static_cast<NodeId>(idx), true);
    }
    return states;
}

/// The state transition of one selected node m (Step 2).
///
/// Infected m recovers with probability delta. Susceptible m draws d(m)
/// agents uniformly with replacement from the whole population (the graph's
/// adjacency only fixes degrees); under the non-monophilic rule it counts
/// the infected among the drawn agents, under the monophilic rule it counts
/// the infected among one uniform neighbor of each drawn agent. With a
/// infected observations it adopts with probability nu * a / D. Drawing m
/// itself is allowed (probability O(1/M)).
inline void apply_state_update(NodeStateVector& states, NodeId m, const Graph& g,
                               const SisParams& params, AdoptionRule rule, Rng& rng)
{
    if (states.infected(m)) {
        if (rng.bernoulli(params.delta)) {
            states.set_infected(m, false);
        }
        return;
    }
    const int k = g.degree(m);
    int observed_infected = 0;
    for (int i = 0; i < k; ++i) {
        const NodeId agent = static_cast<NodeId>(rng.below(g.node_count()));
        if (rule == AdoptionRule::non_monophilic) {
            observed_infected += states.infected(agent) ? 1 : 0;
        } else {
            const auto nbrs = g.neighbors(agent);
            const NodeId friend_of_agent = nbrs[static_cast<std::size_t>(rng.below(nbrs.size()))];
            observed_infected += states.infected(friend_of_agent) ? 1 : 0;
        }
    }
    const double p_adopt =
        params.nu * static_cast<double>(observed_infected) / static_cast<double>(params.max_degree);
    if (rng.bernoulli(p_adopt)) {
        states.set_infected(m, true);
    }
}

/// One step of the chain: draw the updating node per the sampling scheme,
/// then apply its transition. At most one node changes state.
inline void sis_step(NodeStateVector& states, const Graph& g, const SisParams& params,
                     AdoptionRule rule, SamplingScheme scheme, Rng& rng)
{
    apply_state_update(states, sample_node(g, scheme, rng), g, params, rule, rng);
}

struct TrajectoryRecord {
    std::size_t step;
    PopulationState state;
    double rho; // infected fraction, = sum_k P(k) x(k)
};

/// Runs T steps recording every record_every steps (plus the initial state
/// and a final record at T). Reproducible given the seed behind rng.
inline std::vector<TrajectoryRecord> run_trajectory(const Graph& g, const SisParams& params,
                                                    AdoptionRule rule, SamplingScheme scheme,
                                                    double init_fraction, std::size_t T,
                                                    std::size_t record_every, Rng& rng)
{
    if (T < 1) {
        throw std::invalid_argument("run_trajectory: T must be >= 1");
    }
    if (record_every < 1) {
        throw std::invalid_argument("run_trajectory: record_every must be >= 1");
    }
    auto states = init_population(g, init_fraction, rng);
    std::vector<TrajectoryRecord> records;
    records.reserve(T / record_every + 2);
    records.push_back({0, states.population_state(), states.infected_fraction()});
    for (std::size_t n = 1; n <= T; ++n) {
        sis_step(states, g, params, rule, scheme, rng);
        if (n % record_every == 0 || n == T) {
            records.push_back({n, states.population_state(), states.infected_fraction()});
        }
    }
    return records;
}

// ---------------------------------------------------------------------------
// Threshold sweep
// ---------------------------------------------------------------------------

struct ThresholdSweepConfig {
    std::vector<double> lambda_grid;  // strictly increasing
    std::vector<std::uint64_t> seeds; // nonempty
    double delta_hint = 0.5;
    double init_fraction = 0.1;
    std::size_t sweeps = 200;             // T = sweeps * M
    std::size_t record_every_sweeps = 1;  // record every record_every_sweeps * M steps
    double terminal_window = 0.1;         // average rho over this final fraction of records
    double rho_cut = 0.01;                // survival cutoff for the threshold estimate
    std::size_t workers = 1;
};

struct ThresholdPoint {
    double lambda;
    std::uint64_t seed;
    double rho_terminal;
};

struct ThresholdSummary {
    double lambda;
    double mean_rho;
    double std_rho;
};

struct ThresholdSweepResult {
    std::vector<ThresholdPoint> points;    // one row per (lambda, seed)
    std::vector<ThresholdSummary> summary; // one row per lambda
    std::optional<double> lambda_star;     // smallest lambda with mean rho > rho_cut
};

/// Terminal infected fraction over a lambda grid. Cells (lambda, seed) are
/// independent and may run on several workers; rows are merged by index so
/// the result never depends on scheduling.
inline ThresholdSweepResult estimate_threshold(const Graph& g, AdoptionRule rule,
                                               SamplingScheme scheme,
                                               const ThresholdSweepConfig& config)
{
    if (config.lambda_grid.empty() || config.seeds.empty()) {
        throw std::invalid_argument("estimate_threshold: empty lambda grid or seed list");
    }
    for (std::size_t i = 1; i < config.lambda_grid.size(); ++i) {
        if (config.lambda_grid[i] <= config.lambda_grid[i - 1]) {
            throw std::invalid_argument("estimate_threshold: lambda grid must be increasing");
        }
    }

    const std::size_t n_lambda = config.lambda_grid.size();
    const std::size_t n_seeds = config.seeds.size();
    const std::size_t T = config.sweeps * g.node_count();
    const std::size_t record_every = config.record_every_sweeps * g.node_count();

    std::vector<ThresholdPoint> points(n_lambda * n_seeds);
    parallel_for_indexed(n_lambda * n_seeds, config.workers, [&](std::size_t cell) {
        const std::size_t li = cell / n_seeds;
        const std::size_t si = cell % n_seeds;
        const double lambda = config.lambda_grid[li];
        const auto params = SisParams::from_lambda(lambda, g.max_degree(), config.delta_hint);
        Rng rng(Rng::derive_seed(config.seeds[si], li));
        const auto records = run_trajectory(g, params, rule, scheme, config.init_fraction, T,
                                            record_every, rng);
        const std::size_t window =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                         config.terminal_window * static_cast<double>(records.size()))));
        double acc = 0.0;
        for (std::size_t i = records.size() - window; i < records.size(); ++i) {
            acc += records[i].rho;
        }
        points[cell] = {lambda, config.seeds[si], acc / static_cast<double>(window)};
    });

    ThresholdSweepResult result;
    result.points = std::move(points);
    result.summary.reserve(n_lambda);
    for (std::size_t li = 0; li < n_lambda; ++li) {
        double mean = 0.0;
        for (std::size_t si = 0; si < n_seeds; ++si) {
            mean += result.points[li * n_seeds + si].rho_terminal;
        }
        mean /= static_cast<double>(n_seeds);
        double var = 0.0;
        for (std::size_t si = 0; si < n_seeds; ++si) {
            const double d = result.points[li * n_seeds + si].rho_terminal - mean;
            var += d * d;
        }
        var = n_seeds > 1 ? var / static_cast<double>(n_seeds - 1) : 0.0;
        result.summary.push_back({config.lambda_grid[li], mean, std::sqrt(var)});
        if (!result.lambda_star && mean > config.rho_cut) {
            result.lambda_star = config.lambda_grid[li];
        }
    }
    return result;
}

} // namespace netsis

#endif // NETSIS_SIS_HPP
