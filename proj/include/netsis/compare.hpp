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
#ifndef NETSIS_COMPARE_HPP
#define NETSIS_COMPARE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "netsis/meanfield.hpp"
#include "netsis/sis.hpp"

namespace netsis {

struct DeviationTrace {
    double max_gap = 0.0;                               // max_n ||x_bar_n - x_n||_inf
    std::vector<std::pair<std::size_t, double>> gaps;   // per recorded step
};

/// Runs the chain and the deterministic recursion in lockstep from the same
/// realized initial population state (the recursion's x_0 is the chain's
/// exact x_bar_0) and tracks the sup-norm gap at every step. The recursion
/// uses the weights matching the chain's sampling scheme and the graph's
/// node count as the 1/M scale.
inline DeviationTrace mc_vs_meanfield_deviation(const Graph& g, const SisParams& params,
                                                AdoptionRule rule, SamplingScheme scheme,
                                                double init_fraction, std::size_t T,
                                                std::size_t record_every, Rng& rng)
{
    const auto stats = joint_degree_stats(g);
    const MeanFieldModel model(stats);
    const auto weights = Step1Weights::make(stats, scheme);
    auto states = init_population(g, init_fraction, rng);
    PopulationState mf = states.population_state();
    const double scale_m = static_cast<double>(g.node_count());

    // allocation-free per-step gap against the class counters
    auto current_gap = [&] {
        double gap = 0.0;
        for (std::size_t i = 0; i < mf.x.size(); ++i) {
            const double empirical = static_cast<double>(states.infected_in_class(i))
                                     / static_cast<double>(states.class_size(i));
            gap = std::max(gap, std::abs(empirical - mf.x[i]));
        }
        return gap;
    };

    DeviationTrace trace;
    trace.gaps.emplace_back(0, 0.0);
    for (std::size_t n = 1; n <= T; ++n) {
        sis_step(states, g, params, rule, scheme, rng);
        mean_field_step(mf, weights, model, params, rule, scale_m);
        const double gap = current_gap();
        trace.max_gap = std::max(trace.max_gap, gap);
        if (n % record_every == 0 || n == T) {
            trace.gaps.emplace_back(n, gap);
        }
    }
    return trace;
}

} // namespace netsis

#endif // NETSIS_COMPARE_HPP
