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
#ifndef NETSIS_POPULATION_HPP
#define NETSIS_POPULATION_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "netsis/degree_stats.hpp"

namespace netsis {

/// Infected fraction per degree class, compact over the degrees that carry
/// probability mass (classes with P(k) = 0 are excluded). Used both for the
/// empirical population state of a simulation and for the deterministic
/// recursions that approximate it.
struct PopulationState {
    std::vector<int> degrees; // ascending support
    std::vector<double> x;    // x(k) in [0, 1], aligned with degrees

    static PopulationState constant(const DegreeDistribution& dist, double value)
    {
        if (value < 0.0 || value > 1.0) {
            throw std::invalid_argument("PopulationState: value outside [0, 1]");
        }
        PopulationState s;
        s.degrees = dist.support;
        s.x.assign(s.degrees.size(), value);
        return s;
    }

    static PopulationState zero(const DegreeDistribution& dist)
    {
        return constant(dist, 0.0);
    }

    std::size_t class_count() const { return degrees.size(); }

    bool same_support(const PopulationState& other) const
    {
        return degrees == other.degrees;
    }
};

/// Probability that a uniformly drawn node is infected: sum_k P(k) x(k).
/// Coincides with the infected fraction rho.
inline double node_prevalence(const PopulationState& state, const DegreeDistribution& dist)
{
    double total = 0.0;
    for (std::size_t i = 0; i < state.degrees.size(); ++i) {
        total += dist.pmf[state.degrees[i]] * state.x[i];
    }
    return total;
}

/// Probability that a random neighbor of a uniformly drawn node is infected:
/// sum_k Pr[neighbor degree = k] x(k). The law argument is the dense
/// random_neighbor degree law of the graph supplying the two-hop draws.
inline double neighbor_prevalence(const PopulationState& state,
                                  std::span<const double> neighbor_law)
{
    double total = 0.0;
    for (std::size_t i = 0; i < state.degrees.size(); ++i) {
        total += neighbor_law[state.degrees[i]] * state.x[i];
    }
    return total;
}

/// Max over classes of |a.x - b.x|; requires identical support.
inline double sup_norm_gap(const PopulationState& a, const PopulationState& b)
{
    if (!a.same_support(b)) {
        throw std::invalid_argument("sup_norm_gap: mismatched degree supports");
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        gap = std::max(gap, std::abs(a.x[i] - b.x[i]));
    }
    return gap;
}

} // namespace netsis

#endif // NETSIS_POPULATION_HPP
