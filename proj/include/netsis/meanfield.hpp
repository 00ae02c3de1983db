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
#ifndef NETSIS_MEANFIELD_HPP
#define NETSIS_MEANFIELD_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "netsis/degree_stats.hpp"
#include "netsis/errors.hpp"
#include "netsis/model.hpp"
#include "netsis/population.hpp"

namespace netsis {

/// Which correction converts the random-neighbor selection rate into a
/// per-class drift multiplier:
///   law_ratio      - Pr[neighbor degree = k] / P(k), the rate at which a
///                    degree-k node is selected relative to uniform; reduces
///                    to the edge-end weights k / k-bar on degree-uncorrelated
///                    graphs.
///   inverted_ratio - sum_{k'} (P(k)/P(k')) P(k|k'), a variant with the
///                    distribution ratio inverted inside the sum. Does NOT
///                    reduce to the edge-end weights on degree-uncorrelated
///                    graphs; retained only for side-by-side comparison.
enum class ZWeightForm { law_ratio, inverted_ratio };

/// Per-class multiplier on the drift: the rate at which the sampling scheme
/// selects a node of that class, relative to uniform selection.
struct Step1Weights {
    std::vector<double> w; // aligned with the degree support

    static Step1Weights make(const JointDegreeStats& stats, SamplingScheme scheme,
                             ZWeightForm z_form = ZWeightForm::law_ratio)
    {
        const auto& dist = stats.degree_dist();
        Step1Weights weights;
        weights.w.reserve(dist.support.size());
        switch (scheme) {
        case SamplingScheme::uniform_node:
            weights.w.assign(dist.support.size(), 1.0);
            break;
        case SamplingScheme::edge_end: {
            const double mean = dist.mean();
            for (int k : dist.support) {
                weights.w.push_back(static_cast<double>(k) / mean);
            }
            break;
        }
        case SamplingScheme::random_neighbor: {
            if (z_form == ZWeightForm::law_ratio) {
                const auto law = degree_law(stats, SamplingScheme::random_neighbor);
                for (int k : dist.support) {
                    weights.w.push_back(law[k] / dist.pmf[k]);
                }
            } else {
                for (int k : dist.support) {
                    double sum = 0.0;
                    for (int given : dist.support) {
                        sum += (dist.pmf[k] / dist.pmf[given]) * stats.conditional(k, given);
                    }
                    weights.w.push_back(sum);
                }
            }
            break;
        }
        }
        return weights;
    }
};

/// Precomputed context for drift evaluations: the degree support, its pmf,
/// and the random-neighbor degree law of the graph supplying two-hop draws.
class MeanFieldModel {
public:
    explicit MeanFieldModel(const JointDegreeStats& stats)
        : dist_(stats.degree_dist())
        , neighbor_law_(degree_law(stats, SamplingScheme::random_neighbor))
        , max_degree_(stats.max_degree())
    {
    }

    const DegreeDistribution& dist() const { return dist_; }
    const std::vector<double>& neighbor_law() const { return neighbor_law_; }
    int max_degree() const { return max_degree_; }

    double prevalence_for(const PopulationState& x, AdoptionRule rule) const
    {
        return rule == AdoptionRule::non_monophilic ? node_prevalence(x, dist_)
                                                    : neighbor_prevalence(x, neighbor_law_);
    }

    /// Component k of the drift:
    ///   (1 - x(k)) * nu * k * theta / D  -  x(k) * delta
    /// with theta the prevalence seen by the adoption rule. Every component
    /// lies in [-1, 1].
    std::vector<double> drift(const PopulationState& x, const SisParams& params,
                              AdoptionRule rule) const
    {
        const double theta = prevalence_for(x, rule);
        std::vector<double> out(x.degrees.size());
        for (std::size_t i = 0; i < x.degrees.size(); ++i) {
            const double k = static_cast<double>(x.degrees[i]);
            out[i] = (1.0 - x.x[i]) * params.nu * k * theta / params.max_degree
                     - x.x[i] * params.delta;
        }
        return out;
    }

private:
    DegreeDistribution dist_;
    std::vector<double> neighbor_law_;
    int max_degree_;
};

inline std::vector<double> drift(const PopulationState& x, const JointDegreeStats& stats,
                                 const SisParams& params, AdoptionRule rule)
{
    return MeanFieldModel(stats).drift(x, params, rule);
}

/// One step of the recursion: x += (1/M) * w * drift, with the documented
/// floating-error clamp: leaving [0,1] by less than 1e-12 is rounded back,
/// anything larger is a bug. Public so callers can advance in lockstep with
/// a Monte Carlo chain.
inline void mean_field_step(PopulationState& x, const Step1Weights& weights,
                            const MeanFieldModel& model, const SisParams& params,
                            AdoptionRule rule, double scale_m)
{
    const auto d = model.drift(x, params, rule);
    for (std::size_t i = 0; i < x.x.size(); ++i) {
        double next = x.x[i] + (1.0 / scale_m) * weights.w[i] * d[i];
        if (next < 0.0) {
            if (next < -1e-12) {
                throw std::logic_error("mean-field iterate left [0,1]");
            }
            next = 0.0;
        } else if (next > 1.0) {
            if (next > 1.0 + 1e-12) {
                throw std::logic_error("mean-field iterate left [0,1]");
            }
            next = 1.0;
        }
        x.x[i] = next;
    }
}

struct MeanFieldRecord {
    std::size_t step;
    PopulationState state;
    double rho;
};

/// Runs the recursion for T steps from x0 and returns the final state.
/// The step size is 1/M; pass the generating graph's node count, or the
/// configured scale when starting from a pure distribution.
inline PopulationState iterate(PopulationState x0, const Step1Weights& weights,
                               const JointDegreeStats& stats, const SisParams& params,
                               AdoptionRule rule, double scale_m, std::size_t T)
{
    if (weights.w.size() != x0.degrees.size()) {
        throw std::invalid_argument("iterate: weights do not match the state support");
    }
    const MeanFieldModel model(stats);
    for (std::size_t n = 0; n < T; ++n) {
        mean_field_step(x0, weights, model, params, rule, scale_m);
    }
    return x0;
}

/// Same recursion with records every record_every steps (plus initial and
/// final states), mirroring the Monte Carlo trajectory format.
inline std::vector<MeanFieldRecord> iterate_trajectory(PopulationState x0,
                                                       const Step1Weights& weights,
                                                       const JointDegreeStats& stats,
                                                       const SisParams& params, AdoptionRule rule,
                                                       double scale_m, std::size_t T,
                                                       std::size_t record_every)
{
    if (weights.w.size() != x0.degrees.size()) {
        throw std::invalid_argument("iterate_trajectory: weights do not match the state support");
    }
    if (record_every < 1) {
        throw std::invalid_argument("iterate_trajectory: record_every must be >= 1");
    }
    const MeanFieldModel model(stats);
    std::vector<MeanFieldRecord> records;
    records.reserve(T / record_every + 2);
    records.push_back({0, x0, node_prevalence(x0, model.dist())});
    for (std::size_t n = 1; n <= T; ++n) {
        mean_field_step(x0, weights, model, params, rule, scale_m);
        if (n % record_every == 0 || n == T) {
            records.push_back({n, x0, node_prevalence(x0, model.dist())});
        }
    }
    return records;
}

/// Iterates until the drift's sup norm falls below drift_tol (the fixed
/// point is exactly where the drift vanishes, for any weights), so runs with
/// different weights stop at comparable states.
inline PopulationState iterate_to_fixed_point(PopulationState x0, const Step1Weights& weights,
                                              const JointDegreeStats& stats,
                                              const SisParams& params, AdoptionRule rule,
                                              double scale_m, double drift_tol,
                                              std::size_t max_steps)
{
    if (weights.w.size() != x0.degrees.size()) {
        throw std::invalid_argument("iterate_to_fixed_point: weights mismatch");
    }
    const MeanFieldModel model(stats);
    for (std::size_t n = 0; n < max_steps; ++n) {
        const auto d = model.drift(x0, params, rule);
        double sup = 0.0;
        for (double v : d) {
            sup = std::max(sup, std::abs(v));
        }
        if (sup <= drift_tol) {
            return x0;
        }
        mean_field_step(x0, weights, model, params, rule, scale_m);
    }
    throw NonconvergenceError("iterate_to_fixed_point: drift did not settle", 0.0, max_steps);
}

// ---------------------------------------------------------------------------
// Critical thresholds and the stationary self-consistency equation
// ---------------------------------------------------------------------------

/// D / E[d(X)] under the non-monophilic rule, D / E[d(Z)] under the
/// monophilic rule.
inline double critical_threshold(const JointDegreeStats& stats, AdoptionRule rule)
{
    const auto law = degree_law(stats, rule == AdoptionRule::non_monophilic
                                           ? SamplingScheme::uniform_node
                                           : SamplingScheme::random_neighbor);
    const double mean = expected_degree(law);
    if (mean <= 0.0) {
        throw std::invalid_argument("critical_threshold: expected degree must be positive");
    }
    return static_cast<double>(stats.max_degree()) / mean;
}

/// H(theta) = sum_k law(k) * lambda k theta / (lambda k theta + D), the
/// stationary self-consistency map. Increasing and concave on [0, 1].
inline double self_consistency_map(double theta, double lambda, std::span<const double> law,
                                   int max_degree)
{
    double acc = 0.0;
    for (std::size_t k = 1; k < law.size(); ++k) {
        if (law[k] > 0.0) {
            const double lk = lambda * static_cast<double>(k) * theta;
            acc += law[k] * lk / (lk + static_cast<double>(max_degree));
        }
    }
    return acc;
}

struct StationaryResult {
    double theta;       // fixed point of the self-consistency map
    PopulationState x;  // stationary per-class infected fractions
    double rho;         // sum_k P(k) x(k)
    std::size_t iterations;
};

/// Solves theta = H(theta) by fixed-point iteration from 0.5. H is concave
/// with H(0) = 0, so a positive fixed point exists iff H'(0) > 1; when
/// H'(0) = lambda E[d]/D <= 1 (+1e-9 slack) the solver reports the zero
/// solution directly instead of tracking the slow decay toward it.
inline StationaryResult stationary_solve(double lambda, const JointDegreeStats& stats,
                                         AdoptionRule rule, double tol = 1e-10,
                                         std::size_t max_iters = 1000000)
{
    if (lambda <= 0.0 || tol <= 0.0) {
        throw std::invalid_argument("stationary_solve: lambda and tol must be positive");
    }
    const auto law = degree_law(stats, rule == AdoptionRule::non_monophilic
                                           ? SamplingScheme::uniform_node
                                           : SamplingScheme::random_neighbor);
    const int max_deg = stats.max_degree();
    const auto& dist = stats.degree_dist();

    auto stationary_state = [&](double theta) {
        PopulationState x;
        x.degrees = dist.support;
        x.x.resize(dist.support.size());
        for (std::size_t i = 0; i < dist.support.size(); ++i) {
            const double lk = lambda * static_cast<double>(dist.support[i]) * theta;
            x.x[i] = lk / (lk + static_cast<double>(max_deg));
        }
        return x;
    };

    const double slope0 = lambda * expected_degree(law) / static_cast<double>(max_deg);
    if (slope0 <= 1.0 + 1e-9) {
        auto x = stationary_state(0.0);
        return {0.0, std::move(x), 0.0, 0};
    }

    double theta = 0.5;
    for (std::size_t it = 1; it <= max_iters; ++it) {
        const double next = self_consistency_map(theta, lambda, law, max_deg);
        if (std::abs(next - theta) <= tol) {
            auto x = stationary_state(next);
            const double rho = node_prevalence(x, dist);
            return {next, std::move(x), rho, it};
        }
        theta = next;
    }
    throw NonconvergenceError("stationary_solve: tolerance not reached", theta, max_iters);
}

/// Stationary infected fraction over a lambda grid. Zero up to the critical
/// threshold, positive and nondecreasing above it.
inline std::vector<std::pair<double, double>> rho_lambda_curve(const JointDegreeStats& stats,
                                                               AdoptionRule rule,
                                                               std::span<const double> lambda_grid)
{
    for (std::size_t i = 1; i < lambda_grid.size(); ++i) {
        if (lambda_grid[i] <= lambda_grid[i - 1]) {
            throw std::invalid_argument("rho_lambda_curve: grid must be increasing");
        }
    }
    std::vector<std::pair<double, double>> curve;
    curve.reserve(lambda_grid.size());
    for (double lambda : lambda_grid) {
        curve.emplace_back(lambda, stationary_solve(lambda, stats, rule).rho);
    }
    return curve;
}

} // namespace netsis

#endif // NETSIS_MEANFIELD_HPP
