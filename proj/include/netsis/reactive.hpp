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
#ifndef NETSIS_REACTIVE_HPP
#define NETSIS_REACTIVE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "netsis/degree_stats.hpp"
#include "netsis/errors.hpp"
#include "netsis/graph.hpp"
#include "netsis/meanfield.hpp"
#include "netsis/model.hpp"
#include "netsis/population.hpp"
#include "netsis/rng.hpp"
#include "netsis/sis.hpp"

namespace netsis {

/// Finite set of graphs with identical degree distribution but different
/// conditional degree structure. Construction rejects members whose P(k)
/// disagree beyond 1e-12. When built from concrete graphs the members must
/// additionally share the per-node degree sequence (rewirings of one base
/// graph), which keeps the coupled simulation's state vector valid across
/// member switches.
class GraphFamily {
public:
    static constexpr std::size_t default_max_members = 16;

    static GraphFamily from_stats(std::vector<JointDegreeStats> stats,
                                  std::size_t max_members = default_max_members)
    {
        GraphFamily family;
        family.init_stats(std::move(stats), max_members);
        return family;
    }

    static GraphFamily from_graphs(std::vector<Graph> graphs,
                                   std::size_t max_members = default_max_members)
    {
        if (graphs.empty()) {
            throw std::invalid_argument("GraphFamily: no members");
        }
        const auto base_degrees = graphs.front().degree_sequence();
        for (std::size_t i = 1; i < graphs.size(); ++i) {
            if (graphs[i].node_count() != graphs.front().node_count()
                || graphs[i].degree_sequence() != base_degrees) {
                throw std::invalid_argument(
                    "GraphFamily: members must share node count and per-node degrees");
            }
        }
        std::vector<JointDegreeStats> stats;
        stats.reserve(graphs.size());
        for (const auto& g : graphs) {
            stats.push_back(joint_degree_stats(g));
        }
        GraphFamily family;
        family.init_stats(std::move(stats), default_max_members);
        family.graphs_ = std::move(graphs);
        return family;
    }

    std::size_t size() const { return stats_.size(); }
    const JointDegreeStats& member_stats(std::size_t i) const { return stats_[i]; }
    const MeanFieldModel& member_model(std::size_t i) const { return models_[i]; }
    const DegreeDistribution& degree_dist() const { return stats_.front().degree_dist(); }

    bool has_graphs() const { return !graphs_.empty(); }
    const Graph& graph(std::size_t i) const
    {
        if (graphs_.empty()) {
            throw std::logic_error("GraphFamily: no concrete graphs attached");
        }
        return graphs_[i];
    }

private:
    void init_stats(std::vector<JointDegreeStats> stats, std::size_t max_members)
    {
        if (stats.empty()) {
            throw std::invalid_argument("GraphFamily: no members");
        }
        if (stats.size() > max_members) {
            throw std::invalid_argument("GraphFamily: too many members (limit "
                                        + std::to_string(max_members) + ")");
        }
        const auto& base = stats.front().degree_dist().pmf;
        for (std::size_t i = 1; i < stats.size(); ++i) {
            const auto& pmf = stats[i].degree_dist().pmf;
            if (pmf.size() != base.size()) {
                throw std::invalid_argument("GraphFamily: member degree distributions differ");
            }
            for (std::size_t k = 0; k < base.size(); ++k) {
                if (std::abs(pmf[k] - base[k]) > 1e-12) {
                    throw std::invalid_argument("GraphFamily: member degree distributions differ");
                }
            }
        }
        models_.reserve(stats.size());
        for (const auto& s : stats) {
            models_.emplace_back(s);
        }
        stats_ = std::move(stats);
    }

    std::vector<JointDegreeStats> stats_;
    std::vector<MeanFieldModel> models_;
    std::vector<Graph> graphs_;
};

/// Population-state-parameterized Markov kernel over family members.
/// Plugin rows must be smooth in x (so the averaged drift stays Lipschitz);
/// construction validates row stochasticity and irreducibility numerically
/// on a sample of population states.
class TransitionKernel {
public:
    using RowFn = std::function<std::vector<double>(const PopulationState&, std::size_t)>;

    TransitionKernel(std::size_t member_count, RowFn row_fn,
                     const std::vector<PopulationState>& check_states)
        : member_count_(member_count)
        , row_fn_(std::move(row_fn))
    {
        if (member_count_ == 0) {
            throw std::invalid_argument("TransitionKernel: empty member set");
        }
        for (const auto& x : check_states) {
            validate_at(x);
        }
    }

    std::size_t size() const { return member_count_; }

    std::vector<double> row(const PopulationState& x, std::size_t current) const
    {
        return row_fn_(x, current);
    }

    /// Row-major transition matrix at state x.
    std::vector<double> matrix(const PopulationState& x) const
    {
        std::vector<double> p(member_count_ * member_count_);
        for (std::size_t i = 0; i < member_count_; ++i) {
            const auto r = row_fn_(x, i);
            if (r.size() != member_count_) {
                throw std::invalid_argument("TransitionKernel: row has wrong length");
            }
            for (std::size_t j = 0; j < member_count_; ++j) {
                p[i * member_count_ + j] = r[j];
            }
        }
        return p;
    }

private:
    void validate_at(const PopulationState& x) const
    {
        const auto p = matrix(x);
        const std::size_t n = member_count_;
        for (std::size_t i = 0; i < n; ++i) {
            double row_sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double v = p[i * n + j];
                if (v < 0.0) {
                    throw std::invalid_argument("TransitionKernel: negative transition entry");
                }
                row_sum += v;
            }
            if (std::abs(row_sum - 1.0) > 1e-12) {
                throw std::invalid_argument("TransitionKernel: row does not sum to 1");
            }
        }
        // Primitivity spot check: some boolean power of the support pattern
        // must be all positive (Wielandt bound on the exponent).
        std::vector<char> b(n * n), c(n * n);
        for (std::size_t i = 0; i < n * n; ++i) {
            b[i] = p[i] > 0.0 ? 1 : 0;
            c[i] = b[i];
        }
        const std::size_t wielandt = n * n - 2 * n + 2;
        for (std::size_t power = 1; power <= std::max<std::size_t>(wielandt, 1); ++power) {
            bool all_positive = true;
            for (char v : c) {
                if (!v) {
                    all_positive = false;
                    break;
                }
            }
            if (all_positive) {
                return;
            }
            std::vector<char> next(n * n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (c[i * n + k]) {
                        for (std::size_t j = 0; j < n; ++j) {
                            next[i * n + j] |= b[k * n + j];
                        }
                    }
                }
            }
            c = std::move(next);
        }
        throw std::invalid_argument("TransitionKernel: chain not irreducible at a sampled state");
    }

    std::size_t member_count_;
    RowFn row_fn_;
};

/// Reference kernel: a two-member family (member 0 assortative, member 1
/// disassortative) where the chance of moving to the disassortative member
/// grows logistically with the infected fraction:
///   Pr[move to member 1 | x] = 1 / (1 + exp(-beta (rho(x) - rho0))),
/// independent of the current member. Illustrative and pluggable.
inline TransitionKernel::RowFn logistic_prevalence_rows(const DegreeDistribution& dist,
                                                        double beta = 10.0, double rho0 = 0.2)
{
    return [dist, beta, rho0](const PopulationState& x, std::size_t) {
        const double rho = node_prevalence(x, dist);
        const double p = 1.0 / (1.0 + std::exp(-beta * (rho - rho0)));
        return std::vector<double>{1.0 - p, p};
    };
}

/// Default sample of population states used to validate kernels at
/// construction: constant states across the support.
inline std::vector<PopulationState> kernel_check_states(const DegreeDistribution& dist)
{
    std::vector<PopulationState> states;
    for (double level : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        states.push_back(PopulationState::constant(dist, level));
    }
    return states;
}

// ---------------------------------------------------------------------------
// Stationary distribution of the member chain
// ---------------------------------------------------------------------------

namespace detail {

/// Solves (P' - I) pi = 0 with the normalization row via Gaussian
/// elimination; nullopt when the system is too ill-conditioned to trust.
inline std::optional<std::vector<double>> solve_stationary_linear(const std::vector<double>& p,
                                                                  std::size_t n)
{
    // A = P' - I with the last row replaced by ones; b = unit at that row.
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = p[j * n + i] - (i == j ? 1.0 : 0.0);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        a[(n - 1) * n + j] = 1.0;
    }
    std::vector<double> b(n, 0.0);
    b[n - 1] = 1.0;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) {
                pivot = row;
            }
        }
        if (std::abs(a[pivot * n + col]) < 1e-13) {
            return std::nullopt;
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[pivot * n + j], a[col * n + j]);
            }
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] / a[col * n + col];
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = col; j < n; ++j) {
                a[row * n + j] -= f * a[col * n + j];
            }
            b[row] -= f * b[col];
        }
    }
    std::vector<double> pi(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            acc -= a[i * n + j] * pi[j];
        }
        pi[i] = acc / a[i * n + i];
    }
    return pi;
}

/// Rank deficiency of (P' - I) beyond the expected one-dimensional null
/// space signals a reducible chain.
inline std::size_t null_space_dimension(const std::vector<double>& p, std::size_t n, double tol)
{
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = p[j * n + i] - (i == j ? 1.0 : 0.0);
        }
    }
    std::size_t rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t pivot = row;
        for (std::size_t r = row + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) {
                pivot = r;
            }
        }
        if (std::abs(a[pivot * n + col]) <= tol) {
            continue;
        }
        if (pivot != row) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[pivot * n + j], a[row * n + j]);
            }
        }
        for (std::size_t r = row + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[row * n + col];
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = col; j < n; ++j) {
                a[r * n + j] -= f * a[row * n + j];
            }
        }
        ++rank;
        ++row;
    }
    return n - rank;
}

inline double stationary_residual(const std::vector<double>& p, const std::vector<double>& pi,
                                  std::size_t n)
{
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += p[j * n + i] * pi[j];
        }
        residual = std::max(residual, std::abs(acc - pi[i]));
    }
    return residual;
}

} // namespace detail

/// Stationary distribution pi_x of the kernel at population state x:
/// P'_x pi = pi, pi >= 0, sum pi = 1, residual <= 1e-12. Falls back to power
/// iteration when the linear solve is numerically singular beyond the null
/// space; a null space of dimension > 1 (tolerance 1e-8) raises
/// ReducibilityError.
inline std::vector<double> stationary_distribution(const TransitionKernel& kernel,
                                                   const PopulationState& x)
{
    const std::size_t n = kernel.size();
    const auto p = kernel.matrix(x);
    if (n == 1) {
        return {1.0};
    }
    if (detail::null_space_dimension(p, n, 1e-8) > 1) {
        throw ReducibilityError("stationary_distribution: stationary distribution not unique");
    }

    auto cleanup = [&](std::vector<double> pi) -> std::optional<std::vector<double>> {
        double total = 0.0;
        for (double& v : pi) {
            if (v < 0.0) {
                if (v < -1e-12) {
                    return std::nullopt;
                }
                v = 0.0;
            }
            total += v;
        }
        if (total <= 0.0) {
            return std::nullopt;
        }
        for (double& v : pi) {
            v /= total;
        }
        if (detail::stationary_residual(p, pi, n) > 1e-12) {
            return std::nullopt;
        }
        return pi;
    };

    if (auto direct = detail::solve_stationary_linear(p, n)) {
        if (auto pi = cleanup(std::move(*direct))) {
            return *pi;
        }
    }

    // Power iteration fallback.
    std::vector<double> pi(n, 1.0 / static_cast<double>(n)), next(n);
    for (std::size_t it = 0; it < 200000; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += p[j * n + i] * pi[j];
            }
            next[i] = acc;
        }
        double gap = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            gap = std::max(gap, std::abs(next[i] - pi[i]));
            total += next[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            pi[i] = next[i] / total;
        }
        if (gap <= 1e-15) {
            break;
        }
    }
    if (auto cleaned = cleanup(pi)) {
        return *cleaned;
    }
    throw ReducibilityError("stationary_distribution: no reliable stationary distribution");
}

// ---------------------------------------------------------------------------
// Drift, averaged ODE, coupled simulation
// ---------------------------------------------------------------------------

/// Drift of the monophilic mean-field dynamics evaluated with the given
/// member's conditional degree structure.
inline std::vector<double> drift_for_member(const PopulationState& x, const GraphFamily& family,
                                            std::size_t member, const SisParams& params)
{
    return family.member_model(member).drift(x, params, AdoptionRule::monophilic);
}

/// Expectation of the member drifts under the stationary distribution of
/// the kernel at x.
inline std::vector<double> averaged_drift(const PopulationState& x, const GraphFamily& family,
                                          const TransitionKernel& kernel, const SisParams& params)
{
    const auto pi = stationary_distribution(kernel, x);
    std::vector<double> out(x.degrees.size(), 0.0);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto h = drift_for_member(x, family, i, params);
        for (std::size_t c = 0; c < out.size(); ++c) {
            if (h[c] < -1.0 || h[c] > 1.0) {
                throw std::logic_error("averaged_drift: member drift left [-1, 1]");
            }
            out[c] += pi[i] * h[c];
        }
    }
    return out;
}

struct OdePoint {
    double t;
    PopulationState x;
    std::vector<double> pi;
    double constraint_residual; // ||P' pi - pi||_inf at this point
};

/// Explicit Euler on dx/dt = E_{pi_x}[H(x, G)], recording (t, x, pi_x) and
/// the constraint residual at every recorded point. One chain step of the
/// coupled process corresponds to h = 1/M of ODE time.
inline std::vector<OdePoint> integrate_constrained_ode(PopulationState x0,
                                                       const GraphFamily& family,
                                                       const TransitionKernel& kernel,
                                                       const SisParams& params, double step_size,
                                                       std::size_t steps,
                                                       std::size_t record_every = 1)
{
    if (step_size <= 0.0) {
        throw std::invalid_argument("integrate_constrained_ode: step size must be positive");
    }
    if (record_every < 1) {
        throw std::invalid_argument("integrate_constrained_ode: record_every must be >= 1");
    }
    std::vector<OdePoint> points;
    points.reserve(steps / record_every + 2);

    auto record = [&](std::size_t n) {
        const auto p = kernel.matrix(x0);
        auto pi = stationary_distribution(kernel, x0);
        const double residual = detail::stationary_residual(p, pi, kernel.size());
        points.push_back({static_cast<double>(n) * step_size, x0, std::move(pi), residual});
    };

    record(0);
    for (std::size_t n = 1; n <= steps; ++n) {
        const auto pi = stationary_distribution(kernel, x0);
        std::vector<double> dx(x0.degrees.size(), 0.0);
        for (std::size_t i = 0; i < family.size(); ++i) {
            const auto h = drift_for_member(x0, family, i, params);
            for (std::size_t c = 0; c < dx.size(); ++c) {
                dx[c] += pi[i] * h[c];
            }
        }
        for (std::size_t c = 0; c < x0.x.size(); ++c) {
            double next = x0.x[c] + step_size * dx[c];
            if (next < 0.0) {
                if (next < -1e-9) {
                    throw std::logic_error("integrate_constrained_ode: trajectory left [0,1]");
                }
                next = 0.0;
            } else if (next > 1.0) {
                if (next > 1.0 + 1e-9) {
                    throw std::logic_error("integrate_constrained_ode: trajectory left [0,1]");
                }
                next = 1.0;
            }
            x0.x[c] = next;
        }
        if (n % record_every == 0 || n == steps) {
            record(n);
        }
    }
    return points;
}

/// Whether the graph transition happens before or after the node update
/// within one step of the coupled process.
enum class CoupledOrder { transition_then_update, update_then_transition };

struct CoupledRecord {
    std::size_t step;
    std::size_t member;
    PopulationState state;
};

/// The coupled chain: the member process moves per the kernel evaluated at
/// the current population state, and the contagion advances by one step of
/// the uniform-node, monophilic dynamics on the occupied member.
inline std::vector<CoupledRecord> simulate_coupled(const GraphFamily& family,
                                                   const TransitionKernel& kernel,
                                                   const SisParams& params, double init_fraction,
                                                   std::size_t T, std::size_t record_every,
                                                   Rng& rng,
                                                   CoupledOrder order =
                                                       CoupledOrder::transition_then_update,
                                                   std::size_t initial_member = 0)
{
    if (!family.has_graphs()) {
        throw std::invalid_argument("simulate_coupled: family has no concrete graphs");
    }
    if (kernel.size() != family.size()) {
        throw std::invalid_argument("simulate_coupled: kernel size does not match family");
    }
    if (record_every < 1) {
        throw std::invalid_argument("simulate_coupled: record_every must be >= 1");
    }
    if (initial_member >= family.size()) {
        throw std::invalid_argument("simulate_coupled: bad initial member");
    }

    auto states = init_population(family.graph(0), init_fraction, rng);
    std::size_t member = initial_member;

    auto draw_member = [&](const PopulationState& x) -> std::size_t {
        if (family.size() == 1) {
            return 0; // no randomness consumed: exact reduction to the plain chain
        }
        const auto row = kernel.row(x, member);
        const double u = rng.uniform01();
        double acc = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            acc += row[j];
            if (u < acc) {
                return j;
            }
        }
        return row.size() - 1;
    };

    std::vector<CoupledRecord> records;
    records.reserve(T / record_every + 2);
    records.push_back({0, member, states.population_state()});
    for (std::size_t n = 1; n <= T; ++n) {
        if (order == CoupledOrder::transition_then_update) {
            member = draw_member(states.population_state());
            sis_step(states, family.graph(member), params, AdoptionRule::monophilic,
                     SamplingScheme::uniform_node, rng);
        } else {
            sis_step(states, family.graph(member), params, AdoptionRule::monophilic,
                     SamplingScheme::uniform_node, rng);
            member = draw_member(states.population_state());
        }
        if (n % record_every == 0 || n == T) {
            records.push_back({n, member, states.population_state()});
        }
    }
    return records;
}

struct CoupledOdeGap {
    double max_gap = 0.0;      // sup over steps of ||x_bar - x(t)||_inf
    double max_residual = 0.0; // worst ||P' pi - pi||_inf seen along the ODE
};

/// Streaming variant of the coupled-versus-ODE comparison: advances the
/// coupled chain and the averaged ODE (Euler step 1/M) in lockstep and
/// tracks the sup-norm gap without materializing either trajectory. Used
/// for scaling studies where T * M records would not fit in memory.
inline CoupledOdeGap coupled_vs_ode_deviation(const GraphFamily& family,
                                              const TransitionKernel& kernel,
                                              const SisParams& params, double init_fraction,
                                              std::size_t T, Rng& rng,
                                              CoupledOrder order =
                                                  CoupledOrder::transition_then_update)
{
    if (!family.has_graphs()) {
        throw std::invalid_argument("coupled_vs_ode_deviation: family has no concrete graphs");
    }
    const std::size_t m = family.graph(0).node_count();
    const double h = 1.0 / static_cast<double>(m);

    auto states = init_population(family.graph(0), init_fraction, rng);
    PopulationState x = states.population_state();
    std::size_t member = 0;

    auto draw_member = [&](const PopulationState& pop) -> std::size_t {
        if (family.size() == 1) {
            return 0;
        }
        const auto row = kernel.row(pop, member);
        const double u = rng.uniform01();
        double acc = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            acc += row[j];
            if (u < acc) {
                return j;
            }
        }
        return row.size() - 1;
    };

    CoupledOdeGap result;
    std::vector<double> dx(x.degrees.size());
    PopulationState chain_state = x; // reused buffer, support never changes
    auto refresh_chain_state = [&] {
        for (std::size_t c = 0; c < chain_state.x.size(); ++c) {
            chain_state.x[c] = static_cast<double>(states.infected_in_class(c))
                               / static_cast<double>(states.class_size(c));
        }
    };
    const auto n_members = kernel.size();
    for (std::size_t n = 1; n <= T; ++n) {
        // chain side
        refresh_chain_state();
        if (order == CoupledOrder::transition_then_update) {
            member = draw_member(chain_state);
            sis_step(states, family.graph(member), params, AdoptionRule::monophilic,
                     SamplingScheme::uniform_node, rng);
        } else {
            sis_step(states, family.graph(member), params, AdoptionRule::monophilic,
                     SamplingScheme::uniform_node, rng);
            refresh_chain_state();
            member = draw_member(chain_state);
        }
        // ODE side
        const auto p = kernel.matrix(x);
        const auto pi = stationary_distribution(kernel, x);
        result.max_residual =
            std::max(result.max_residual, detail::stationary_residual(p, pi, n_members));
        std::fill(dx.begin(), dx.end(), 0.0);
        for (std::size_t i = 0; i < family.size(); ++i) {
            const auto drift_i = drift_for_member(x, family, i, params);
            for (std::size_t c = 0; c < dx.size(); ++c) {
                dx[c] += pi[i] * drift_i[c];
            }
        }
        for (std::size_t c = 0; c < x.x.size(); ++c) {
            x.x[c] = std::clamp(x.x[c] + h * dx[c], 0.0, 1.0);
        }
        // gap at time n/M
        refresh_chain_state();
        result.max_gap = std::max(result.max_gap, sup_norm_gap(chain_state, x));
    }
    return result;
}

/// Sup-norm gap between the coupled chain (piecewise-constant interpolation
/// at times n/M) and the ODE trajectory, maximized over the ODE's recorded
/// times. The two trajectories must cover the same time window.
inline double deviation_report(std::span<const CoupledRecord> coupled,
                               std::span<const OdePoint> ode, std::size_t chain_scale_m)
{
    if (coupled.empty() || ode.empty()) {
        throw std::invalid_argument("deviation_report: empty trajectory");
    }
    const double m = static_cast<double>(chain_scale_m);
    const double chain_end = static_cast<double>(coupled.back().step) / m;
    const double ode_end = ode.back().t;
    const double step = ode.size() > 1 ? ode[1].t - ode[0].t : ode_end;
    if (std::abs(chain_end - ode_end) > step + 1e-9) {
        throw std::invalid_argument("deviation_report: trajectories cover different windows");
    }

    double worst = 0.0;
    std::size_t idx = 0;
    for (const auto& point : ode) {
        // last chain record with step <= t * M
        const double target = point.t * m;
        while (idx + 1 < coupled.size()
               && static_cast<double>(coupled[idx + 1].step) <= target + 1e-9) {
            ++idx;
        }
        worst = std::max(worst, sup_norm_gap(coupled[idx].state, point.x));
    }
    return worst;
}

} // namespace netsis

#endif // NETSIS_REACTIVE_HPP
