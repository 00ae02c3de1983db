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
#ifndef NETSIS_PIPELINE_HPP
#define NETSIS_PIPELINE_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netsis/compare.hpp"
#include "netsis/csv.hpp"
#include "netsis/degree_stats.hpp"
#include "netsis/graph.hpp"
#include "netsis/meanfield.hpp"
#include "netsis/parallel.hpp"
#include "netsis/reactive.hpp"
#include "netsis/rewire.hpp"
#include "netsis/rng.hpp"
#include "netsis/sis.hpp"
#include "netsis/version.hpp"

namespace netsis {

using json = nlohmann::ordered_json;

/// Configuration problems exit with status 2; runtime failures with 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> output_dir_override;
    std::size_t workers = 1;
    bool validate_only = false;
};

struct RunOutcome {
    std::filesystem::path output_dir;
    json manifest;
};

// ---------------------------------------------------------------------------
// Small config helpers
// ---------------------------------------------------------------------------

namespace cfg {

inline const json& require(const json& j, const std::string& key)
{
    if (!j.contains(key)) {
        throw ConfigError("config: missing key '" + key + "'");
    }
    return j.at(key);
}

inline double number(const json& j, const std::string& key)
{
    const auto& v = require(j, key);
    if (!v.is_number()) {
        throw ConfigError("config: '" + key + "' must be a number");
    }
    return v.get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback)
{
    return j.contains(key) ? number(j, key) : fallback;
}

inline std::int64_t integer(const json& j, const std::string& key)
{
    const auto& v = require(j, key);
    if (!v.is_number_integer()) {
        throw ConfigError("config: '" + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

inline std::int64_t integer_or(const json& j, const std::string& key, std::int64_t fallback)
{
    return j.contains(key) ? integer(j, key) : fallback;
}

inline std::string text(const json& j, const std::string& key)
{
    const auto& v = require(j, key);
    if (!v.is_string()) {
        throw ConfigError("config: '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

inline std::string text_or(const json& j, const std::string& key, const std::string& fallback)
{
    return j.contains(key) ? text(j, key) : fallback;
}

inline AdoptionRule rule(const json& j)
{
    const auto token = text_or(j, "rule", "non_monophilic");
    if (token == "non_monophilic") {
        return AdoptionRule::non_monophilic;
    }
    if (token == "monophilic") {
        return AdoptionRule::monophilic;
    }
    throw ConfigError("config: rule must be 'non_monophilic' or 'monophilic'");
}

inline SamplingScheme sampler(const json& j)
{
    const auto token = text_or(j, "sampler", "uniform_node");
    if (token == "uniform_node") {
        return SamplingScheme::uniform_node;
    }
    if (token == "edge_end") {
        return SamplingScheme::edge_end;
    }
    if (token == "neighbor") {
        return SamplingScheme::random_neighbor;
    }
    throw ConfigError("config: sampler must be 'uniform_node', 'edge_end' or 'neighbor'");
}

/// Lambda grid: an explicit array or {"from", "to", "step"}.
inline std::vector<double> lambda_grid(const json& j)
{
    const auto& g = require(j, "lambda_grid");
    std::vector<double> grid;
    if (g.is_array()) {
        for (const auto& v : g) {
            grid.push_back(v.get<double>());
        }
    } else if (g.is_object()) {
        const double from = number(g, "from");
        const double to = number(g, "to");
        const double step = number(g, "step");
        if (step <= 0.0 || to < from) {
            throw ConfigError("config: lambda_grid needs step > 0 and to >= from");
        }
        for (int i = 0;; ++i) {
            const double lambda = from + i * step;
            if (lambda > to + 1e-12) {
                break;
            }
            grid.push_back(lambda);
        }
    } else {
        throw ConfigError("config: lambda_grid must be an array or {from, to, step}");
    }
    if (grid.empty() || grid.front() <= 0.0) {
        throw ConfigError("config: lambda_grid must be nonempty and positive");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= grid[i - 1]) {
            throw ConfigError("config: lambda_grid must be strictly increasing");
        }
    }
    return grid;
}

inline std::vector<std::uint64_t> seeds(const json& j)
{
    const auto& s = require(j, "seeds");
    if (!s.is_array() || s.empty()) {
        throw ConfigError("config: seeds must be a nonempty array");
    }
    std::vector<std::uint64_t> out;
    for (const auto& v : s) {
        out.push_back(v.get<std::uint64_t>());
    }
    return out;
}

inline DegreeSequenceSpec degree_spec(const json& j, const std::filesystem::path& base_dir)
{
    const auto& d = require(j, "degrees");
    DegreeSequenceSpec spec;
    if (d.contains("power_law")) {
        const auto& pl = d.at("power_law");
        spec.power_law = PowerLawSpec{number(pl, "alpha"), static_cast<int>(integer(pl, "k_min")),
                                      static_cast<int>(integer(pl, "k_max"))};
    } else if (d.contains("explicit")) {
        spec.explicit_degrees = d.at("explicit").get<std::vector<int>>();
    } else if (d.contains("file")) {
        spec.explicit_degrees =
            read_degree_sequence_file((base_dir / text(d, "file")).string());
    } else {
        throw ConfigError("config: degrees needs 'power_law', 'explicit' or 'file'");
    }
    return spec;
}

} // namespace cfg

// ---------------------------------------------------------------------------
// Checksums (manifest entries; used by the determinism criterion)
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(const char* data, std::size_t size)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= static_cast<unsigned char>(data[i]);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

inline std::string file_checksum(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot checksum: " + path.string());
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    char hex[32];
    std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return hex;
}

// ---------------------------------------------------------------------------
// Experiment runner
// ---------------------------------------------------------------------------

namespace detail {

class StageClock {
public:
    void start(const std::string& stage)
    {
        stage_ = stage;
        begin_ = std::chrono::steady_clock::now();
    }

    void stop()
    {
        const auto end = std::chrono::steady_clock::now();
        seconds_[stage_] += std::chrono::duration<double>(end - begin_).count();
    }

    json to_json() const
    {
        json j = json::object();
        for (const auto& [stage, secs] : seconds_) {
            j[stage] = secs;
        }
        return j;
    }

private:
    std::string stage_;
    std::chrono::steady_clock::time_point begin_;
    std::map<std::string, double> seconds_;
};

struct RunContext {
    std::filesystem::path config_dir; // inputs resolve against this
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    StageClock clock;
    std::vector<std::string> outputs; // file names written, in order
    json summary = json::object();
};

inline std::filesystem::path resolve_input(const RunContext& ctx, const std::string& rel)
{
    const std::filesystem::path p(rel);
    return p.is_absolute() ? p : ctx.config_dir / p;
}

inline std::string require_input_file(const RunContext& ctx, const std::string& rel)
{
    const auto path = resolve_input(ctx, rel);
    if (!std::filesystem::exists(path)) {
        throw ConfigError("config: referenced path does not exist: " + path.string());
    }
    return path.string();
}

inline std::string out_file(RunContext& ctx, const std::string& name)
{
    ctx.outputs.push_back(name);
    return (ctx.out_dir / name).string();
}

inline void write_trajectory_csvs(RunContext& ctx, const std::string& prefix,
                                  const std::vector<TrajectoryRecord>& records)
{
    CsvWriter traj(out_file(ctx, prefix + "trajectory.csv"));
    traj.header("step,k,x_k");
    for (const auto& rec : records) {
        for (std::size_t i = 0; i < rec.state.degrees.size(); ++i) {
            traj.row({std::to_string(rec.step), std::to_string(rec.state.degrees[i]),
                      format_double(rec.state.x[i])});
        }
    }
    CsvWriter rho(out_file(ctx, prefix + "rho.csv"));
    rho.header("step,rho");
    for (const auto& rec : records) {
        rho.row({std::to_string(rec.step), format_double(rec.rho)});
    }
}

// ---- generate --------------------------------------------------------------

inline void run_generate(const json& config, RunContext& ctx)
{
    ctx.clock.start("generate");
    const auto spec = cfg::degree_spec(config, ctx.config_dir);
    const auto n = static_cast<std::size_t>(cfg::integer_or(
        config, "n", spec.explicit_degrees ? static_cast<std::int64_t>(spec.explicit_degrees->size())
                                           : 0));
    if (n < 2) {
        throw ConfigError("config: generate needs n >= 2 (or an explicit list)");
    }
    Rng rng(ctx.seed);
    const auto degrees = sample_degree_sequence(spec, n, rng);
    ConfigModelReport report;
    const auto g = build_configuration_model(
        degrees, rng, static_cast<std::size_t>(cfg::integer_or(config, "restart_budget", 100)),
        &report);
    const auto name = cfg::text_or(config, "output", "graph.edges");
    write_edge_list_file(out_file(ctx, name), g);
    ctx.summary["nodes"] = g.node_count();
    ctx.summary["edges"] = g.edge_count();
    ctx.summary["max_degree"] = g.max_degree();
    ctx.summary["restarts"] = report.restarts;
    ctx.summary["erased_edges"] = report.erased_edges;
    ctx.summary["stub_deviation"] = report.stub_deviation;
    ctx.clock.stop();
}

// ---- rewire ----------------------------------------------------------------

inline void run_rewire(const json& config, RunContext& ctx)
{
    ctx.clock.start("rewire");
    const auto g = read_edge_list_file(require_input_file(ctx, cfg::text(config, "edge_list")));
    Rng rng(ctx.seed);
    const auto result = rewire_to_assortativity(
        g, cfg::number(config, "target_r"),
        static_cast<std::size_t>(cfg::integer_or(config, "max_swaps", 2000000)),
        cfg::number_or(config, "tolerance", 0.02), rng);
    const auto name = cfg::text_or(config, "output", "rewired.edges");
    write_edge_list_file(out_file(ctx, name), result.graph);
    ctx.summary["assortativity"] = result.assortativity;
    ctx.summary["swaps_applied"] = result.swaps_applied;
    ctx.summary["proposals"] = result.proposals;
    ctx.summary["converged"] = result.converged;
    ctx.clock.stop();
}

// ---- stats -----------------------------------------------------------------

inline void run_stats(const json& config, RunContext& ctx)
{
    ctx.clock.start("stats");
    const auto g = read_edge_list_file(require_input_file(ctx, cfg::text(config, "edge_list")));
    const auto stats = joint_degree_stats(g);
    const auto law_x = degree_law(stats, SamplingScheme::uniform_node);
    const auto law_y = degree_law(stats, SamplingScheme::edge_end);
    const auto law_z = degree_law(stats, SamplingScheme::random_neighbor);

    CsvWriter laws(out_file(ctx, "degree_laws.csv"));
    laws.header("k,P_k,q_k,z_k");
    for (int k = 1; k <= stats.max_degree(); ++k) {
        laws.row({std::to_string(k), format_double(law_x[k]), format_double(law_y[k]),
                  format_double(law_z[k])});
    }

    CsvWriter summary(out_file(ctx, "stats_summary.csv"));
    summary.header("metric,value");
    summary.row({"nodes", std::to_string(g.node_count())});
    summary.row({"edges", std::to_string(g.edge_count())});
    summary.row({"max_degree", std::to_string(g.max_degree())});
    summary.row({"mean_degree", format_double(expected_degree(law_x))});
    summary.row({"mean_degree_edge_end", format_double(expected_degree(law_y))});
    summary.row({"mean_degree_neighbor", format_double(expected_degree(law_z))});
    summary.row({"sigma_q", format_double(stats.sigma_q())});
    try {
        const double r = assortativity(stats);
        summary.row({"assortativity", format_double(r)});
        ctx.summary["assortativity"] = r;
    } catch (const UndefinedAssortativityError&) {
        summary.row({"assortativity", "undefined"});
        ctx.summary["assortativity"] = nullptr;
    }
    ctx.clock.stop();
}

// ---- simulate ----------------------------------------------------------------

inline void run_simulate(const json& config, RunContext& ctx)
{
    ctx.clock.start("simulate");
    const auto g = read_edge_list_file(require_input_file(ctx, cfg::text(config, "edge_list")));
    const SisParams params(cfg::number(config, "nu"), cfg::number(config, "delta"),
                           g.max_degree());
    const auto sweeps = static_cast<std::size_t>(cfg::integer_or(config, "sweeps", 200));
    const auto record_sweeps =
        static_cast<std::size_t>(cfg::integer_or(config, "record_sweeps", 1));
    Rng rng(ctx.seed);
    const auto records = run_trajectory(g, params, cfg::rule(config), cfg::sampler(config),
                                        cfg::number_or(config, "init_fraction", 0.1),
                                        sweeps * g.node_count(),
                                        record_sweeps * g.node_count(), rng);
    write_trajectory_csvs(ctx, "", records);
    ctx.summary["final_rho"] = records.back().rho;
    ctx.clock.stop();
}

// ---- meanfield ---------------------------------------------------------------

inline void run_meanfield(const json& config, RunContext& ctx)
{
    ctx.clock.start("meanfield");
    std::optional<JointDegreeStats> stats;
    double default_scale = 10000.0;
    if (config.contains("edge_list")) {
        const auto g =
            read_edge_list_file(require_input_file(ctx, cfg::text(config, "edge_list")));
        stats = joint_degree_stats(g);
        default_scale = static_cast<double>(g.node_count());
    } else if (config.contains("distribution")) {
        stats = JointDegreeStats::uncorrelated(
            read_distribution_csv(require_input_file(ctx, cfg::text(config, "distribution"))));
    } else {
        throw ConfigError("config: meanfield needs 'edge_list' or 'distribution'");
    }
    const SisParams params(cfg::number(config, "nu"), cfg::number(config, "delta"),
                           stats->max_degree());
    const double scale_m = cfg::number_or(config, "scale_m", default_scale);
    const auto sweeps = static_cast<std::size_t>(cfg::integer_or(config, "sweeps", 200));
    const auto record_sweeps =
        static_cast<std::size_t>(cfg::integer_or(config, "record_sweeps", 1));
    const auto steps = static_cast<std::size_t>(sweeps * scale_m);
    const auto record_every = std::max<std::size_t>(
        1, static_cast<std::size_t>(record_sweeps * scale_m));

    const auto z_form = cfg::text_or(config, "z_weight_form", "law_ratio") == "inverted_ratio"
                            ? ZWeightForm::inverted_ratio
                            : ZWeightForm::law_ratio;
    const auto weights = Step1Weights::make(*stats, cfg::sampler(config), z_form);
    const auto x0 = PopulationState::constant(stats->degree_dist(),
                                              cfg::number_or(config, "init_fraction", 0.1));
    const auto records = iterate_trajectory(x0, weights, *stats, params, cfg::rule(config),
                                            scale_m, steps, record_every);

    CsvWriter traj(out_file(ctx, "meanfield_trajectory.csv"));
    traj.header("step,k,x_k");
    for (const auto& rec : records) {
        for (std::size_t i = 0; i < rec.state.degrees.size(); ++i) {
            traj.row({std::to_string(rec.step), std::to_string(rec.state.degrees[i]),
                      format_double(rec.state.x[i])});
        }
    }
    CsvWriter rho(out_file(ctx, "meanfield_rho.csv"));
    rho.header("step,rho");
    for (const auto& rec : records) {
        rho.row({std::to_string(rec.step), format_double(rec.rho)});
    }
    ctx.summary["final_rho"] = records.back().rho;

    // with a lambda grid, also emit the stationary curve for both rules
    if (config.contains("lambda_grid")) {
        const auto grid = cfg::lambda_grid(config);
        std::string r_field = "nan";
        try {
            r_field = format_double(assortativity(*stats));
        } catch (const UndefinedAssortativityError&) {
        }
        CsvWriter curve(out_file(ctx, "curve.csv"));
        curve.header("lambda,rho,rule,assortativity");
        for (auto rule : {AdoptionRule::non_monophilic, AdoptionRule::monophilic}) {
            const char* token =
                rule == AdoptionRule::non_monophilic ? "non_monophilic" : "monophilic";
            for (const auto& [lambda, rho_star] : rho_lambda_curve(*stats, rule, grid)) {
                curve.row({format_double(lambda), format_double(rho_star), token, r_field});
            }
        }
    }
    ctx.clock.stop();
}

// ---- thresholds --------------------------------------------------------------

inline void run_thresholds(const json& config, RunContext& ctx)
{
    ctx.clock.start("thresholds");
    const auto g = read_edge_list_file(require_input_file(ctx, cfg::text(config, "edge_list")));
    const auto stats = joint_degree_stats(g);
    const double mean_x = expected_degree(degree_law(stats, SamplingScheme::uniform_node));
    const double mean_z = expected_degree(degree_law(stats, SamplingScheme::random_neighbor));
    const double star_x = critical_threshold(stats, AdoptionRule::non_monophilic);
    const double star_z = critical_threshold(stats, AdoptionRule::monophilic);

    CsvWriter out(out_file(ctx, "thresholds.csv"));
    out.header("rule,lambda_star,expected_degree");
    out.row({"non_monophilic", format_double(star_x), format_double(mean_x)});
    out.row({"monophilic", format_double(star_z), format_double(mean_z)});
    ctx.summary["lambda_star_non_monophilic"] = star_x;
    ctx.summary["lambda_star_monophilic"] = star_z;
    ctx.clock.stop();
}

// ---- sweep ---------------------------------------------------------------------

inline void run_sweep(const json& config, RunContext& ctx)
{
    ctx.clock.start("sweep");
    const auto g = read_edge_list_file(require_input_file(ctx, cfg::text(config, "edge_list")));
    ThresholdSweepConfig sweep;
    sweep.lambda_grid = cfg::lambda_grid(config);
    sweep.seeds = cfg::seeds(config);
    sweep.delta_hint = cfg::number_or(config, "delta_hint", 0.5);
    sweep.init_fraction = cfg::number_or(config, "init_fraction", 0.1);
    sweep.sweeps = static_cast<std::size_t>(cfg::integer_or(config, "sweeps", 200));
    sweep.record_every_sweeps =
        static_cast<std::size_t>(cfg::integer_or(config, "record_sweeps", 1));
    sweep.terminal_window = cfg::number_or(config, "terminal_window", 0.1);
    sweep.rho_cut = cfg::number_or(config, "rho_cut", 0.01);
    sweep.workers = ctx.workers;
    const auto result = estimate_threshold(g, cfg::rule(config), cfg::sampler(config), sweep);

    CsvWriter points(out_file(ctx, "sweep.csv"));
    points.header("lambda,seed,rho_terminal");
    for (const auto& p : result.points) {
        points.row({format_double(p.lambda), std::to_string(p.seed),
                    format_double(p.rho_terminal)});
    }
    CsvWriter summary(out_file(ctx, "sweep_summary.csv"));
    summary.header("lambda,mean_rho,std_rho");
    for (const auto& s : result.summary) {
        summary.row({format_double(s.lambda), format_double(s.mean_rho),
                     format_double(s.std_rho)});
    }
    if (result.lambda_star) {
        ctx.summary["lambda_star_estimate"] = *result.lambda_star;
    } else {
        ctx.summary["lambda_star_estimate"] = nullptr;
    }
    ctx.clock.stop();
}

// ---- reactive ------------------------------------------------------------------

inline bool known_kernel(const std::string& name)
{
    return name == "logistic_prevalence";
}

inline TransitionKernel::RowFn make_kernel_rows(const json& kernel_cfg,
                                                const DegreeDistribution& dist)
{
    const auto name = cfg::text(kernel_cfg, "name");
    if (name == "logistic_prevalence") {
        return logistic_prevalence_rows(dist, cfg::number_or(kernel_cfg, "beta", 10.0),
                                        cfg::number_or(kernel_cfg, "rho0", 0.2));
    }
    throw ConfigError("config: unknown kernel '" + name + "'");
}

inline void run_reactive(const json& config, RunContext& ctx)
{
    ctx.clock.start("reactive-setup");
    json family_cfg;
    std::filesystem::path member_base = ctx.config_dir;
    if (config.contains("family_manifest")) {
        const auto manifest_path =
            require_input_file(ctx, cfg::text(config, "family_manifest"));
        std::ifstream in(manifest_path);
        try {
            family_cfg = json::parse(in);
        } catch (const json::parse_error& err) {
            throw ConfigError(std::string("family manifest: ") + err.what());
        }
        member_base = std::filesystem::path(manifest_path).parent_path();
    } else if (config.contains("family")) {
        family_cfg = config.at("family");
    } else {
        throw ConfigError("config: reactive needs 'family' or 'family_manifest'");
    }

    const auto& members_cfg = cfg::require(family_cfg, "members");
    if (!members_cfg.is_array() || members_cfg.empty()) {
        throw ConfigError("family: members must be a nonempty array of edge-list paths");
    }
    std::vector<Graph> members;
    for (const auto& entry : members_cfg) {
        const std::filesystem::path p(entry.get<std::string>());
        const auto full = p.is_absolute() ? p : member_base / p;
        if (!std::filesystem::exists(full)) {
            throw ConfigError("family: member edge list does not exist: " + full.string());
        }
        members.push_back(read_edge_list_file(full.string()));
    }
    const auto family = GraphFamily::from_graphs(std::move(members));
    const auto& dist = family.degree_dist();
    const TransitionKernel kernel(family.size(),
                                  make_kernel_rows(cfg::require(family_cfg, "kernel"), dist),
                                  kernel_check_states(dist));

    const SisParams params(cfg::number(config, "nu"), cfg::number(config, "delta"),
                           dist.max_degree);
    const double init_fraction = cfg::number_or(config, "init_fraction", 0.1);
    const std::size_t m = family.graph(0).node_count();
    const auto sweeps = static_cast<std::size_t>(cfg::integer_or(config, "sweeps", 50));
    const std::size_t T = sweeps * m;
    const auto record_sweeps =
        static_cast<std::size_t>(cfg::integer_or(config, "record_sweeps", 1));
    const std::size_t record_every = record_sweeps * m;
    const auto order = cfg::text_or(config, "order", "transition_first") == "update_first"
                           ? CoupledOrder::update_then_transition
                           : CoupledOrder::transition_then_update;
    ctx.clock.stop();

    ctx.clock.start("reactive-coupled");
    Rng rng(ctx.seed);
    const auto coupled =
        simulate_coupled(family, kernel, params, init_fraction, T, 1, rng, order);
    ctx.clock.stop();

    ctx.clock.start("reactive-ode");
    // matched window: Euler step 1/M over the same horizon, starting from
    // the chain's realized initial population state
    const auto ode = integrate_constrained_ode(coupled.front().state, family, kernel, params,
                                               1.0 / static_cast<double>(m), T, record_every);
    ctx.clock.stop();

    ctx.clock.start("reactive-write");
    CsvWriter ode_csv(out_file(ctx, "ode.csv"));
    std::string header = "t,k,x_k";
    for (std::size_t i = 1; i <= family.size(); ++i) {
        header += ",pi_" + std::to_string(i);
    }
    ode_csv.header(header);
    for (const auto& point : ode) {
        for (std::size_t i = 0; i < point.x.degrees.size(); ++i) {
            std::vector<std::string> fields{format_double(point.t),
                                            std::to_string(point.x.degrees[i]),
                                            format_double(point.x.x[i])};
            for (double pi : point.pi) {
                fields.push_back(format_double(pi));
            }
            ode_csv.row(fields);
        }
    }

    CsvWriter coupled_csv(out_file(ctx, "coupled.csv"));
    coupled_csv.header("n,member,k,x_k");
    for (const auto& rec : coupled) {
        if (rec.step % record_every == 0 || rec.step == T) {
            for (std::size_t i = 0; i < rec.state.degrees.size(); ++i) {
                coupled_csv.row({std::to_string(rec.step), std::to_string(rec.member),
                                 std::to_string(rec.state.degrees[i]),
                                 format_double(rec.state.x[i])});
            }
        }
    }

    const double deviation = deviation_report(coupled, ode, m);
    double worst_residual = 0.0;
    for (const auto& point : ode) {
        worst_residual = std::max(worst_residual, point.constraint_residual);
    }
    CsvWriter summary(out_file(ctx, "reactive_summary.csv"));
    summary.header("metric,value");
    summary.row({"deviation_sup", format_double(deviation)});
    summary.row({"max_constraint_residual", format_double(worst_residual)});
    ctx.summary["deviation_sup"] = deviation;
    ctx.summary["max_constraint_residual"] = worst_residual;
    ctx.clock.stop();
}

// ---- compare -------------------------------------------------------------------

inline void run_compare(const json& config, RunContext& ctx)
{
    ctx.clock.start("compare");
    const auto g = read_edge_list_file(require_input_file(ctx, cfg::text(config, "edge_list")));
    const SisParams params(cfg::number(config, "nu"), cfg::number(config, "delta"),
                           g.max_degree());
    const auto sweeps = static_cast<std::size_t>(cfg::integer_or(config, "sweeps", 50));
    const auto record_sweeps =
        static_cast<std::size_t>(cfg::integer_or(config, "record_sweeps", 1));
    Rng rng(ctx.seed);
    const auto trace = mc_vs_meanfield_deviation(
        g, params, cfg::rule(config), cfg::sampler(config),
        cfg::number_or(config, "init_fraction", 0.1), sweeps * g.node_count(),
        record_sweeps * g.node_count(), rng);

    CsvWriter out(out_file(ctx, "compare.csv"));
    out.header("step,gap");
    for (const auto& [step, gap] : trace.gaps) {
        out.row({std::to_string(step), format_double(gap)});
    }
    ctx.summary["max_gap"] = trace.max_gap;
    ctx.clock.stop();
}

// ---- figure1 -------------------------------------------------------------------

inline std::string r_label(double r)
{
    if (r == 0.0) {
        return "0";
    }
    std::string s = format_double(r);
    if (r > 0.0) {
        s = "+" + s;
    }
    return s;
}

inline void run_figure1(const json& config, RunContext& ctx)
{
    ctx.clock.start("figure1-generate");
    const auto spec = cfg::degree_spec(config, ctx.config_dir);
    const auto n = static_cast<std::size_t>(cfg::integer_or(
        config, "n", spec.explicit_degrees ? static_cast<std::int64_t>(spec.explicit_degrees->size())
                                           : 0));
    if (n < 2) {
        throw ConfigError("config: figure1 needs n >= 2 (or an explicit list)");
    }
    Rng rng(ctx.seed);
    const auto degrees = sample_degree_sequence(spec, n, rng);
    const auto base = build_configuration_model(degrees, rng);
    write_edge_list_file(out_file(ctx, "base.edges"), base);
    ctx.clock.stop();

    std::vector<double> targets{-0.3, 0.0, 0.3};
    if (config.contains("r_targets")) {
        targets = config.at("r_targets").get<std::vector<double>>();
    }
    const double tolerance = cfg::number_or(config, "tolerance", 0.02);
    const auto max_swaps =
        static_cast<std::size_t>(cfg::integer_or(config, "max_swaps", 20000000));

    ctx.clock.start("figure1-rewire");
    std::vector<Graph> variants;
    json achieved = json::array();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        Rng rewire_rng(Rng::derive_seed(ctx.seed, i + 1));
        auto result = rewire_to_assortativity(base, targets[i], max_swaps, tolerance,
                                              rewire_rng);
        if (!result.converged) {
            throw std::runtime_error("figure1: rewiring did not reach r = "
                                     + format_double(targets[i]) + " (achieved "
                                     + format_double(result.assortativity) + ")");
        }
        write_edge_list_file(out_file(ctx, "graph_r" + r_label(targets[i]) + ".edges"),
                             result.graph);
        achieved.push_back(result.assortativity);
        variants.push_back(std::move(result.graph));
    }
    ctx.summary["achieved_r"] = achieved;
    ctx.clock.stop();

    ctx.clock.start("figure1-cdfs");
    std::vector<JointDegreeStats> stats;
    stats.reserve(variants.size());
    for (const auto& g : variants) {
        stats.push_back(joint_degree_stats(g));
    }
    const int max_deg = stats.front().max_degree();
    {
        CsvWriter cdf_csv(out_file(ctx, "fig1a_cdfs.csv"));
        std::string header = "k";
        for (double t : targets) {
            header += ",cdf_r" + r_label(t);
        }
        cdf_csv.header(header);
        std::vector<std::vector<double>> cdfs;
        for (const auto& s : stats) {
            const auto law = degree_law(s, SamplingScheme::random_neighbor);
            std::vector<double> cdf(law.size(), 0.0);
            double acc = 0.0;
            for (std::size_t k = 0; k < law.size(); ++k) {
                acc += law[k];
                cdf[k] = acc;
            }
            cdfs.push_back(std::move(cdf));
        }
        for (int k = 1; k <= max_deg; ++k) {
            std::vector<std::string> fields{std::to_string(k)};
            for (const auto& cdf : cdfs) {
                fields.push_back(format_double(cdf[k]));
            }
            cdf_csv.row(fields);
        }
    }
    ctx.clock.stop();

    ctx.clock.start("figure1-curves");
    const auto grid = cfg::lambda_grid(config);
    struct Cell {
        AdoptionRule rule;
        std::size_t variant;
    };
    std::vector<Cell> cells;
    for (auto rule : {AdoptionRule::non_monophilic, AdoptionRule::monophilic}) {
        for (std::size_t v = 0; v < variants.size(); ++v) {
            cells.push_back({rule, v});
        }
    }
    std::vector<std::vector<std::pair<double, double>>> curves(cells.size());
    parallel_for_indexed(cells.size(), ctx.workers, [&](std::size_t i) {
        curves[i] = rho_lambda_curve(stats[cells[i].variant], cells[i].rule, grid);
    });

    CsvWriter curve_csv(out_file(ctx, "fig1b_curves.csv"));
    curve_csv.header("lambda,rho,rule,r");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const char* rule_token =
            cells[i].rule == AdoptionRule::non_monophilic ? "non_monophilic" : "monophilic";
        for (const auto& [lambda, rho] : curves[i]) {
            curve_csv.row({format_double(lambda), format_double(rho), rule_token,
                           format_double(targets[cells[i].variant])});
        }
    }
    ctx.clock.stop();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

inline json load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config: " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config parse error: ") + err.what());
    }
}

inline const std::vector<std::string>& experiment_kinds()
{
    static const std::vector<std::string> kinds{"generate",   "rewire", "stats",
                                                "simulate",   "meanfield", "thresholds",
                                                "sweep",      "reactive",  "compare",
                                                "figure1"};
    return kinds;
}

/// Parses, resolves and executes the experiment described by the config.
/// With validate_only the pipeline stops after checking the configuration
/// (kind, parameter ranges, referenced paths).
inline RunOutcome run_experiment(const std::filesystem::path& config_path,
                                 const RunOptions& options = {})
{
    const json config = load_config(config_path);
    const auto kind = cfg::text(config, "kind");
    bool known = false;
    for (const auto& k : experiment_kinds()) {
        known = known || k == kind;
    }
    if (!known) {
        throw ConfigError("config: unknown kind '" + kind + "'");
    }

    detail::RunContext ctx;
    ctx.config_dir = std::filesystem::absolute(config_path).parent_path();
    ctx.workers = options.workers == 0 ? 1 : options.workers;
    ctx.seed = options.seed_override
                   ? *options.seed_override
                   : static_cast<std::uint64_t>(cfg::integer_or(config, "seed", 0));

    std::string out_dir = cfg::text_or(config, "output_dir", "out");
    if (options.output_dir_override) {
        out_dir = *options.output_dir_override;
    }
    ctx.out_dir = std::filesystem::path(out_dir);
    if (ctx.out_dir.is_relative()) {
        ctx.out_dir = ctx.config_dir / ctx.out_dir;
    }

    if (options.validate_only) {
        // dry-run validation: check referenced inputs and parameter shapes
        // without touching the output directory
        if (config.contains("edge_list")) {
            detail::require_input_file(ctx, cfg::text(config, "edge_list"));
        }
        if (config.contains("distribution")) {
            detail::require_input_file(ctx, cfg::text(config, "distribution"));
        }
        if (config.contains("degrees")) {
            const auto& d = config.at("degrees");
            if (d.contains("file")) {
                detail::require_input_file(ctx, cfg::text(d, "file"));
            }
            cfg::degree_spec(config, ctx.config_dir);
        }
        if (config.contains("family_manifest") || config.contains("family")) {
            json family_cfg;
            std::filesystem::path member_base = ctx.config_dir;
            if (config.contains("family_manifest")) {
                const auto manifest_path =
                    detail::require_input_file(ctx, cfg::text(config, "family_manifest"));
                std::ifstream in(manifest_path);
                try {
                    family_cfg = json::parse(in);
                } catch (const json::parse_error& err) {
                    throw ConfigError(std::string("family manifest: ") + err.what());
                }
                member_base = std::filesystem::path(manifest_path).parent_path();
            } else {
                family_cfg = config.at("family");
            }
            for (const auto& entry : cfg::require(family_cfg, "members")) {
                const std::filesystem::path p(entry.get<std::string>());
                const auto full = p.is_absolute() ? p : member_base / p;
                if (!std::filesystem::exists(full)) {
                    throw ConfigError("family: member edge list does not exist: "
                                      + full.string());
                }
            }
            const auto& kernel_cfg = cfg::require(family_cfg, "kernel");
            if (!detail::known_kernel(cfg::text(kernel_cfg, "name"))) {
                throw ConfigError("config: unknown kernel '" + cfg::text(kernel_cfg, "name")
                                  + "'");
            }
        }
        if (config.contains("lambda_grid")) {
            cfg::lambda_grid(config);
        }
        if (config.contains("seeds")) {
            cfg::seeds(config);
        }
        if (config.contains("nu")) {
            SisParams(cfg::number(config, "nu"), cfg::number_or(config, "delta", 0.5), 1);
        }
        RunOutcome outcome;
        outcome.output_dir = ctx.out_dir;
        outcome.manifest = json{{"validated", true}, {"kind", kind}};
        return outcome;
    }

    std::filesystem::create_directories(ctx.out_dir);

    if (kind == "generate") {
        detail::run_generate(config, ctx);
    } else if (kind == "rewire") {
        detail::run_rewire(config, ctx);
    } else if (kind == "stats") {
        detail::run_stats(config, ctx);
    } else if (kind == "simulate") {
        detail::run_simulate(config, ctx);
    } else if (kind == "meanfield") {
        detail::run_meanfield(config, ctx);
    } else if (kind == "thresholds") {
        detail::run_thresholds(config, ctx);
    } else if (kind == "sweep") {
        detail::run_sweep(config, ctx);
    } else if (kind == "reactive") {
        detail::run_reactive(config, ctx);
    } else if (kind == "compare") {
        detail::run_compare(config, ctx);
    } else if (kind == "figure1") {
        detail::run_figure1(config, ctx);
    }

    // manifest: config hash, seeds, version, per-output checksums, timings
    json manifest;
    manifest["tool_version"] = NETSIS_VERSION;
    manifest["kind"] = kind;
    {
        const std::string canonical = config.dump();
        char hex[32];
        std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx",
                      static_cast<unsigned long long>(
                          fnv1a64(canonical.data(), canonical.size())));
        manifest["config_hash"] = hex;
    }
    if (config.contains("seeds")) {
        manifest["seeds"] = config.at("seeds");
    } else {
        manifest["seeds"] = json::array({ctx.seed});
    }
    json outputs = json::object();
    for (const auto& name : ctx.outputs) {
        outputs[name] = file_checksum(ctx.out_dir / name);
    }
    manifest["outputs"] = outputs;
    manifest["wall_clock_seconds"] = ctx.clock.to_json();
    manifest["summary"] = ctx.summary;

    std::ofstream mf(ctx.out_dir / "manifest.json");
    mf << manifest.dump(2) << '\n';

    RunOutcome outcome;
    outcome.output_dir = ctx.out_dir;
    outcome.manifest = std::move(manifest);
    return outcome;
}

} // namespace netsis

#endif // NETSIS_PIPELINE_HPP
