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
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "netsis/pipeline.hpp"
#include "netsis/version.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"netsis - SIS contagion experiments on networks"};
    app.set_version_flag("--version", NETSIS_VERSION);

    std::string config_path;
    app.add_option("config", config_path, "experiment config (JSON)")->required();

    netsis::RunOptions options;
    std::uint64_t seed = 0;
    const auto* seed_opt = app.add_option("--seed", seed, "override the config's base seed");
    app.add_flag("--validate-only", options.validate_only,
                 "check the config and referenced paths, run nothing");

    CLI11_PARSE(app, argc, argv);

    if (seed_opt->count() > 0) {
        options.seed_override = seed;
    }
    if (const char* dir = std::getenv("NETSIS_OUTPUT_DIR")) {
        options.output_dir_override = std::string(dir);
    }
    options.workers = netsis::default_worker_count();
    if (const char* workers = std::getenv("NETSIS_WORKERS")) {
        options.workers = static_cast<std::size_t>(std::strtoull(workers, nullptr, 10));
        if (options.workers == 0) {
            options.workers = 1;
        }
    }

    try {
        const auto outcome = netsis::run_experiment(config_path, options);
        if (options.validate_only) {
            std::cout << "config ok: " << outcome.manifest.at("kind").get<std::string>() << '\n';
        } else {
            std::cout << "wrote " << outcome.output_dir.string() << '\n';
            if (!outcome.manifest.at("summary").empty()) {
                std::cout << outcome.manifest.at("summary").dump(2) << '\n';
            }
        }
        return 0;
    } catch (const netsis::ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
