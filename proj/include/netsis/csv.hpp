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
#ifndef NETSIS_CSV_HPP
#define NETSIS_CSV_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netsis/degree_stats.hpp"

namespace netsis {

/// All emitted floats carry 10 significant digits.
inline std::string format_double(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

/// Line-oriented CSV writer; newline-terminated rows, no quoting (none of
/// the emitted fields contain commas).
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path)
        : out_(path)
    {
        if (!out_) {
            throw std::invalid_argument("cannot open for writing: " + path);
        }
    }

    void header(const std::string& line) { out_ << line << '\n'; }

    void row(const std::vector<std::string>& fields)
    {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) {
                out_ << ',';
            }
            out_ << fields[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

/// Degree-distribution file: "k,P_k" with a header line.
inline DegreeDistribution read_distribution_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open distribution: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("distribution file is empty: " + path);
    }
    std::vector<std::pair<int, double>> entries;
    int max_k = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::string k_field, p_field;
        if (!std::getline(ls, k_field, ',') || !std::getline(ls, p_field)) {
            throw std::invalid_argument(path + ": malformed line " + std::to_string(line_no));
        }
        const int k = std::stoi(k_field);
        const double p = std::stod(p_field);
        if (k < 1) {
            throw std::invalid_argument(path + ": degree must be >= 1 at line "
                                        + std::to_string(line_no));
        }
        entries.emplace_back(k, p);
        max_k = std::max(max_k, k);
    }
    std::vector<double> pmf(max_k + 1, 0.0);
    for (const auto& [k, p] : entries) {
        pmf[k] += p;
    }
    return DegreeDistribution::from_pmf(std::move(pmf));
}

inline void write_distribution_csv(const std::string& path, const DegreeDistribution& dist)
{
    CsvWriter out(path);
    out.header("k,P_k");
    for (int k : dist.support) {
        out.row({std::to_string(k), format_double(dist.pmf[k])});
    }
}

} // namespace netsis

#endif // NETSIS_CSV_HPP
