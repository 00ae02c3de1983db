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
#ifndef NETSIS_MODEL_HPP
#define NETSIS_MODEL_HPP

#include <stdexcept>
#include <string>

namespace netsis {

/// How a susceptible node turns its observed sample into an adoption chance.
///   non_monophilic - observes the drawn agents themselves
///   monophilic     - observes a random friend of each drawn agent
enum class AdoptionRule { non_monophilic, monophilic };

/// Model parameters. A susceptible node that sees a infected agents among
/// its sample adopts with probability nu * a / D; an infected node recovers
/// with probability delta. Since a <= d(m) <= D, the adoption probability is
/// always within [0, 1].
struct SisParams {
    double nu;      // infection scale, in [0, 1]
    double delta;   // recovery probability, in (0, 1]
    int max_degree; // D of the network the parameters target

    SisParams(double nu, double delta, int max_degree)
        : nu(nu)
        , delta(delta)
        , max_degree(max_degree)
    {
        if (nu < 0.0 || nu > 1.0) {
            throw std::invalid_argument("SisParams: nu must be in [0, 1]");
        }
        if (delta <= 0.0 || delta > 1.0) {
            throw std::invalid_argument("SisParams: delta must be in (0, 1]");
        }
        if (max_degree < 1) {
            throw std::invalid_argument("SisParams: max_degree must be >= 1");
        }
    }

    /// Effective spreading rate.
    double lambda() const { return nu / delta; }

    /// Parameters realizing a given spreading rate: delta is capped so that
    /// nu = lambda * delta stays within [0, 1].
    static SisParams from_lambda(double lambda, int max_degree, double delta_hint = 0.5)
    {
        if (lambda <= 0.0) {
            throw std::invalid_argument("SisParams: lambda must be positive");
        }
        double delta = delta_hint;
        if (lambda * delta > 1.0) {
            delta = 1.0 / lambda;
        }
        return SisParams(lambda * delta, delta, max_degree);
    }
};

} // namespace netsis

#endif // NETSIS_MODEL_HPP
