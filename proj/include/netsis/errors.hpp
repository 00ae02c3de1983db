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
#ifndef NETSIS_ERRORS_HPP
#define NETSIS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netsis {

/// Assortativity is 0/0 on regular graphs (sigma_q == 0). Callers must
/// handle the degenerate case explicitly instead of receiving a NaN.
class UndefinedAssortativityError : public std::domain_error {
public:
    UndefinedAssortativityError()
        : std::domain_error("assortativity undefined: all edge ends have equal degree (sigma_q = 0)")
    {
    }
};

/// Configuration-model construction exhausted its restart budget and the
/// edge-erasure fallback changed more than the allowed fraction of stubs.
class GraphConstructionError : public std::runtime_error {
public:
    GraphConstructionError(std::string what, std::size_t restarts, std::size_t erased_edges,
                           double stub_deviation)
        : std::runtime_error(std::move(what))
        , restarts(restarts)
        , erased_edges(erased_edges)
        , stub_deviation(stub_deviation)
    {
    }

    std::size_t restarts;
    std::size_t erased_edges;
    double stub_deviation; // fraction of stubs dropped by the fallback
};

/// Fixed-point iteration ran out of iterations before reaching tolerance.
/// Carries the last iterate so callers can inspect how close it got.
class NonconvergenceError : public std::runtime_error {
public:
    NonconvergenceError(std::string what, double last_iterate, std::size_t iterations)
        : std::runtime_error(std::move(what))
        , last_iterate(last_iterate)
        , iterations(iterations)
    {
    }

    double last_iterate;
    std::size_t iterations;
};

/// The transition kernel produced a chain whose stationary distribution is
/// not unique (null space of P' - I has dimension > 1 at tolerance).
class ReducibilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace netsis

#endif // NETSIS_ERRORS_HPP
