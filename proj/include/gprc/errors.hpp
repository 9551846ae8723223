/*
 * Copyright 2026 The gprc Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace gprc {

/// Raised when a numeric signal becomes non-finite during stepping or
/// simulation. The message names the sample where it happened.
class SimulationAbort : public std::runtime_error {
public:
    explicit SimulationAbort(const std::string& what) : std::runtime_error(what) {}
};

/// Controller or learning-filter synthesis could not meet its contract.
class DesignError : public std::runtime_error {
public:
    explicit DesignError(const std::string& what) : std::runtime_error(what) {}
};

/// Gram matrix could not be factorized even after jitter escalation.
class GpFitError : public std::runtime_error {
public:
    explicit GpFitError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration parse or validation failure.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gprc
