/*
 * Copyright 2026 The uavplan Authors
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

#ifndef UAVPLAN_ERRORS_HPP
#define UAVPLAN_ERRORS_HPP

#include <stdexcept>
#include <string>

// Precondition violations throw std::invalid_argument, math domain errors
// std::domain_error. The classes below cover the library-specific failures.

namespace uavplan {

class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed scenario file.
class parse_error : public error
{
public:
    using error::error;
};

/// A well-formed scenario violating a domain invariant.
class validation_error : public error
{
public:
    using error::error;
};

/// No fleet size up to one UAV per UE satisfies every UE's SNR demand.
class infeasible_error : public error
{
public:
    using error::error;
};

} // namespace uavplan

#endif // UAVPLAN_ERRORS_HPP
