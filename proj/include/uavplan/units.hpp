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

#ifndef UAVPLAN_UNITS_HPP
#define UAVPLAN_UNITS_HPP

#include <cmath>

// Scenario quantities are stored in dB / dBm; these are the only conversion
// points to the linear domain.

namespace uavplan {

inline constexpr double speed_of_light = 299792458.0; // m/s

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) noexcept { return 10.0 * std::log10(lin); }

inline double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double w) noexcept { return 10.0 * std::log10(w) + 30.0; }

} // namespace uavplan

#endif // UAVPLAN_UNITS_HPP
