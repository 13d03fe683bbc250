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

#ifndef UAVPLAN_TRACE_HPP
#define UAVPLAN_TRACE_HPP

#include <uavplan/format.hpp>

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace uavplan {

/// One optimizer iteration (row 0 is the starting point). All optimizers
/// emit the same schema.
struct TraceRow
{
    std::size_t iter{0};
    double total_rate_bps{0.0};
    double coverage{0.0};
    double max_speed_mps{0.0};        // 0 for GA/PSO
    double min_uav_separation_m{0.0}; // inf with a single UAV
    double sum_power_w{0.0};
    double elapsed_s{0.0};            // wall-clock since the loop started
};

using Trace = std::vector<TraceRow>;

inline constexpr const char* trace_header =
    "iter,total_rate_bps,coverage,max_speed_mps,min_uav_separation_m,sum_power_w,elapsed_s";

/// CSV, LF line endings. Numeric fields use the shortest round-trip form so
/// reruns of a deterministic run match byte for byte except elapsed_s.
inline void write_trace_csv(std::ostream& os, const Trace& trace)
{
    os << trace_header << '\n';
    for (const auto& r : trace) {
        os << r.iter << ',' << format_double(r.total_rate_bps) << ',' << format_double(r.coverage) << ','
           << format_double(r.max_speed_mps) << ',' << format_double(r.min_uav_separation_m) << ','
           << format_double(r.sum_power_w) << ',' << format_fixed(r.elapsed_s, 6) << '\n';
    }
}

} // namespace uavplan

#endif // UAVPLAN_TRACE_HPP
