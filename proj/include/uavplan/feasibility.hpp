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

#ifndef UAVPLAN_FEASIBILITY_HPP
#define UAVPLAN_FEASIBILITY_HPP

#include <uavplan/channel.hpp>
#include <uavplan/fleet.hpp>
#include <uavplan/scenario.hpp>

#include <string>
#include <vector>

namespace uavplan {

/// Human-readable list of violated constraints; empty when the solution is
/// feasible. Checks the per-UAV power budget, the SNR threshold on every
/// associated link and UAV containment. Single association per UE and the
/// binary matrix hold by construction of Association.
inline std::vector<std::string> constraint_violations(const Scenario& s, const FleetState& fleet,
                                                      const Association& assoc, const ChannelModel& ch)
{
    std::vector<std::string> out;
    const double budget = s.system.max_power_watts();
    for (std::size_t i = 0; i < fleet.uav_count(); ++i) {
        if (fleet.committed_power(i, assoc) > budget)
            out.push_back("power budget exceeded on UAV " + std::to_string(i));
        if (!s.area.contains(fleet.positions[i])) out.push_back("UAV " + std::to_string(i) + " outside area");
        for (auto k : assoc.members(i)) {
            const double g = snr(fleet.powers(i, k), ch.gain(fleet.positions[i], i, k), ch.noise_watts());
            if (g < db_to_linear(s.ues[k].snr_threshold))
                out.push_back("UE " + std::to_string(k) + " below SNR threshold on UAV " + std::to_string(i));
        }
    }
    return out;
}

/// Releases associated links whose SNR misses the UE threshold and zeroes
/// their power. Returns the number of links dropped.
inline std::size_t drop_infeasible_links(const Scenario& s, FleetState& fleet, Association& assoc,
                                         const ChannelModel& ch)
{
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < fleet.uav_count(); ++i) {
        const auto members = assoc.members(i);
        for (auto k : members) {
            const double g = snr(fleet.powers(i, k), ch.gain(fleet.positions[i], i, k), ch.noise_watts());
            if (g < db_to_linear(s.ues[k].snr_threshold)) {
                assoc.release(k);
                fleet.powers(i, k) = 0.0;
                ++dropped;
            }
        }
    }
    return dropped;
}

} // namespace uavplan

#endif // UAVPLAN_FEASIBILITY_HPP
