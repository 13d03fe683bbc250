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

#ifndef UAVPLAN_FLEET_HPP
#define UAVPLAN_FLEET_HPP

#include <uavplan/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace uavplan {

/// UAV ↔ UE association. Keeps the per-UE serving UAV and the per-UAV
/// coalition (sorted UE ids) consistent with each other.
class Association
{
public:
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    Association() = default;
    Association(std::size_t uav_count, std::size_t ue_count)
        : serving_(ue_count, none), members_(uav_count) {}

    std::size_t uav_count() const noexcept { return members_.size(); }
    std::size_t ue_count() const noexcept { return serving_.size(); }

    std::optional<std::size_t> serving(std::size_t ue) const
    {
        const auto s = serving_.at(ue);
        return s == none ? std::nullopt : std::optional<std::size_t>(s);
    }

    /// c_{i,k}
    bool associated(std::size_t uav, std::size_t ue) const { return serving_.at(ue) == uav; }

    const std::vector<std::size_t>& members(std::size_t uav) const { return members_.at(uav); }
    std::size_t load(std::size_t uav) const { return members_.at(uav).size(); }

    /// Associates ue with uav, leaving any previous coalition.
    void assign(std::size_t ue, std::size_t uav)
    {
        if (uav >= members_.size()) throw std::out_of_range("Association::assign: bad UAV index");
        release(ue);
        auto& m = members_[uav];
        m.insert(std::lower_bound(m.begin(), m.end(), ue), ue);
        serving_[ue] = uav;
    }

    void release(std::size_t ue)
    {
        const auto s = serving_.at(ue);
        if (s == none) return;
        auto& m = members_[s];
        m.erase(std::lower_bound(m.begin(), m.end(), ue));
        serving_[ue] = none;
    }

    std::size_t associated_count() const noexcept
    {
        return static_cast<std::size_t>(std::count_if(serving_.begin(), serving_.end(),
                                                      [](std::size_t s) { return s != none; }));
    }

    std::vector<std::size_t> unassociated_ues() const
    {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < serving_.size(); ++k)
            if (serving_[k] == none) out.push_back(k);
        return out;
    }

    friend bool operator==(const Association&, const Association&) = default;

private:
    std::vector<std::size_t> serving_;
    std::vector<std::vector<std::size_t>> members_;
};

/// The coalition structure S = {s_1..s_N} is the association seen per UAV.
using CoalitionPartition = Association;

/// UAV positions at a common altitude plus the per-link transmit powers
/// p_{i,k} in watts (zero on links that are not associated).
struct FleetState
{
    std::vector<Vec2> positions;
    double altitude{200.0};
    Matrix powers; // N x M

    FleetState() = default;
    FleetState(std::vector<Vec2> pos, double alt, std::size_t ue_count)
        : positions(std::move(pos)), altitude(alt), powers(positions.size(), ue_count, 0.0) {}

    std::size_t uav_count() const noexcept { return positions.size(); }

    /// Σ_k c_{i,k} p_{i,k}
    double committed_power(std::size_t uav, const Association& assoc) const
    {
        double s = 0.0;
        for (auto k : assoc.members(uav)) s += powers(uav, k);
        return s;
    }

    friend bool operator==(const FleetState&, const FleetState&) = default;
};

/// Equal split of each UAV's budget over its coalition; zero elsewhere.
inline void set_equal_split(FleetState& fleet, const Association& assoc, double budget_watts, std::size_t uav)
{
    for (std::size_t k = 0; k < fleet.powers.cols(); ++k) fleet.powers(uav, k) = 0.0;
    const auto& m = assoc.members(uav);
    if (m.empty()) return;
    double p = budget_watts / static_cast<double>(m.size());
    // rounding can push the sum past the budget by an ulp
    for (;;) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m.size(); ++j) sum += p;
        if (sum <= budget_watts) break;
        p = std::nextafter(p, 0.0);
    }
    for (auto k : m) fleet.powers(uav, k) = p;
}

inline void set_equal_split(FleetState& fleet, const Association& assoc, double budget_watts)
{
    for (std::size_t i = 0; i < fleet.uav_count(); ++i) set_equal_split(fleet, assoc, budget_watts, i);
}

/// Smallest pairwise horizontal UAV separation; +inf for fewer than two UAVs.
inline double min_separation(const std::vector<Vec2>& positions)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < positions.size(); ++a)
        for (std::size_t b = a + 1; b < positions.size(); ++b) best = std::min(best, distance(positions[a], positions[b]));
    return best;
}

} // namespace uavplan

#endif // UAVPLAN_FLEET_HPP
