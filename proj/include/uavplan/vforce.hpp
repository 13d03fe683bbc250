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

#ifndef UAVPLAN_VFORCE_HPP
#define UAVPLAN_VFORCE_HPP

#include <uavplan/association.hpp>
#include <uavplan/channel.hpp>
#include <uavplan/deploy_init.hpp>
#include <uavplan/feasibility.hpp>
#include <uavplan/fleet.hpp>
#include <uavplan/scenario.hpp>
#include <uavplan/trace.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace uavplan {

/// Force-law coefficients with thresholds already in the linear domain.
struct ForceParams
{
    double attraction_factor{1000.0};      // λ_a
    double repulsion_factor{300.0};        // λ_r
    double attraction_snr{0.0};            // γ̄^a, linear
    double uav_safety_distance{500.0};     // d̄^r, m
    double obstacle_safety_distance{100.0}; // d̄^o, m

    static ForceParams from(const SystemParams& sy)
    {
        return {sy.attraction_factor, sy.repulsion_factor, db_to_linear(sy.attraction_snr_threshold),
                sy.uav_safety_distance, sy.obstacle_safety_distance};
    }
};

/// State of one associated link as seen by the attraction law.
struct LinkState
{
    Vec2 uav;
    Vec2 ue;
    double distance;      // d_{i,k}, m
    double power;         // p_{i,k}, W
    double snr;           // γ_{i,k}, linear
    double snr_threshold; // γ_k^th, linear
};

/// Gravitation-like pull toward a UE, λ_a p (γ - γ^th) / d², active only
/// while γ exceeds γ̄^a and the UAV is within its power budget.
inline ForceVector attractive_force(const LinkState& l, const ForceParams& fp, bool within_budget)
{
    if (!within_budget || !(l.snr > fp.attraction_snr)) return {};
    const double mag = fp.attraction_factor * l.power * (l.snr - l.snr_threshold) / (l.distance * l.distance);
    return unit_or_zero(l.ue - l.uav) * mag;
}

/// Spring-like push away from another UAV closer than d̄^r. Coincident UAVs
/// are separated along `fallback` (a unit vector chosen by the caller).
inline ForceVector uav_repulsive_force(Vec2 self, Vec2 other, const ForceParams& fp, bool within_budget,
                                       Vec2 fallback = {})
{
    const double d = distance(self, other);
    if (!within_budget || !(d < fp.uav_safety_distance)) return {};
    const Vec2 dir = d > 0.0 ? (self - other) / d : fallback;
    return dir * (fp.repulsion_factor * (fp.uav_safety_distance - d));
}

/// Clearance from the UAV to the obstacle disc edge, 0 inside the disc.
inline double obstacle_clearance(Vec2 self, const Obstacle& ob)
{
    return std::max(0.0, distance(self, ob.center) - ob.radius);
}

inline ForceVector obstacle_repulsive_force(Vec2 self, const Obstacle& ob, const ForceParams& fp, bool within_budget)
{
    const double d = obstacle_clearance(self, ob);
    if (!within_budget || !(d < fp.obstacle_safety_distance)) return {};
    return unit_or_zero(self - ob.center) * (fp.repulsion_factor * (fp.obstacle_safety_distance - d));
}

/// The four area edges act as obstacles: perpendicular distance, inward normal.
inline ForceVector wall_repulsive_force(Vec2 self, const AreaSpec& area, const ForceParams& fp, bool within_budget)
{
    if (!within_budget) return {};
    const double dbar = fp.obstacle_safety_distance;
    auto push = [&](double d) { return d < dbar ? fp.repulsion_factor * (dbar - std::max(d, 0.0)) : 0.0; };
    return {push(self.x) - push(area.width - self.x), push(self.y) - push(area.height - self.y)};
}

/// Shared power gate of the three force laws: Σ_k c_{i,k} p_{i,k} <= P_i.
inline bool within_power_budget(const Scenario& s, const FleetState& fleet, const Association& assoc,
                                std::size_t uav)
{
    return fleet.committed_power(uav, assoc) <= s.system.max_power_watts();
}

/// Resultant force on a UAV: attraction to its coalition, repulsion from
/// every other UAV, every obstacle and the area boundary.
inline ForceVector aggregate_force(std::size_t uav, const Scenario& s, const FleetState& fleet,
                                   const Association& assoc, const ChannelModel& ch)
{
    const auto fp = ForceParams::from(s.system);
    const bool ok = within_power_budget(s, fleet, assoc, uav);
    const Vec2 z = fleet.positions[uav];
    ForceVector total;
    for (auto k : assoc.members(uav)) {
        const auto geo = link_geometry(z, fleet.altitude, s.ues[k].position);
        const double gamma = snr(fleet.powers(uav, k), ch.gain(z, uav, k), ch.noise_watts());
        total += attractive_force({z, s.ues[k].position, geo.distance, fleet.powers(uav, k), gamma,
                                   db_to_linear(s.ues[k].snr_threshold)},
                                  fp, ok);
    }
    for (std::size_t j = 0; j < fleet.uav_count(); ++j) {
        if (j == uav) continue;
        total += uav_repulsive_force(z, fleet.positions[j], fp, ok, Vec2{uav > j ? 1.0 : -1.0, 0.0});
    }
    for (const auto& ob : s.obstacles) total += obstacle_repulsive_force(z, ob, fp, ok);
    total += wall_repulsive_force(z, s.area, fp, ok);
    return total;
}

/// Δv = Ω Δt / m, then the speed is squashed through arctan into
/// [0, v_max) keeping the direction.
inline Vec2 velocity_map(ForceVector force, double dt, double mass, double v_max)
{
    const Vec2 dv = force * (dt / mass);
    const double n = dv.norm();
    if (n == 0.0) return {};
    double speed = std::atan(n) * 2.0 * v_max / std::numbers::pi;
    if (speed >= v_max) speed = std::nextafter(v_max, 0.0); // atan rounds to π/2 for huge n
    const Vec2 v = dv * (speed / n);
    return v.norm() < v_max ? v : v * (std::nextafter(v_max, 0.0) / v.norm());
}

inline Vec2 velocity_map(ForceVector force, const SystemParams& sy)
{
    return velocity_map(force, sy.control_period, sy.virtual_mass, sy.max_velocity);
}

/// z + v Δt, clamped into the area.
inline Vec2 update_position(Vec2 z, Vec2 v, double dt, const AreaSpec& area)
{
    return area.clamp(z + v * dt);
}

/// Adds step * speed to every associated link of the UAV, then scales the
/// links down proportionally if the budget is exceeded.
inline void update_power(std::size_t uav, FleetState& fleet, const Association& assoc, double speed, double step,
                         double budget)
{
    const auto& m = assoc.members(uav);
    if (m.empty()) return;
    for (auto k : m) fleet.powers(uav, k) += step * speed;
    double sum = fleet.committed_power(uav, assoc);
    if (sum <= budget) return;
    const double scale = budget / sum;
    for (auto k : m) fleet.powers(uav, k) *= scale;
    while ((sum = fleet.committed_power(uav, assoc)) > budget)
        for (auto k : m) fleet.powers(uav, k) = std::nextafter(fleet.powers(uav, k), 0.0);
}

/// Snapshot handed to observers after each iteration.
struct VfIterate
{
    std::size_t iteration;
    const FleetState& fleet;
    const Association& association;
    const std::vector<Vec2>& velocities;
    double total_rate;
};

struct VfOptions
{
    bool coalition_game{true};
    bool power_update{true};
    std::size_t max_iterations{500};
    std::size_t convergence_window{5};
    std::function<void(const VfIterate&)> observer;
};

struct VfResult
{
    FleetState fleet;
    Association association;
    Trace trace;
    std::size_t iterations{0};
    bool converged{false};
};

namespace detail {

inline TraceRow make_row(std::size_t iter, const Scenario& s, const FleetState& fleet, const Association& assoc,
                         const ChannelModel& ch, double max_speed, double elapsed)
{
    double sum_power = 0.0;
    for (std::size_t i = 0; i < fleet.uav_count(); ++i) sum_power += fleet.committed_power(i, assoc);
    return {iter,     total_rate(s, fleet, assoc, ch), coverage(s, fleet, assoc, ch),
            max_speed, min_separation(fleet.positions), sum_power, elapsed};
}

} // namespace detail

/// Alternating optimization: per iteration re-form coalitions, move every
/// UAV along its force-derived velocity with powers fixed, then raise link
/// powers by the speed felt at the new positions. Stops after
/// max_iterations or once the fastest UAV stays below the convergence
/// threshold for convergence_window consecutive iterations.
///
/// The first coalition round starts from best-SNR association; later rounds
/// warm-start from the previous partition after dropping infeasible links
/// and re-admitting unserved UEs. Coalitions whose membership changed get
/// an equal power split before moving.
inline VfResult run_vf_optimization(const Scenario& s, const ChannelModel& ch, const FleetState& initial_fleet,
                                    const Association& initial_association, const VfOptions& opt)
{
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

    VfResult res{initial_fleet, initial_association, {}, 0, false};
    auto& fleet = res.fleet;
    auto& assoc = res.association;
    const std::size_t n = fleet.uav_count();
    const double budget = s.system.max_power_watts();
    std::vector<Vec2> velocity(n);

    res.trace.push_back(detail::make_row(0, s, fleet, assoc, ch, 0.0, elapsed()));
    if (opt.observer) opt.observer({0, fleet, assoc, velocity, res.trace.back().total_rate_bps});

    std::size_t calm = 0;
    for (std::size_t t = 1; t <= opt.max_iterations; ++t) {
        if (opt.coalition_game) {
            const CoalitionEvaluator ev(s, fleet, ch);
            CoalitionPartition start_part = assoc;
            if (t == 1) start_part = init_partition(ev);
            else repair_partition(ev, start_part);
            auto game = run_coalition_game(ev, std::move(start_part), s.system.convergence_threshold);
            for (std::size_t i = 0; i < n; ++i)
                if (game.partition.members(i) != assoc.members(i)) set_equal_split(fleet, game.partition, budget, i);
            assoc = std::move(game.partition);
        }

        for (std::size_t i = 0; i < n; ++i) velocity[i] = velocity_map(aggregate_force(i, s, fleet, assoc, ch), s.system);
        double max_speed = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            fleet.positions[i] = update_position(fleet.positions[i], velocity[i], s.system.control_period, s.area);
            max_speed = std::max(max_speed, velocity[i].norm());
        }

        if (opt.power_update) {
            std::vector<double> speed(n);
            for (std::size_t i = 0; i < n; ++i)
                speed[i] = velocity_map(aggregate_force(i, s, fleet, assoc, ch), s.system).norm();
            for (std::size_t i = 0; i < n; ++i) update_power(i, fleet, assoc, speed[i], s.system.power_step, budget);
        }

        res.iterations = t;
        res.trace.push_back(detail::make_row(t, s, fleet, assoc, ch, max_speed, elapsed()));
        if (opt.observer) opt.observer({t, fleet, assoc, velocity, res.trace.back().total_rate_bps});

        calm = max_speed < s.system.convergence_threshold ? calm + 1 : 0;
        if (opt.convergence_window > 0 && calm >= opt.convergence_window) {
            res.converged = true;
            break;
        }
    }

    // The last move can push links below threshold; re-form coalitions at
    // the final positions so the returned association is feasible.
    if (opt.coalition_game && res.iterations > 0) {
        const CoalitionEvaluator ev(s, fleet, ch);
        CoalitionPartition part = assoc;
        repair_partition(ev, part);
        auto game = run_coalition_game(ev, std::move(part), s.system.convergence_threshold);
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (game.partition.members(i) == assoc.members(i)) continue;
            set_equal_split(fleet, game.partition, budget, i);
            changed = true;
        }
        assoc = std::move(game.partition);
        if (changed) {
            auto& last = res.trace.back();
            last = detail::make_row(last.iter, s, fleet, assoc, ch, last.max_speed_mps, elapsed());
        }
    }
    return res;
}

} // namespace uavplan

#endif // UAVPLAN_VFORCE_HPP
