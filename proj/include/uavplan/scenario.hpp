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

#ifndef UAVPLAN_SCENARIO_HPP
#define UAVPLAN_SCENARIO_HPP

#include <uavplan/errors.hpp>
#include <uavplan/geometry.hpp>
#include <uavplan/units.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavplan {

struct AreaSpec
{
    double width{10000.0};  // Λx, m
    double height{10000.0}; // Λy, m

    bool contains(Vec2 p) const noexcept
    {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }

    Vec2 clamp(Vec2 p) const noexcept
    {
        return {std::clamp(p.x, 0.0, width), std::clamp(p.y, 0.0, height)};
    }

    friend bool operator==(const AreaSpec&, const AreaSpec&) = default;
};

struct UePoint
{
    std::size_t id{0};
    Vec2 position;
    double snr_threshold{-5.0}; // γ_k^th, dB

    friend bool operator==(const UePoint&, const UePoint&) = default;
};

/// Vertical cylinder footprint: a disc that UAVs keep clear of.
struct Obstacle
{
    std::size_t id{0};
    Vec2 center;
    double radius{100.0}; // m

    friend bool operator==(const Obstacle&, const Obstacle&) = default;
};

/// Empirical forest slant-path coefficients, L = A f^C d^D (θ+E)^G.
struct SlantParams
{
    double A{0.25};
    double C{0.39};
    double D{0.25};
    double E{0.0};
    double G{0.05};

    friend bool operator==(const SlantParams&, const SlantParams&) = default;
};

enum class SmallScaleFading
{
    none,     // |g|^2 = 1
    rayleigh, // |g|^2 ~ Exp(1)
};

struct ChannelParams
{
    double carrier_frequency{1.4e9};  // Hz
    double path_loss_exponent{3.5};   // α
    double shadowing_stddev{6.0};     // σ_x, dB
    double reference_distance{1.0};   // d0, m
    SlantParams slant_params;
    double noise_power{-130.0};       // σ², dBm
    SmallScaleFading small_scale_fading{SmallScaleFading::none};

    double noise_watts() const noexcept { return dbm_to_watts(noise_power); }

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

struct SystemParams
{
    double uav_bandwidth{2.0e6};            // B_i, Hz
    double uav_max_power{38.0};             // P_i, dBm
    double flight_height{200.0};            // h, m
    double max_velocity{20.0};              // v_max, m/s
    double control_period{1.0};             // Δt, s
    double virtual_mass{1.0};               // m_i
    double attraction_factor{1000.0};       // λ_a
    double repulsion_factor{300.0};         // λ_r
    double attraction_snr_threshold{-5.0};  // γ̄^a, dB
    double uav_safety_distance{500.0};      // d̄^r, m
    double obstacle_safety_distance{100.0}; // d̄^o, m
    double convergence_threshold{1e-4};     // ε
    std::size_t max_iterations{500};        // T
    std::size_t initial_cluster_count{1};   // N_0
    double power_step{0.01};                // η, W per m/s of speed

    double max_power_watts() const noexcept { return dbm_to_watts(uav_max_power); }

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct Scenario
{
    AreaSpec area;
    ChannelParams channel;
    SystemParams system;
    std::vector<UePoint> ues;
    std::vector<Obstacle> obstacles;

    std::size_t ue_count() const noexcept { return ues.size(); }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

namespace detail {

inline void require(bool cond, const std::string& what)
{
    if (!cond) throw validation_error(what);
}

} // namespace detail

/// Throws validation_error naming the first violated invariant.
inline void validate(const Scenario& s)
{
    using detail::require;
    require(std::isfinite(s.area.width) && s.area.width > 0.0, "area width must be > 0");
    require(std::isfinite(s.area.height) && s.area.height > 0.0, "area height must be > 0");

    const auto& ch = s.channel;
    require(ch.carrier_frequency > 0.0, "carrier_frequency must be > 0");
    require(ch.reference_distance > 0.0, "reference_distance must be > 0");
    require(ch.shadowing_stddev >= 0.0, "shadowing_stddev must be >= 0");
    require(std::isfinite(ch.noise_power), "noise_power must be finite");
    require(std::isfinite(ch.path_loss_exponent), "path_loss_exponent must be finite");

    const auto& sy = s.system;
    require(sy.uav_bandwidth > 0.0, "uav_bandwidth must be > 0");
    require(std::isfinite(sy.uav_max_power), "uav_max_power must be finite");
    require(sy.flight_height > 0.0, "flight_height must be > 0");
    require(sy.max_velocity > 0.0, "max_velocity must be > 0");
    require(sy.control_period > 0.0, "control_period must be > 0");
    require(sy.virtual_mass == 1.0, "virtual_mass must be 1");
    require(sy.attraction_factor >= 0.0, "attraction_factor must be >= 0");
    require(sy.repulsion_factor >= 0.0, "repulsion_factor must be >= 0");
    require(std::isfinite(sy.attraction_snr_threshold), "attraction_snr_threshold must be finite");
    require(sy.uav_safety_distance > 0.0, "uav_safety_distance must be > 0");
    require(sy.obstacle_safety_distance > 0.0, "obstacle_safety_distance must be > 0");
    require(sy.convergence_threshold > 0.0, "convergence_threshold must be > 0");
    require(sy.initial_cluster_count >= 1, "initial_cluster_count must be >= 1");
    require(sy.power_step >= 0.0, "power_step must be >= 0");

    require(!s.ues.empty(), "scenario needs at least one UE");
    for (std::size_t k = 0; k < s.ues.size(); ++k) {
        const auto& ue = s.ues[k];
        require(ue.id == k, "UE ids must be 0..M-1 in file order");
        require(s.area.contains(ue.position), "UE outside area (id " + std::to_string(ue.id) + ")");
        require(std::isfinite(ue.snr_threshold), "UE snr_threshold must be finite");
    }
    for (std::size_t q = 0; q < s.obstacles.size(); ++q) {
        const auto& ob = s.obstacles[q];
        require(ob.id == q, "obstacle ids must be 0..Q-1 in file order");
        require(ob.radius > 0.0, "obstacle radius must be > 0");
        const bool inside = ob.center.x - ob.radius >= 0.0 && ob.center.x + ob.radius <= s.area.width
                            && ob.center.y - ob.radius >= 0.0 && ob.center.y + ob.radius <= s.area.height;
        require(inside, "obstacle outside area (id " + std::to_string(ob.id) + ")");
    }
}

/// Inputs to the random instance generator other than seed and counts.
struct GeneratorParams
{
    AreaSpec area;
    ChannelParams channel;
    SystemParams system;
    double ue_snr_threshold{-5.0}; // dB, shared by every generated UE
    double obstacle_radius_min{100.0};
    double obstacle_radius_max{400.0};
};

/// Reference parameter set: 10 km square, h = 200 m, 38 dBm, 2 MHz,
/// -5 dB thresholds, 1.4 GHz forest channel.
inline GeneratorParams reference_params() { return {}; }

/// Uniform i.i.d. UEs; obstacle discs placed by rejection so that no UE
/// falls inside one and discs do not overlap each other.
inline Scenario generate_random_scenario(std::uint64_t seed, std::size_t ue_count, std::size_t obstacle_count,
                                         const GeneratorParams& params = reference_params())
{
    if (ue_count < 1) throw std::invalid_argument("generate_random_scenario: ue_count must be >= 1");
    if (params.obstacle_radius_min <= 0.0 || params.obstacle_radius_max < params.obstacle_radius_min)
        throw std::invalid_argument("generate_random_scenario: bad obstacle radius range");

    Scenario s;
    s.area = params.area;
    s.channel = params.channel;
    s.system = params.system;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, s.area.width);
    std::uniform_real_distribution<double> uy(0.0, s.area.height);
    s.ues.reserve(ue_count);
    for (std::size_t k = 0; k < ue_count; ++k)
        s.ues.push_back({k, {ux(rng), uy(rng)}, params.ue_snr_threshold});

    std::uniform_real_distribution<double> ur(params.obstacle_radius_min, params.obstacle_radius_max);
    constexpr int max_attempts = 10000;
    for (std::size_t q = 0; q < obstacle_count; ++q) {
        bool placed = false;
        for (int attempt = 0; attempt < max_attempts && !placed; ++attempt) {
            const double r = ur(rng);
            if (2.0 * r > s.area.width || 2.0 * r > s.area.height) continue;
            std::uniform_real_distribution<double> cx(r, s.area.width - r);
            std::uniform_real_distribution<double> cy(r, s.area.height - r);
            const Vec2 c{cx(rng), cy(rng)};
            bool clear = true;
            for (const auto& ue : s.ues)
                if (distance(ue.position, c) <= r) { clear = false; break; }
            for (const auto& ob : s.obstacles)
                if (distance(ob.center, c) <= r + ob.radius) { clear = false; break; }
            if (clear) {
                s.obstacles.push_back({q, c, r});
                placed = true;
            }
        }
        if (!placed)
            throw std::invalid_argument("generate_random_scenario: cannot place obstacle " + std::to_string(q));
    }
    validate(s);
    return s;
}

} // namespace uavplan

#endif // UAVPLAN_SCENARIO_HPP
