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

#ifndef UAVPLAN_CHANNEL_HPP
#define UAVPLAN_CHANNEL_HPP

#include <uavplan/fleet.hpp>
#include <uavplan/geometry.hpp>
#include <uavplan/scenario.hpp>
#include <uavplan/units.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace uavplan {

struct LinkGeometry
{
    double distance;  // d_{i,k}, m (3D)
    double elevation; // θ_{i,k}, degrees
};

/// Components of the forest air-to-ground loss, all in dB.
struct LinkBudget
{
    double fspl{0.0};
    double distance_term{0.0};
    double shadowing{0.0};
    double slant_loss{0.0};
    double total_loss{0.0};
};

inline LinkGeometry link_geometry(Vec2 uav_xy, double height, Vec2 ue_xy)
{
    if (!(height > 0.0)) throw std::invalid_argument("link_geometry: height must be > 0");
    const double horizontal = distance(uav_xy, ue_xy);
    const double d = std::sqrt(horizontal * horizontal + height * height);
    const double theta = horizontal == 0.0 ? 90.0 : std::atan2(height, horizontal) * 180.0 / std::numbers::pi;
    return {d, theta};
}

/// Free-space loss 20 log10(4π f d / c), f in Hz, d in m.
inline double fspl_db(double frequency_hz, double distance_m)
{
    if (!(frequency_hz > 0.0) || !(distance_m > 0.0)) throw std::invalid_argument("fspl_db: f and d must be > 0");
    return 20.0 * std::log10(4.0 * std::numbers::pi * frequency_hz * distance_m / speed_of_light);
}

/// Forest slant-path excess loss A f^C d^D (θ+E)^G with f in MHz, d in m,
/// θ in degrees.
inline double slant_loss_db(double frequency_hz, double distance_m, double elevation_deg, const SlantParams& sp)
{
    if (!(elevation_deg + sp.E > 0.0)) throw std::domain_error("slant_loss_db: elevation + E must be > 0");
    if (!(distance_m > 0.0)) throw std::invalid_argument("slant_loss_db: d must be > 0");
    const double f_mhz = frequency_hz / 1e6;
    return sp.A * std::pow(f_mhz, sp.C) * std::pow(distance_m, sp.D) * std::pow(elevation_deg + sp.E, sp.G);
}

/// Total loss with the shadowing realization supplied by the caller.
inline LinkBudget path_loss_db(const LinkGeometry& g, const ChannelParams& ch, double shadowing_db)
{
    if (!(g.distance >= ch.reference_distance))
        throw std::invalid_argument("path_loss_db: distance below reference distance");
    LinkBudget b;
    b.fspl = fspl_db(ch.carrier_frequency, g.distance);
    b.distance_term = 10.0 * ch.path_loss_exponent * std::log10(g.distance / ch.reference_distance);
    b.shadowing = shadowing_db;
    b.slant_loss = slant_loss_db(ch.carrier_frequency, g.distance, g.elevation, ch.slant_params);
    b.total_loss = b.fspl + b.distance_term + b.shadowing + b.slant_loss;
    return b;
}

/// Channel power gain |h|^2 = 10^(-L/10) |g|^2.
inline double link_gain(const LinkBudget& b, double small_scale_power = 1.0)
{
    return db_to_linear(-b.total_loss) * small_scale_power;
}

/// γ = p |h|^2 / σ² (linear).
inline double snr(double power_watts, double gain, double noise_watts)
{
    if (power_watts < 0.0 || !(noise_watts > 0.0)) throw std::invalid_argument("snr: need p >= 0 and noise > 0");
    return power_watts * gain / noise_watts;
}

/// R = b log2(1 + γ), bits/s.
inline double link_rate(double bandwidth_hz, double snr_linear)
{
    if (!(bandwidth_hz > 0.0) || snr_linear < 0.0) throw std::invalid_argument("link_rate: need b > 0 and γ >= 0");
    return bandwidth_hz * std::log2(1.0 + snr_linear);
}

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform in (0, 1), a pure function of the key.
inline double keyed_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t stream) noexcept
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ (b + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ (stream * 0x8cb92ba72f3d8dd7ULL));
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace detail

/// Frozen per-run channel realization. Shadowing and small-scale fading are
/// drawn once per (seed, UAV id, UE id) so every evaluation within a run
/// sees the same landscape regardless of evaluation order.
class ChannelModel
{
public:
    ChannelModel(const Scenario& s, std::uint64_t seed)
        : params_(s.channel), altitude_(s.system.flight_height), seed_(seed)
    {
        ues_.reserve(s.ues.size());
        for (const auto& ue : s.ues) ues_.push_back(ue.position);
    }

    std::uint64_t seed() const noexcept { return seed_; }
    double altitude() const noexcept { return altitude_; }
    double noise_watts() const noexcept { return params_.noise_watts(); }
    const ChannelParams& params() const noexcept { return params_; }
    std::size_t ue_count() const noexcept { return ues_.size(); }

    /// X_σ for the (uav, ue) link, N(0, σ_x²) in dB.
    double shadowing_db(std::size_t uav, std::size_t ue) const noexcept
    {
        if (params_.shadowing_stddev == 0.0) return 0.0;
        const double u1 = detail::keyed_uniform(seed_, uav, ue, 0);
        const double u2 = detail::keyed_uniform(seed_, uav, ue, 1);
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        return params_.shadowing_stddev * z;
    }

    /// |g|^2 for the (uav, ue) link.
    double fading_power(std::size_t uav, std::size_t ue) const noexcept
    {
        if (params_.small_scale_fading == SmallScaleFading::none) return 1.0;
        return -std::log(detail::keyed_uniform(seed_, uav, ue, 2));
    }

    LinkBudget budget(Vec2 uav_xy, std::size_t uav, std::size_t ue) const
    {
        return path_loss_db(link_geometry(uav_xy, altitude_, ues_.at(ue)), params_, shadowing_db(uav, ue));
    }

    double gain(Vec2 uav_xy, std::size_t uav, std::size_t ue) const
    {
        return link_gain(budget(uav_xy, uav, ue), fading_power(uav, ue));
    }

    /// |h_{i,k}|^2 for every UAV in positions against every UE.
    Matrix gain_table(std::span<const Vec2> positions) const
    {
        Matrix g(positions.size(), ues_.size());
        for (std::size_t i = 0; i < positions.size(); ++i)
            for (std::size_t k = 0; k < ues_.size(); ++k) g(i, k) = gain(positions[i], i, k);
        return g;
    }

private:
    ChannelParams params_;
    double altitude_;
    std::uint64_t seed_;
    std::vector<Vec2> ues_;
};

/// Per-link rate with the FDMA equal bandwidth split b_k = B / |s_i|.
inline double associated_link_rate(const Scenario& s, const FleetState& fleet, const Association& assoc,
                                   const ChannelModel& ch, std::size_t uav, std::size_t ue)
{
    const double b = s.system.uav_bandwidth / static_cast<double>(assoc.load(uav));
    const double gamma = snr(fleet.powers(uav, ue), ch.gain(fleet.positions[uav], uav, ue), ch.noise_watts());
    return link_rate(b, gamma);
}

/// Objective: Σ_i Σ_k c_{i,k} R_{i,k}.
inline double total_rate(const Scenario& s, const FleetState& fleet, const Association& assoc, const ChannelModel& ch)
{
    double total = 0.0;
    for (std::size_t i = 0; i < fleet.uav_count(); ++i)
        for (auto k : assoc.members(i)) total += associated_link_rate(s, fleet, assoc, ch, i, k);
    return total;
}

inline double total_rate(const Scenario& s, const FleetState& fleet, const Association& assoc,
                         std::uint64_t fading_seed)
{
    return total_rate(s, fleet, assoc, ChannelModel(s, fading_seed));
}

/// Received SNR on the associated link of every UE (0 when unassociated).
inline std::vector<double> ue_snrs(const Scenario& s, const FleetState& fleet, const Association& assoc,
                                   const ChannelModel& ch)
{
    std::vector<double> out(s.ues.size(), 0.0);
    for (std::size_t i = 0; i < fleet.uav_count(); ++i)
        for (auto k : assoc.members(i))
            out[k] = snr(fleet.powers(i, k), ch.gain(fleet.positions[i], i, k), ch.noise_watts());
    return out;
}

/// Fraction of UEs that are associated and meet their SNR threshold.
inline double coverage(const Scenario& s, const FleetState& fleet, const Association& assoc, const ChannelModel& ch)
{
    const auto g = ue_snrs(s, fleet, assoc, ch);
    std::size_t ok = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (assoc.serving(k) && g[k] >= db_to_linear(s.ues[k].snr_threshold)) ++ok;
    return static_cast<double>(ok) / static_cast<double>(s.ues.size());
}

} // namespace uavplan

#endif // UAVPLAN_CHANNEL_HPP
