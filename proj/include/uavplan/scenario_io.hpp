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

#ifndef UAVPLAN_SCENARIO_IO_HPP
#define UAVPLAN_SCENARIO_IO_HPP

#include <uavplan/errors.hpp>
#include <uavplan/format.hpp>
#include <uavplan/scenario.hpp>

#include <toml.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

// Scenario files are TOML:
//
//   [area]                    width, height (m)
//   [channel]                 carrier_frequency (Hz), path_loss_exponent,
//                             shadowing_stddev (dB), reference_distance (m),
//                             noise_power (dBm), small_scale_fading ("none" | "rayleigh")
//   [channel.slant_params]    A, C, D, E, G
//   [system]                  every SystemParams field by name
//   [[ues]]                   id, position = [x, y], snr_threshold (dB)
//   [[obstacles]]             id, center = [x, y], radius (m)
//
// Missing keys take the reference defaults; unknown keys are rejected.

namespace uavplan {

namespace detail {

inline std::string where(const toml::node& n)
{
    const auto& src = n.source();
    return " (line " + std::to_string(src.begin.line) + ")";
}

inline double read_double(const toml::node& n, const std::string& key)
{
    if (auto v = n.value<double>()) return *v; // integers convert too
    throw parse_error("key '" + key + "' must be a number" + where(n));
}

inline std::size_t read_count(const toml::node& n, const std::string& key)
{
    auto v = n.value<std::int64_t>();
    if (!v || *v < 0) throw parse_error("key '" + key + "' must be a non-negative integer" + where(n));
    return static_cast<std::size_t>(*v);
}

inline Vec2 read_point(const toml::node& n, const std::string& key)
{
    const auto* arr = n.as_array();
    if (!arr || arr->size() != 2) throw parse_error("key '" + key + "' must be a 2-element array [x, y]" + where(n));
    return {read_double(*arr->get(0), key), read_double(*arr->get(1), key)};
}

using field_setter = std::function<void(const toml::node&, const std::string&)>;

inline void read_table(const toml::table& tbl, const std::string& section,
                       const std::map<std::string, field_setter, std::less<>>& fields)
{
    for (const auto& [k, node] : tbl) {
        const std::string key(k.str());
        auto it = fields.find(key);
        if (it == fields.end()) throw parse_error("unknown key '" + key + "' in [" + section + "]" + where(node));
        it->second(node, key);
    }
}

inline const toml::table& as_table(const toml::node& n, const std::string& section)
{
    const auto* t = n.as_table();
    if (!t) throw parse_error("[" + section + "] must be a table" + where(n));
    return *t;
}

inline field_setter set_double(double& out)
{
    return [&out](const toml::node& n, const std::string& k) { out = read_double(n, k); };
}

inline field_setter set_count(std::size_t& out)
{
    return [&out](const toml::node& n, const std::string& k) { out = read_count(n, k); };
}

inline void read_channel(const toml::table& tbl, ChannelParams& ch)
{
    read_table(tbl, "channel",
               {{"carrier_frequency", set_double(ch.carrier_frequency)},
                {"path_loss_exponent", set_double(ch.path_loss_exponent)},
                {"shadowing_stddev", set_double(ch.shadowing_stddev)},
                {"reference_distance", set_double(ch.reference_distance)},
                {"noise_power", set_double(ch.noise_power)},
                {"small_scale_fading",
                 [&ch](const toml::node& n, const std::string& k) {
                     const auto v = n.value<std::string>();
                     if (v == "none") ch.small_scale_fading = SmallScaleFading::none;
                     else if (v == "rayleigh") ch.small_scale_fading = SmallScaleFading::rayleigh;
                     else throw parse_error("key '" + k + "' must be \"none\" or \"rayleigh\"" + where(n));
                 }},
                {"slant_params", [&ch](const toml::node& n, const std::string&) {
                     auto& sp = ch.slant_params;
                     read_table(as_table(n, "channel.slant_params"), "channel.slant_params",
                                {{"A", set_double(sp.A)},
                                 {"C", set_double(sp.C)},
                                 {"D", set_double(sp.D)},
                                 {"E", set_double(sp.E)},
                                 {"G", set_double(sp.G)}});
                 }}});
}

inline void read_system(const toml::table& tbl, SystemParams& sy)
{
    read_table(tbl, "system",
               {{"uav_bandwidth", set_double(sy.uav_bandwidth)},
                {"uav_max_power", set_double(sy.uav_max_power)},
                {"flight_height", set_double(sy.flight_height)},
                {"max_velocity", set_double(sy.max_velocity)},
                {"control_period", set_double(sy.control_period)},
                {"virtual_mass", set_double(sy.virtual_mass)},
                {"attraction_factor", set_double(sy.attraction_factor)},
                {"repulsion_factor", set_double(sy.repulsion_factor)},
                {"attraction_snr_threshold", set_double(sy.attraction_snr_threshold)},
                {"uav_safety_distance", set_double(sy.uav_safety_distance)},
                {"obstacle_safety_distance", set_double(sy.obstacle_safety_distance)},
                {"convergence_threshold", set_double(sy.convergence_threshold)},
                {"max_iterations", set_count(sy.max_iterations)},
                {"initial_cluster_count", set_count(sy.initial_cluster_count)},
                {"power_step", set_double(sy.power_step)}});
}

template <class Fn>
void for_each_entry(const toml::node& n, const std::string& section, Fn&& fn)
{
    const auto* arr = n.as_array();
    if (!arr) throw parse_error("[[" + section + "]] must be an array of tables" + where(n));
    for (std::size_t i = 0; i < arr->size(); ++i) fn(as_table(*arr->get(i), section), i);
}

} // namespace detail

/// Parses and validates scenario TOML text.
inline Scenario parse_scenario(std::string_view text, std::string_view source_name = "<string>")
{
    toml::table root;
    try {
        root = toml::parse(text, source_name);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << e.description() << " (line " << e.source().begin.line << ")";
        throw parse_error(os.str());
    }

    Scenario s;
    bool saw_ues = false;
    for (const auto& [k, node] : root) {
        const std::string key(k.str());
        if (key == "area") {
            detail::read_table(detail::as_table(node, key), key,
                               {{"width", detail::set_double(s.area.width)},
                                {"height", detail::set_double(s.area.height)}});
        } else if (key == "channel") {
            detail::read_channel(detail::as_table(node, key), s.channel);
        } else if (key == "system") {
            detail::read_system(detail::as_table(node, key), s.system);
        } else if (key == "ues") {
            saw_ues = true;
            detail::for_each_entry(node, key, [&s](const toml::table& t, std::size_t idx) {
                UePoint ue{idx, {}, -5.0};
                bool has_pos = false;
                detail::read_table(t, "ues",
                                   {{"id", detail::set_count(ue.id)},
                                    {"position",
                                     [&](const toml::node& n, const std::string& kk) {
                                         ue.position = detail::read_point(n, kk);
                                         has_pos = true;
                                     }},
                                    {"snr_threshold", detail::set_double(ue.snr_threshold)}});
                if (!has_pos) throw parse_error("UE entry " + std::to_string(idx) + " lacks 'position'");
                s.ues.push_back(ue);
            });
        } else if (key == "obstacles") {
            detail::for_each_entry(node, key, [&s](const toml::table& t, std::size_t idx) {
                Obstacle ob{idx, {}, 0.0};
                bool has_center = false;
                detail::read_table(t, "obstacles",
                                   {{"id", detail::set_count(ob.id)},
                                    {"center",
                                     [&](const toml::node& n, const std::string& kk) {
                                         ob.center = detail::read_point(n, kk);
                                         has_center = true;
                                     }},
                                    {"radius", detail::set_double(ob.radius)}});
                if (!has_center) throw parse_error("obstacle entry " + std::to_string(idx) + " lacks 'center'");
                s.obstacles.push_back(ob);
            });
        } else {
            throw parse_error("unknown section '" + key + "'" + detail::where(node));
        }
    }
    if (!saw_ues) throw parse_error("scenario has no [[ues]] entries");
    validate(s);
    return s;
}

inline Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

inline std::string serialize_scenario(const Scenario& s)
{
    using uavplan::format_double;
    std::ostringstream os;
    auto kv = [&os](std::string_view k, double v) { os << k << " = " << format_double(v) << '\n'; };
    auto point = [](Vec2 p) { return "[" + format_double(p.x) + ", " + format_double(p.y) + "]"; };

    os << "[area]\n";
    kv("width", s.area.width);
    kv("height", s.area.height);

    const auto& ch = s.channel;
    os << "\n[channel]\n";
    kv("carrier_frequency", ch.carrier_frequency);
    kv("path_loss_exponent", ch.path_loss_exponent);
    kv("shadowing_stddev", ch.shadowing_stddev);
    kv("reference_distance", ch.reference_distance);
    kv("noise_power", ch.noise_power);
    os << "small_scale_fading = \"" << (ch.small_scale_fading == SmallScaleFading::none ? "none" : "rayleigh")
       << "\"\n";
    os << "\n[channel.slant_params]\n";
    kv("A", ch.slant_params.A);
    kv("C", ch.slant_params.C);
    kv("D", ch.slant_params.D);
    kv("E", ch.slant_params.E);
    kv("G", ch.slant_params.G);

    const auto& sy = s.system;
    os << "\n[system]\n";
    kv("uav_bandwidth", sy.uav_bandwidth);
    kv("uav_max_power", sy.uav_max_power);
    kv("flight_height", sy.flight_height);
    kv("max_velocity", sy.max_velocity);
    kv("control_period", sy.control_period);
    kv("virtual_mass", sy.virtual_mass);
    kv("attraction_factor", sy.attraction_factor);
    kv("repulsion_factor", sy.repulsion_factor);
    kv("attraction_snr_threshold", sy.attraction_snr_threshold);
    kv("uav_safety_distance", sy.uav_safety_distance);
    kv("obstacle_safety_distance", sy.obstacle_safety_distance);
    kv("convergence_threshold", sy.convergence_threshold);
    os << "max_iterations = " << sy.max_iterations << '\n';
    os << "initial_cluster_count = " << sy.initial_cluster_count << '\n';
    kv("power_step", sy.power_step);

    for (const auto& ue : s.ues) {
        os << "\n[[ues]]\nid = " << ue.id << "\nposition = " << point(ue.position) << '\n';
        kv("snr_threshold", ue.snr_threshold);
    }
    for (const auto& ob : s.obstacles) {
        os << "\n[[obstacles]]\nid = " << ob.id << "\ncenter = " << point(ob.center) << '\n';
        kv("radius", ob.radius);
    }
    return os.str();
}

inline void save_scenario(const Scenario& s, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write scenario file '" + path.string() + "'");
    out << serialize_scenario(s);
}

} // namespace uavplan

#endif // UAVPLAN_SCENARIO_IO_HPP
