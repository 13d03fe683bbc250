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

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

namespace uavplan {
namespace {

TEST(Scenario, MinimalFileParses)
{
    const auto s = parse_scenario(R"(
[area]
width = 10000.0
height = 10000.0

[[ues]]
id = 0
position = [0.0, 0.0]
)");
    EXPECT_EQ(s.ue_count(), 1u);
    EXPECT_EQ(s.ues[0].position, (Vec2{0.0, 0.0}));
    EXPECT_DOUBLE_EQ(s.ues[0].snr_threshold, -5.0);
}

TEST(Scenario, UeOutsideAreaIsRejected)
{
    try {
        parse_scenario("[[ues]]\nid = 0\nposition = [-5.0, 10.0]\n");
        FAIL() << "expected validation_error";
    } catch (const validation_error& e) {
        EXPECT_NE(std::string(e.what()).find("UE outside area"), std::string::npos);
    }
}

TEST(Scenario, UnknownKeyReportsLine)
{
    try {
        parse_scenario("[area]\nwidth = 100.0\ndepth = 3.0\n\n[[ues]]\nid = 0\nposition = [1.0, 1.0]\n");
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("depth"), std::string::npos);
        EXPECT_NE(what.find("line 3"), std::string::npos);
    }
}

TEST(Scenario, SyntaxErrorIsParseError)
{
    EXPECT_THROW(parse_scenario("[area\nwidth = 1"), parse_error);
}

TEST(Scenario, MissingUesIsRejected)
{
    EXPECT_THROW(parse_scenario("[area]\nwidth = 100.0\n"), error);
}

TEST(Scenario, DefaultsMatchReferenceSetup)
{
    const Scenario s;
    EXPECT_DOUBLE_EQ(s.area.width, 10000.0);
    EXPECT_DOUBLE_EQ(s.area.height, 10000.0);
    EXPECT_DOUBLE_EQ(s.system.flight_height, 200.0);
    EXPECT_DOUBLE_EQ(s.system.uav_max_power, 38.0);
    EXPECT_DOUBLE_EQ(s.system.uav_bandwidth, 2e6);
    EXPECT_DOUBLE_EQ(s.channel.carrier_frequency, 1.4e9);
    EXPECT_DOUBLE_EQ(s.channel.noise_power, -130.0);
    EXPECT_DOUBLE_EQ(s.channel.slant_params.A, 0.25);
    EXPECT_DOUBLE_EQ(s.channel.slant_params.C, 0.39);
    EXPECT_DOUBLE_EQ(s.channel.slant_params.D, 0.25);
    EXPECT_DOUBLE_EQ(s.channel.slant_params.E, 0.0);
    EXPECT_DOUBLE_EQ(s.channel.slant_params.G, 0.05);
    EXPECT_DOUBLE_EQ(s.channel.path_loss_exponent, 3.5);
    EXPECT_DOUBLE_EQ(s.channel.shadowing_stddev, 6.0);
    EXPECT_DOUBLE_EQ(s.channel.reference_distance, 1.0);
    EXPECT_DOUBLE_EQ(s.system.attraction_factor, 1000.0);
    EXPECT_DOUBLE_EQ(s.system.repulsion_factor, 300.0);
    EXPECT_DOUBLE_EQ(s.system.convergence_threshold, 1e-4);
    EXPECT_NEAR(s.system.max_power_watts(), 6.30957344480193, 1e-12);
}

TEST(Scenario, ReferenceFileMatchesDefaults)
{
    const auto s = load_scenario(std::filesystem::path(UAVPLAN_SOURCE_DIR) / "scenarios" / "reference.toml");
    EXPECT_EQ(s.ue_count(), 50u);
    EXPECT_EQ(s.obstacles.size(), 3u);
    EXPECT_EQ(s.channel, ChannelParams{});
    EXPECT_EQ(s.system, SystemParams{});
    EXPECT_EQ(s.area, AreaSpec{});
}

TEST(Scenario, GeneratorIsDeterministic)
{
    EXPECT_EQ(generate_random_scenario(7, 50, 3), generate_random_scenario(7, 50, 3));
    EXPECT_NE(generate_random_scenario(7, 50, 3), generate_random_scenario(8, 50, 3));
}

TEST(Scenario, GeneratorRejectsEmptyInstance)
{
    EXPECT_THROW(generate_random_scenario(7, 0, 0), std::invalid_argument);
}

TEST(Scenario, GeneratedPointsInsideArea)
{
    const auto s = generate_random_scenario(7, 50, 3);
    ASSERT_EQ(s.ue_count(), 50u);
    for (const auto& ue : s.ues) {
        EXPECT_GE(ue.position.x, 0.0);
        EXPECT_LE(ue.position.x, 10000.0);
        EXPECT_GE(ue.position.y, 0.0);
        EXPECT_LE(ue.position.y, 10000.0);
    }
}

TEST(Scenario, GeneratedObstaclesAvoidUesAndEachOther)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto s = generate_random_scenario(seed, 50, 5);
        ASSERT_EQ(s.obstacles.size(), 5u);
        for (const auto& ob : s.obstacles) {
            for (const auto& ue : s.ues) EXPECT_GT(distance(ue.position, ob.center), ob.radius);
            for (const auto& other : s.obstacles)
                if (other.id != ob.id) {
                    EXPECT_GT(distance(other.center, ob.center), ob.radius + other.radius);
                }
        }
    }
}

TEST(Scenario, SerializeRoundTrips)
{
    auto params = reference_params();
    params.channel.small_scale_fading = SmallScaleFading::rayleigh;
    params.channel.path_loss_exponent = 0.8125;
    const auto s = generate_random_scenario(11, 17, 4, params);
    EXPECT_EQ(parse_scenario(serialize_scenario(s)), s);
}

TEST(Scenario, SaveAndLoad)
{
    const auto path = std::filesystem::temp_directory_path() / "uavplan_test_scenario.toml";
    const auto s = generate_random_scenario(3, 9, 2);
    save_scenario(s, path);
    EXPECT_EQ(load_scenario(path), s);
    std::filesystem::remove(path);
}

TEST(Scenario, MissingFileIsError)
{
    EXPECT_THROW(load_scenario("/nonexistent/uavplan.toml"), error);
}

TEST(Format, ShortestRoundTrip)
{
    EXPECT_EQ(format_double(1.0), "1.0");
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1e-4), "1e-04");
    EXPECT_EQ(format_double(-2.5), "-2.5");
    EXPECT_EQ(format_fixed(0.1234567, 6), "0.123457");
}

TEST(Units, Conversions)
{
    EXPECT_DOUBLE_EQ(db_to_linear(10.0), 10.0);
    EXPECT_DOUBLE_EQ(linear_to_db(100.0), 20.0);
    EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
    EXPECT_NEAR(dbm_to_watts(-130.0), 1e-16, 1e-30);
    EXPECT_DOUBLE_EQ(watts_to_dbm(1.0), 30.0);
}

} // namespace
} // namespace uavplan
