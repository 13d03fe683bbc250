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

#include "oracle_table.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

namespace uavplan {
namespace {

constexpr double tol_db = 1e-9;

TEST(LinkGeometry, DirectlyAbove)
{
    const auto g = link_geometry({100.0, 100.0}, 200.0, {100.0, 100.0});
    EXPECT_DOUBLE_EQ(g.distance, 200.0);
    EXPECT_DOUBLE_EQ(g.elevation, 90.0);
}

TEST(LinkGeometry, FortyFiveDegrees)
{
    const auto g = link_geometry({0.0, 0.0}, 200.0, {200.0, 0.0});
    EXPECT_NEAR(g.distance, 200.0 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(g.elevation, 45.0, 1e-12);
}

TEST(LinkGeometry, ThousandMetreOffset)
{
    const auto g = link_geometry({0.0, 0.0}, 200.0, {0.0, 1000.0});
    EXPECT_NEAR(g.distance, 1019.80390271855697, 1e-9);
    EXPECT_NEAR(g.elevation, 11.3099324740202131, 1e-12);
}

TEST(LinkGeometry, RejectsNonPositiveHeight)
{
    EXPECT_THROW(link_geometry({}, 0.0, {}), std::invalid_argument);
}

TEST(Fspl, OneMetre) { EXPECT_NEAR(fspl_db(1.4e9, 1.0), 35.3703439354481343, tol_db); }

TEST(Fspl, TwoHundredMetres) { EXPECT_NEAR(fspl_db(1.4e9, 200.0), 81.3909438487277582, tol_db); }

TEST(Fspl, DoublingDistanceAddsSixDb)
{
    for (double d : {1.0, 37.0, 200.0, 9000.0})
        EXPECT_NEAR(fspl_db(1.4e9, 2.0 * d) - fspl_db(1.4e9, d), 20.0 * std::log10(2.0), tol_db);
}

TEST(Fspl, RejectsNonPositiveInputs)
{
    EXPECT_THROW(fspl_db(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(fspl_db(1.4e9, 0.0), std::invalid_argument);
}

TEST(SlantLoss, ZeroCoefficient)
{
    EXPECT_EQ(slant_loss_db(1.4e9, 200.0, 90.0, {0.0, 0.39, 0.25, 0.0, 0.05}), 0.0);
    EXPECT_EQ(slant_loss_db(3e9, 7000.0, 12.0, {0.0, 0.5, 0.5, 3.0, 0.2}), 0.0);
}

TEST(SlantLoss, ReferenceValue)
{
    EXPECT_NEAR(slant_loss_db(1.4e9, 200.0, 90.0, SlantParams{}), 19.8563567491399602, tol_db);
}

TEST(SlantLoss, ZeroExponentIgnoresElevation)
{
    const SlantParams sp{0.25, 0.39, 0.25, 0.0, 0.0};
    EXPECT_EQ(slant_loss_db(1.4e9, 500.0, 10.0, sp), slant_loss_db(1.4e9, 500.0, 80.0, sp));
}

TEST(SlantLoss, NonPositiveBaseIsDomainError)
{
    EXPECT_THROW(slant_loss_db(1.4e9, 200.0, 0.0, SlantParams{}), std::domain_error);
    EXPECT_THROW(slant_loss_db(1.4e9, 200.0, 5.0, {0.25, 0.39, 0.25, -5.0, 0.05}), std::domain_error);
}

TEST(PathLoss, DegenerateParametersGiveFspl)
{
    ChannelParams ch;
    ch.path_loss_exponent = 0.0;
    ch.slant_params.A = 0.0;
    const LinkGeometry g{350.0, 30.0};
    EXPECT_EQ(path_loss_db(g, ch, 0.0).total_loss, fspl_db(1.4e9, 350.0));
}

TEST(PathLoss, ReferenceValue)
{
    const auto b = path_loss_db({200.0, 90.0}, ChannelParams{}, 0.0);
    EXPECT_NEAR(b.total_loss, 181.783350446107060, tol_db);
    EXPECT_NEAR(link_gain(b), 6.63231210848134e-19, 1e-30);
}

TEST(PathLoss, ShadowingIsAdditive)
{
    const ChannelParams ch;
    const LinkGeometry g{1019.8, 11.3};
    EXPECT_NEAR(path_loss_db(g, ch, 6.0).total_loss - path_loss_db(g, ch, -6.0).total_loss, 12.0, tol_db);
}

TEST(PathLoss, BelowReferenceDistanceRejected)
{
    ChannelParams ch;
    ch.reference_distance = 10.0;
    EXPECT_THROW(path_loss_db({5.0, 90.0}, ch, 0.0), std::invalid_argument);
}

TEST(PathLoss, MatchesHighPrecisionOracle)
{
    const auto rows = testing::load_channel_oracle(std::filesystem::path(UAVPLAN_SOURCE_DIR) / "tests" / "data"
                                                   / "channel_oracle.csv");
    ASSERT_EQ(rows.size(), 100u);
    for (const auto& r : rows) {
        ChannelParams ch;
        ch.carrier_frequency = r.frequency;
        ch.path_loss_exponent = r.alpha;
        ch.reference_distance = r.reference_distance;
        ch.slant_params = r.slant;
        EXPECT_NEAR(fspl_db(r.frequency, r.distance), r.fspl, tol_db);
        EXPECT_NEAR(slant_loss_db(r.frequency, r.distance, r.elevation, r.slant), r.slant_loss, tol_db);
        EXPECT_NEAR(path_loss_db({r.distance, r.elevation}, ch, r.shadowing).total_loss, r.total, tol_db);
    }
}

TEST(LinkGain, Identities)
{
    EXPECT_DOUBLE_EQ(link_gain({0, 0, 0, 0, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(link_gain({0, 0, 0, 0, 10.0}), 0.1);
    EXPECT_NEAR(link_gain({0, 0, 0, 0, 181.7}), std::pow(10.0, -18.17), 1e-31);
    EXPECT_DOUBLE_EQ(link_gain({0, 0, 0, 0, 10.0}, 2.0), 0.2);
}

TEST(Snr, Examples)
{
    EXPECT_EQ(snr(0.0, 1e-10, 1e-13), 0.0);
    EXPECT_NEAR(snr(1.0, 1e-10, 1e-13), 1000.0, 1e-9);
    EXPECT_DOUBLE_EQ(snr(2.0, 1e-10, 1e-13), 2.0 * snr(1.0, 1e-10, 1e-13));
    EXPECT_THROW(snr(-1.0, 1e-10, 1e-13), std::invalid_argument);
    EXPECT_THROW(snr(1.0, 1e-10, 0.0), std::invalid_argument);
}

TEST(Rate, Examples)
{
    EXPECT_EQ(link_rate(1e6, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(link_rate(0.5e6, 3.0), 1e6);
    EXPECT_THROW(link_rate(0.0, 1.0), std::invalid_argument);
}

// 4 UEs at γ = 3 on one UAV with B = 2 MHz: 1 Mbps each.
TEST(Rate, EqualSplitOverCoalition)
{
    auto s = testing::make_scenario({{5000, 5000}, {5000, 5000}, {5000, 5000}, {5000, 5000}});
    const ChannelModel ch(s, 1);
    FleetState fleet({{5000, 5000}}, 200.0, 4);
    Association assoc(1, 4);
    const double g = ch.gain({5000, 5000}, 0, 0);
    for (std::size_t k = 0; k < 4; ++k) {
        assoc.assign(k, 0);
        fleet.powers(0, k) = 3.0 * ch.noise_watts() / g;
    }
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(associated_link_rate(s, fleet, assoc, ch, 0, k), 1e6, 1e-6);
    EXPECT_NEAR(total_rate(s, fleet, assoc, ch), 4e6, 1e-5);
}

TEST(Rate, TotalRateReductions)
{
    auto s = testing::make_scenario({{1000, 1000}, {3000, 2000}});
    const ChannelModel ch(s, 4);
    FleetState fleet({{1200, 900}, {2800, 2500}}, 200.0, 2);
    Association assoc(2, 2);
    EXPECT_EQ(total_rate(s, fleet, assoc, ch), 0.0);

    assoc.assign(0, 0);
    fleet.powers(0, 0) = 2.0;
    const double single = link_rate(2e6, snr(2.0, ch.gain({1200, 900}, 0, 0), ch.noise_watts()));
    EXPECT_DOUBLE_EQ(total_rate(s, fleet, assoc, ch), single);

    // 2x2 hand sum: both UEs on UAV 1 share its bandwidth.
    assoc.assign(0, 1);
    assoc.assign(1, 1);
    fleet.powers(0, 0) = 0.0;
    fleet.powers(1, 0) = 1.5;
    fleet.powers(1, 1) = 2.5;
    const double g0 = link_gain(path_loss_db(link_geometry({2800, 2500}, 200.0, {1000, 1000}), s.channel, 0.0));
    const double g1 = link_gain(path_loss_db(link_geometry({2800, 2500}, 200.0, {3000, 2000}), s.channel, 0.0));
    const double expected = 1e6 * std::log2(1.0 + 1.5 * g0 / 1e-16) + 1e6 * std::log2(1.0 + 2.5 * g1 / 1e-16);
    EXPECT_NEAR(total_rate(s, fleet, assoc, ch), expected, 1e-6 * expected);
}

TEST(ChannelModel, ShadowingIsFrozenPerLinkAndSeed)
{
    const auto s = generate_random_scenario(5, 10, 0);
    const ChannelModel a(s, 42), b(s, 42), c(s, 43);
    EXPECT_EQ(a.shadowing_db(2, 7), b.shadowing_db(2, 7));
    EXPECT_NE(a.shadowing_db(2, 7), c.shadowing_db(2, 7));
    EXPECT_NE(a.shadowing_db(2, 7), a.shadowing_db(7, 2));
    EXPECT_EQ(a.gain({10, 10}, 1, 1), b.gain({10, 10}, 1, 1));
}

TEST(ChannelModel, ShadowingMoments)
{
    const auto s = generate_random_scenario(5, 200, 0);
    const ChannelModel ch(s, 9);
    double sum = 0.0, sq = 0.0;
    const std::size_t n = 50 * 200;
    for (std::size_t i = 0; i < 50; ++i)
        for (std::size_t k = 0; k < 200; ++k) {
            const double x = ch.shadowing_db(i, k);
            sum += x;
            sq += x * x;
        }
    const double mean = sum / n;
    EXPECT_NEAR(mean, 0.0, 0.25);
    EXPECT_NEAR(std::sqrt(sq / n - mean * mean), 6.0, 0.2);
}

TEST(ChannelModel, RayleighFadingHasUnitMean)
{
    auto p = reference_params();
    p.channel.small_scale_fading = SmallScaleFading::rayleigh;
    const auto s = generate_random_scenario(5, 500, 0, p);
    const ChannelModel ch(s, 3);
    double sum = 0.0;
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t k = 0; k < 500; ++k) {
            ASSERT_GT(ch.fading_power(i, k), 0.0);
            sum += ch.fading_power(i, k);
        }
    EXPECT_NEAR(sum / 10000.0, 1.0, 0.05);
}

TEST(ChannelModel, ReferenceChannelCannotReachThreshold)
{
    // Best case under the reference parameters: directly overhead at full power.
    const double best = linear_to_db(snr(dbm_to_watts(38.0), link_gain(path_loss_db({200.0, 90.0}, {}, 0.0)),
                                         dbm_to_watts(-130.0)));
    EXPECT_NEAR(best, -13.7833504461, 1e-9);
    EXPECT_LT(best, -5.0);
}

} // namespace
} // namespace uavplan
