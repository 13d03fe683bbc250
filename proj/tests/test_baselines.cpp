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

namespace uavplan {
namespace {

class Baselines : public ::testing::Test
{
protected:
    Scenario s = generate_random_scenario(31, 25, 2, testing::calibrated_params());
    ChannelModel ch{s, 31};
    InitialDeployment init = initial_fleet(s, ch, 31);
};

TEST_F(Baselines, VfDKeepsPowersAndAssociation)
{
    const auto r = run_vf_d(s, ch, init.fleet, init.association, 60);
    EXPECT_EQ(r.fleet.powers, init.fleet.powers);
    EXPECT_EQ(r.association, init.association);
    EXPECT_EQ(r.iterations, 60u);
}

TEST_F(Baselines, VfDZeroIterations)
{
    const auto r = run_vf_d(s, ch, init.fleet, init.association, 0);
    EXPECT_EQ(r.fleet.positions, init.fleet.positions);
    EXPECT_EQ(r.trace.size(), 1u);
}

TEST_F(Baselines, VfPdFreezesAssociation)
{
    std::size_t rows = 0;
    const auto r = run_vf_pd(s, ch, init.fleet, init.association, 60, [&](const VfIterate& it) {
        ++rows;
        EXPECT_EQ(it.association, init.association);
    });
    EXPECT_EQ(rows, 61u);
    EXPECT_EQ(r.association, init.association);
    const auto zero = run_vf_pd(s, ch, init.fleet, init.association, 0);
    EXPECT_EQ(zero.fleet.powers, init.fleet.powers);
    EXPECT_EQ(zero.fleet.positions, init.fleet.positions);
}

TEST_F(Baselines, GaTraceNonDecreasingAndFeasible)
{
    GaConfig cfg;
    cfg.uav_count = init.fleet.uav_count();
    cfg.population = 20;
    cfg.generations = 40;
    cfg.seed = 5;
    const auto r = run_ga_pud(s, ch, cfg);
    ASSERT_EQ(r.trace.size(), 41u);
    for (std::size_t g = 1; g < r.trace.size(); ++g)
        EXPECT_GE(r.trace[g].total_rate_bps, r.trace[g - 1].total_rate_bps);
    EXPECT_TRUE(constraint_violations(s, r.fleet, r.association, ch).empty());
    EXPECT_DOUBLE_EQ(total_rate(s, r.fleet, r.association, ch), r.trace.back().total_rate_bps);
}

TEST_F(Baselines, GaIdenticalPopulationWithoutMutationIsStatic)
{
    const std::size_t n = init.fleet.uav_count(), m = s.ues.size();
    CandidateSolution genome;
    for (const auto& z : init.fleet.positions) {
        genome.reals.push_back(z.x);
        genome.reals.push_back(z.y);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) genome.reals.push_back(init.fleet.powers(i, k));
    for (std::size_t k = 0; k < m; ++k) genome.association.push_back(*init.association.serving(k) + 1);

    GaConfig cfg;
    cfg.uav_count = n;
    cfg.population = 10;
    cfg.generations = 20;
    cfg.mutation_rate = 0.0;
    cfg.seed_genome = genome;
    const auto r = run_ga_pud(s, ch, cfg);
    for (const auto& row : r.trace) EXPECT_EQ(row.total_rate_bps, r.trace.front().total_rate_bps);
    EXPECT_DOUBLE_EQ(r.trace.front().total_rate_bps, total_rate(s, init.fleet, init.association, ch));
}

TEST_F(Baselines, GaSeedGenomeShapeChecked)
{
    GaConfig cfg;
    cfg.seed_genome = CandidateSolution{{1.0}, {0}, 0.0};
    EXPECT_THROW(run_ga_pud(s, ch, cfg), std::invalid_argument);
}

TEST_F(Baselines, PsoTraceNonDecreasingAndFeasible)
{
    PsoConfig cfg;
    cfg.uav_count = init.fleet.uav_count();
    cfg.swarm = 15;
    cfg.iterations = 40;
    const auto r = run_pso_pud(s, ch, cfg);
    ASSERT_EQ(r.trace.size(), 41u);
    for (std::size_t t = 1; t < r.trace.size(); ++t)
        EXPECT_GE(r.trace[t].total_rate_bps, r.trace[t - 1].total_rate_bps);
    EXPECT_TRUE(constraint_violations(s, r.fleet, r.association, ch).empty());
}

TEST_F(Baselines, PsoAtRestIsStatic)
{
    PsoConfig cfg;
    cfg.uav_count = init.fleet.uav_count();
    cfg.swarm = 8;
    cfg.iterations = 15;
    cfg.inertia = cfg.cognitive = cfg.social = 0.0;
    cfg.initial_velocity_scale = 0.0;
    const auto r = run_pso_pud(s, ch, cfg);
    for (const auto& row : r.trace) EXPECT_EQ(row.total_rate_bps, r.trace.front().total_rate_bps);
}

TEST_F(Baselines, Deterministic)
{
    GaConfig ga;
    ga.uav_count = init.fleet.uav_count();
    ga.population = 10;
    ga.generations = 10;
    EXPECT_EQ(run_ga_pud(s, ch, ga).fleet.positions, run_ga_pud(s, ch, ga).fleet.positions);
    PsoConfig pso;
    pso.uav_count = init.fleet.uav_count();
    pso.swarm = 10;
    pso.iterations = 10;
    EXPECT_EQ(run_pso_pud(s, ch, pso).fleet.powers, run_pso_pud(s, ch, pso).fleet.powers);
}

TEST(TinyInstance, GridOracleBound)
{
    const auto s = testing::tiny_scenario();
    const ChannelModel ch(s, 1);
    const double oracle = testing::grid_oracle_rate(s, ch);
    // Directly above the UE at full power is the continuous optimum's neighbourhood.
    const double above = link_rate(2e6, snr(s.system.max_power_watts(), ch.gain({1300.0, 700.0}, 0, 0), 1e-16));
    EXPECT_GT(oracle, 0.0);
    EXPECT_NEAR(oracle / above, 1.0, 0.02);
}

TEST(TinyInstance, GaAndPsoReachGridOracle)
{
    const auto s = testing::tiny_scenario();
    const ChannelModel ch(s, 1);
    const double oracle = testing::grid_oracle_rate(s, ch);
    GaConfig ga;
    ga.generations = 200;
    const auto g = run_ga_pud(s, ch, ga);
    EXPECT_GE(total_rate(s, g.fleet, g.association, ch), 0.98 * oracle);
    PsoConfig pso;
    pso.iterations = 200;
    const auto p = run_pso_pud(s, ch, pso);
    EXPECT_GE(total_rate(s, p.fleet, p.association, ch), 0.98 * oracle);
}

} // namespace
} // namespace uavplan
