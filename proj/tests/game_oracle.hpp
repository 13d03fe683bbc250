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

#ifndef UAVPLAN_TESTS_GAME_ORACLE_HPP
#define UAVPLAN_TESTS_GAME_ORACLE_HPP

#include <uavplan/uavplan.hpp>

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace uavplan::testing {

/// Direct evaluation of a partition from the gain table: equal power and
/// bandwidth inside each coalition, without going through the evaluator.
struct GameOracle
{
    Matrix gains;
    std::vector<double> threshold; // linear
    double bandwidth{2e6};
    double budget{dbm_to_watts(38.0)};
    double noise{dbm_to_watts(-130.0)};

    double member_snr(const CoalitionPartition& p, std::size_t i, std::size_t k) const
    {
        return budget / static_cast<double>(p.load(i)) * gains(i, k) / noise;
    }

    double rate(const CoalitionPartition& p) const
    {
        double r = 0.0;
        for (std::size_t i = 0; i < p.uav_count(); ++i)
            for (auto k : p.members(i))
                r += bandwidth / static_cast<double>(p.load(i)) * std::log2(1.0 + member_snr(p, i, k));
        return r;
    }

    bool feasible(const CoalitionPartition& p) const
    {
        for (std::size_t i = 0; i < p.uav_count(); ++i)
            for (auto k : p.members(i))
                if (member_snr(p, i, k) < threshold[k]) return false;
        return true;
    }

    /// Largest rate gain of any feasible single-UE move between UAVs.
    double best_move_gain(const CoalitionPartition& p) const
    {
        const double base = rate(p);
        double best = 0.0;
        for (std::size_t k = 0; k < p.ue_count(); ++k) {
            const auto from = p.serving(k);
            if (!from) continue;
            for (std::size_t i = 0; i < p.uav_count(); ++i) {
                if (i == *from) continue;
                auto q = p;
                q.assign(k, i);
                if (feasible(q)) best = std::max(best, rate(q) - base);
            }
        }
        return best;
    }
};

/// Random instance with log-uniform gains; the scenario carries the
/// thresholds, bandwidth, budget and noise.
struct RandomGame
{
    Scenario scenario;
    Matrix gains;
    GameOracle oracle;
};

inline RandomGame random_game(std::uint64_t seed, std::size_t max_uavs = 3, std::size_t max_ues = 6)
{
    std::mt19937_64 rng(seed);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_uavs)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_ues)(rng);
    std::uniform_real_distribution<double> log_gain(-18.5, -14.0);
    std::uniform_real_distribution<double> thr_db(-8.0, 10.0);

    RandomGame g;
    for (std::size_t k = 0; k < m; ++k)
        g.scenario.ues.push_back({k, {100.0 * static_cast<double>(k), 0.0}, thr_db(rng)});
    g.gains = Matrix(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) g.gains(i, k) = std::pow(10.0, log_gain(rng));
    g.oracle.gains = g.gains;
    for (const auto& ue : g.scenario.ues) g.oracle.threshold.push_back(db_to_linear(ue.snr_threshold));
    return g;
}

} // namespace uavplan::testing

#endif // UAVPLAN_TESTS_GAME_ORACLE_HPP
