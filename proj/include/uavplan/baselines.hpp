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

#ifndef UAVPLAN_BASELINES_HPP
#define UAVPLAN_BASELINES_HPP

#include <uavplan/channel.hpp>
#include <uavplan/feasibility.hpp>
#include <uavplan/fleet.hpp>
#include <uavplan/scenario.hpp>
#include <uavplan/trace.hpp>
#include <uavplan/vforce.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace uavplan {

/// Result shape shared by every optimizer.
struct Solution
{
    FleetState fleet;
    Association association;
    Trace trace;
    std::size_t iterations{0};
};

inline Solution to_solution(VfResult r) { return {std::move(r.fleet), std::move(r.association), std::move(r.trace), r.iterations}; }

/// Deployment only: forces move the UAVs, power and association stay at
/// their initial values.
inline Solution run_vf_d(const Scenario& s, const ChannelModel& ch, const FleetState& fleet, const Association& assoc,
                         std::size_t max_iterations, std::function<void(const VfIterate&)> observer = {})
{
    VfOptions opt;
    opt.coalition_game = false;
    opt.power_update = false;
    opt.max_iterations = max_iterations;
    opt.observer = std::move(observer);
    return to_solution(run_vf_optimization(s, ch, fleet, assoc, opt));
}

/// Deployment and power refinement with the association frozen.
inline Solution run_vf_pd(const Scenario& s, const ChannelModel& ch, const FleetState& fleet, const Association& assoc,
                          std::size_t max_iterations, std::function<void(const VfIterate&)> observer = {})
{
    VfOptions opt;
    opt.coalition_game = false;
    opt.power_update = true;
    opt.max_iterations = max_iterations;
    opt.observer = std::move(observer);
    return to_solution(run_vf_optimization(s, ch, fleet, assoc, opt));
}

/// Flattened joint variable: 2N position reals followed by N*M link powers,
/// plus one association gene per UE in 0..N (0 = unassociated, i+1 = UAV i).
struct CandidateSolution
{
    std::vector<double> reals;
    std::vector<std::size_t> association;
    double fitness{0.0};
};

namespace detail {

inline std::size_t power_index(std::size_t n, std::size_t m, std::size_t i, std::size_t k) { return 2 * n + i * m + k; }

/// Clamps positions and powers, projects every UAV's associated powers onto
/// its budget, then drops associations that miss the SNR threshold. The
/// repaired values are written back into the candidate.
inline std::pair<FleetState, Association> repair_candidate(const Scenario& s, const ChannelModel& ch, std::size_t n,
                                                           CandidateSolution& c)
{
    const std::size_t m = s.ues.size();
    const double budget = s.system.max_power_watts();
    std::vector<Vec2> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos[i] = s.area.clamp({c.reals[2 * i], c.reals[2 * i + 1]});
        c.reals[2 * i] = pos[i].x;
        c.reals[2 * i + 1] = pos[i].y;
    }
    for (std::size_t j = 2 * n; j < c.reals.size(); ++j) c.reals[j] = std::clamp(c.reals[j], 0.0, budget);

    FleetState fleet(std::move(pos), s.system.flight_height, m);
    Association assoc(n, m);
    for (std::size_t k = 0; k < m; ++k) {
        if (c.association[k] > n) c.association[k] = 0;
        if (c.association[k] == 0) continue;
        const std::size_t i = c.association[k] - 1;
        assoc.assign(k, i);
        fleet.powers(i, k) = c.reals[power_index(n, m, i, k)];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double sum = fleet.committed_power(i, assoc);
        if (sum > budget) {
            update_power(i, fleet, assoc, 0.0, 0.0, budget);
            for (auto k : assoc.members(i)) c.reals[power_index(n, m, i, k)] = fleet.powers(i, k);
        }
    }
    drop_infeasible_links(s, fleet, assoc, ch);
    for (std::size_t k = 0; k < m; ++k)
        if (!assoc.serving(k)) c.association[k] = 0;
    return {std::move(fleet), std::move(assoc)};
}

inline TraceRow candidate_row(std::size_t iter, const Scenario& s, const ChannelModel& ch, const FleetState& fleet,
                              const Association& assoc, double elapsed)
{
    TraceRow r = make_row(iter, s, fleet, assoc, ch, 0.0, elapsed);
    return r;
}

} // namespace detail

struct GaConfig
{
    std::size_t uav_count{1};
    std::size_t population{50};
    std::size_t generations{500};
    double crossover_rate{0.9};
    double mutation_rate{0.1};
    std::size_t tournament_size{2};
    double mutation_scale_start{0.1}; // σ as a fraction of each gene's range
    double mutation_scale_end{0.001};
    std::uint64_t seed{1};
    std::optional<CandidateSolution> seed_genome; // every individual starts as a copy
};

/// Real-coded GA over positions, powers and association with tournament
/// selection, uniform crossover, Gaussian / random-reset mutation, repair
/// and single-individual elitism.
inline Solution run_ga_pud(const Scenario& s, const ChannelModel& ch, const GaConfig& cfg)
{
    if (cfg.population < 2) throw std::invalid_argument("run_ga_pud: population must be >= 2");
    if (cfg.uav_count < 1) throw std::invalid_argument("run_ga_pud: need at least one UAV");
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

    const std::size_t n = cfg.uav_count;
    const std::size_t m = s.ues.size();
    const double budget = s.system.max_power_watts();
    const std::size_t n_reals = 2 * n + n * m;
    std::vector<double> range(n_reals, budget);
    for (std::size_t i = 0; i < n; ++i) {
        range[2 * i] = s.area.width;
        range[2 * i + 1] = s.area.height;
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> gene_pick(0, n);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto evaluate = [&](CandidateSolution& c) {
        auto [fleet, assoc] = detail::repair_candidate(s, ch, n, c);
        c.fitness = total_rate(s, fleet, assoc, ch);
    };

    std::vector<CandidateSolution> pop(cfg.population);
    for (auto& c : pop) {
        if (cfg.seed_genome) {
            c = *cfg.seed_genome;
            if (c.reals.size() != n_reals || c.association.size() != m)
                throw std::invalid_argument("run_ga_pud: seed genome has the wrong shape");
            evaluate(c);
            continue;
        }
        c.reals.resize(n_reals);
        for (std::size_t j = 0; j < n_reals; ++j) c.reals[j] = u01(rng) * range[j];
        c.association.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t best = 0;
            double best_g = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double g = ch.gain({c.reals[2 * i], c.reals[2 * i + 1]}, i, k);
                if (g > best_g) { best_g = g; best = i; }
            }
            c.association[k] = best + 1;
        }
        evaluate(c);
    }

    auto best_index = [&] {
        std::size_t b = 0;
        for (std::size_t j = 1; j < pop.size(); ++j)
            if (pop[j].fitness > pop[b].fitness) b = j;
        return b;
    };
    auto snapshot_row = [&](std::size_t iter) {
        CandidateSolution c = pop[best_index()];
        auto [fleet, assoc] = detail::repair_candidate(s, ch, n, c);
        return detail::candidate_row(iter, s, ch, fleet, assoc, elapsed());
    };
    auto tournament = [&]() -> const CandidateSolution& {
        std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
        std::size_t b = pick(rng);
        for (std::size_t t = 1; t < cfg.tournament_size; ++t) {
            const std::size_t c = pick(rng);
            if (pop[c].fitness > pop[b].fitness) b = c;
        }
        return pop[b];
    };

    Solution out;
    out.trace.push_back(snapshot_row(0));
    for (std::size_t g = 1; g <= cfg.generations; ++g) {
        const double frac = static_cast<double>(g - 1) / static_cast<double>(std::max<std::size_t>(cfg.generations, 1));
        const double sigma = cfg.mutation_scale_start * std::pow(cfg.mutation_scale_end / cfg.mutation_scale_start, frac);

        std::vector<CandidateSolution> next;
        next.reserve(pop.size());
        next.push_back(pop[best_index()]);
        while (next.size() < pop.size()) {
            const auto& a = tournament();
            const auto& b = tournament();
            CandidateSolution child = a;
            if (u01(rng) < cfg.crossover_rate) {
                for (std::size_t j = 0; j < n_reals; ++j)
                    if (u01(rng) < 0.5) child.reals[j] = b.reals[j];
                for (std::size_t k = 0; k < m; ++k)
                    if (u01(rng) < 0.5) child.association[k] = b.association[k];
            }
            for (std::size_t j = 0; j < n_reals; ++j)
                if (u01(rng) < cfg.mutation_rate) child.reals[j] += gauss(rng) * sigma * range[j];
            for (std::size_t k = 0; k < m; ++k)
                if (u01(rng) < cfg.mutation_rate) child.association[k] = gene_pick(rng);
            evaluate(child);
            next.push_back(std::move(child));
        }
        pop = std::move(next);
        out.trace.push_back(snapshot_row(g));
        out.iterations = g;
    }

    CandidateSolution best = pop[best_index()];
    auto [fleet, assoc] = detail::repair_candidate(s, ch, n, best);
    out.fleet = std::move(fleet);
    out.association = std::move(assoc);
    return out;
}

struct PsoConfig
{
    std::size_t uav_count{1};
    std::size_t swarm{50};
    std::size_t iterations{500};
    double inertia{0.72};
    double cognitive{1.49};
    double social{1.49};
    double velocity_clamp{0.2};         // fraction of each dimension's range
    double initial_velocity_scale{0.1}; // fraction of range; 0 starts at rest
    std::uint64_t seed{1};
};

namespace detail {

/// Association follows the positions: each UE takes the nearest UAV whose
/// link (at the particle's power) meets the threshold.
inline void decode_nearest_feasible(const Scenario& s, const ChannelModel& ch, std::size_t n, CandidateSolution& c)
{
    const std::size_t m = s.ues.size();
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < m; ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto dist = [&](std::size_t i) {
            return distance(s.area.clamp({c.reals[2 * i], c.reals[2 * i + 1]}), s.ues[k].position);
        };
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist(a) < dist(b); });
        c.association[k] = 0;
        for (auto i : order) {
            const Vec2 z = s.area.clamp({c.reals[2 * i], c.reals[2 * i + 1]});
            const double p = std::clamp(c.reals[power_index(n, m, i, k)], 0.0, s.system.max_power_watts());
            if (snr(p, ch.gain(z, i, k), ch.noise_watts()) >= db_to_linear(s.ues[k].snr_threshold)) {
                c.association[k] = i + 1;
                break;
            }
        }
    }
}

} // namespace detail

/// Global-best PSO over the real block; association is decoded from the
/// particle and the same repair as the GA is applied.
inline Solution run_pso_pud(const Scenario& s, const ChannelModel& ch, const PsoConfig& cfg)
{
    if (cfg.swarm < 2) throw std::invalid_argument("run_pso_pud: swarm must be >= 2");
    if (cfg.uav_count < 1) throw std::invalid_argument("run_pso_pud: need at least one UAV");
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

    const std::size_t n = cfg.uav_count;
    const std::size_t m = s.ues.size();
    const double budget = s.system.max_power_watts();
    const std::size_t dims = 2 * n + n * m;
    std::vector<double> range(dims, budget);
    for (std::size_t i = 0; i < n; ++i) {
        range[2 * i] = s.area.width;
        range[2 * i + 1] = s.area.height;
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    struct Particle
    {
        CandidateSolution x;
        std::vector<double> v;
        CandidateSolution best;
    };

    auto evaluate = [&](CandidateSolution& c) {
        detail::decode_nearest_feasible(s, ch, n, c);
        auto [fleet, assoc] = detail::repair_candidate(s, ch, n, c);
        c.fitness = total_rate(s, fleet, assoc, ch);
    };

    std::vector<Particle> swarm(cfg.swarm);
    for (auto& p : swarm) {
        p.x.reals.resize(dims);
        p.x.association.assign(m, 0);
        p.v.resize(dims);
        for (std::size_t j = 0; j < dims; ++j) {
            p.x.reals[j] = u01(rng) * range[j];
            p.v[j] = (2.0 * u01(rng) - 1.0) * cfg.initial_velocity_scale * range[j];
        }
        evaluate(p.x);
        p.best = p.x;
    }
    auto global_best = [&] {
        std::size_t b = 0;
        for (std::size_t j = 1; j < swarm.size(); ++j)
            if (swarm[j].best.fitness > swarm[b].best.fitness) b = j;
        return swarm[b].best;
    };
    CandidateSolution gbest = global_best();
    auto snapshot_row = [&](std::size_t iter) {
        CandidateSolution c = gbest;
        auto [fleet, assoc] = detail::repair_candidate(s, ch, n, c);
        return detail::candidate_row(iter, s, ch, fleet, assoc, elapsed());
    };

    Solution out;
    out.trace.push_back(snapshot_row(0));
    for (std::size_t t = 1; t <= cfg.iterations; ++t) {
        for (auto& p : swarm) {
            for (std::size_t j = 0; j < dims; ++j) {
                const double vmax = cfg.velocity_clamp * range[j];
                double v = cfg.inertia * p.v[j] + cfg.cognitive * u01(rng) * (p.best.reals[j] - p.x.reals[j])
                           + cfg.social * u01(rng) * (gbest.reals[j] - p.x.reals[j]);
                p.v[j] = std::clamp(v, -vmax, vmax);
                p.x.reals[j] += p.v[j];
            }
            evaluate(p.x);
            if (p.x.fitness > p.best.fitness) p.best = p.x;
        }
        const CandidateSolution cand = global_best();
        if (cand.fitness > gbest.fitness) gbest = cand;
        out.trace.push_back(snapshot_row(t));
        out.iterations = t;
    }

    auto [fleet, assoc] = detail::repair_candidate(s, ch, n, gbest);
    out.fleet = std::move(fleet);
    out.association = std::move(assoc);
    return out;
}

} // namespace uavplan

#endif // UAVPLAN_BASELINES_HPP
