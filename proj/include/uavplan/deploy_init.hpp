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

#ifndef UAVPLAN_DEPLOY_INIT_HPP
#define UAVPLAN_DEPLOY_INIT_HPP

#include <uavplan/channel.hpp>
#include <uavplan/errors.hpp>
#include <uavplan/fleet.hpp>
#include <uavplan/format.hpp>
#include <uavplan/scenario.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uavplan {

struct ClusterResult
{
    std::vector<Vec2> centroids;
    std::vector<std::size_t> labels; // UE -> cluster
    std::size_t iterations{0};       // centroid update steps performed
};

inline constexpr std::size_t kmeans_max_iterations = 300;

/// Lloyd's algorithm started from n distinct UEs drawn with the seed; stops
/// when labels no longer change. An emptied cluster is reseeded at the point
/// farthest from its current centroid.
inline ClusterResult kmeans_cluster(std::span<const Vec2> points, std::size_t n, std::uint64_t seed)
{
    const std::size_t m = points.size();
    if (n < 1 || n > m) throw std::invalid_argument("kmeans_cluster: need 1 <= n <= number of points");

    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n)};
    std::mt19937_64 rng(seq);
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<std::size_t> picked;
    picked.reserve(n);
    std::sample(idx.begin(), idx.end(), std::back_inserter(picked), static_cast<std::ptrdiff_t>(n), rng);

    ClusterResult r;
    r.centroids.reserve(n);
    for (auto p : picked) r.centroids.push_back(points[p]);
    r.labels.assign(m, std::numeric_limits<std::size_t>::max());

    for (std::size_t iter = 0; iter < kmeans_max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < n; ++c) {
                const double d = (points[k] - r.centroids[c]).squared_norm();
                if (d < best_d) { best_d = d; best = c; }
            }
            if (r.labels[k] != best) { r.labels[k] = best; changed = true; }
        }
        if (!changed) break;

        std::vector<Vec2> sum(n);
        std::vector<std::size_t> count(n, 0);
        for (std::size_t k = 0; k < m; ++k) {
            sum[r.labels[k]] += points[k];
            ++count[r.labels[k]];
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (count[c] > 0) {
                r.centroids[c] = sum[c] / static_cast<double>(count[c]);
                continue;
            }
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t k = 0; k < m; ++k) {
                if (count[r.labels[k]] <= 1) continue; // don't empty another cluster
                const double d = (points[k] - r.centroids[r.labels[k]]).squared_norm();
                if (d > far_d) { far_d = d; far = k; }
            }
            --count[r.labels[far]];
            r.labels[far] = c;
            count[c] = 1;
            r.centroids[c] = points[far];
        }
        ++r.iterations;
    }
    return r;
}

/// Fleet at the n cluster centroids with nearest-centroid association and
/// the budget split equally inside each cluster.
struct ClusteredDeployment
{
    FleetState fleet;
    Association association;
    ClusterResult clusters;
};

inline ClusteredDeployment clustered_deployment(const Scenario& s, std::size_t n, std::uint64_t seed)
{
    std::vector<Vec2> pts;
    pts.reserve(s.ues.size());
    for (const auto& ue : s.ues) pts.push_back(ue.position);

    ClusteredDeployment d;
    d.clusters = kmeans_cluster(pts, n, seed);
    d.fleet = FleetState(d.clusters.centroids, s.system.flight_height, s.ues.size());
    d.association = Association(n, s.ues.size());
    for (std::size_t k = 0; k < s.ues.size(); ++k) d.association.assign(k, d.clusters.labels[k]);
    set_equal_split(d.fleet, d.association, s.system.max_power_watts());
    return d;
}

/// Every UE associated and meeting γ_k^th on its link.
inline bool covers_all(const Scenario& s, const FleetState& fleet, const Association& assoc, const ChannelModel& ch)
{
    return coverage(s, fleet, assoc, ch) == 1.0;
}

struct SizingAttempt
{
    std::size_t uav_count;
    double coverage;
    double total_rate;
};

struct InitialDeployment
{
    FleetState fleet;
    Association association;
    ClusterResult clusters;
    std::vector<SizingAttempt> attempts; // one per fleet size tried
};

/// Smallest N >= N_0 whose clustered deployment covers every UE.
inline InitialDeployment initial_fleet(const Scenario& s, const ChannelModel& ch, std::uint64_t seed)
{
    const std::size_t m = s.ues.size();
    const std::size_t n0 = s.system.initial_cluster_count;
    if (n0 > m) throw std::invalid_argument("initial_fleet: initial_cluster_count exceeds the UE count");

    InitialDeployment out;
    for (std::size_t n = n0; n <= m; ++n) {
        auto d = clustered_deployment(s, n, seed);
        const double cov = coverage(s, d.fleet, d.association, ch);
        out.attempts.push_back({n, cov, total_rate(s, d.fleet, d.association, ch)});
        if (cov == 1.0) {
            out.fleet = std::move(d.fleet);
            out.association = std::move(d.association);
            out.clusters = std::move(d.clusters);
            return out;
        }
    }
    double best = 0.0;
    for (const auto& a : out.attempts) best = std::max(best, a.coverage);
    throw infeasible_error("no fleet size up to " + std::to_string(m) + " covers every UE (best coverage "
                           + format_fixed(best * 100.0, 1) + "%)");
}

} // namespace uavplan

#endif // UAVPLAN_DEPLOY_INIT_HPP
