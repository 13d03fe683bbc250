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

#ifndef UAVPLAN_ASSOCIATION_HPP
#define UAVPLAN_ASSOCIATION_HPP

#include <uavplan/channel.hpp>
#include <uavplan/fleet.hpp>
#include <uavplan/scenario.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace uavplan {

/// Rates and feasibility of coalitions under the equal power and bandwidth
/// split used during the game. Gains are frozen for the current positions.
class CoalitionEvaluator
{
public:
    CoalitionEvaluator(const Scenario& s, Matrix gains)
        : gains_(std::move(gains)),
          bandwidth_(s.system.uav_bandwidth),
          budget_(s.system.max_power_watts()),
          noise_(s.channel.noise_watts())
    {
        thresholds_.reserve(s.ues.size());
        for (const auto& ue : s.ues) thresholds_.push_back(db_to_linear(ue.snr_threshold));
        if (gains_.cols() != thresholds_.size())
            throw std::invalid_argument("CoalitionEvaluator: gain table does not match the UE count");
    }

    CoalitionEvaluator(const Scenario& s, const FleetState& fleet, const ChannelModel& ch)
        : CoalitionEvaluator(s, ch.gain_table(fleet.positions)) {}

    std::size_t uav_count() const noexcept { return gains_.rows(); }
    std::size_t ue_count() const noexcept { return gains_.cols(); }
    double gain(std::size_t uav, std::size_t ue) const noexcept { return gains_(uav, ue); }
    double threshold(std::size_t ue) const noexcept { return thresholds_[ue]; }
    double budget() const noexcept { return budget_; }

    /// SNR of ue when uav serves `load` UEs with equal power.
    double snr_at_load(std::size_t uav, std::size_t ue, std::size_t load) const noexcept
    {
        return budget_ / static_cast<double>(load) * gains_(uav, ue) / noise_;
    }

    /// Sum rate of uav's coalition `members`, optionally with one UE added
    /// and/or one removed.
    double coalition_rate(std::size_t uav, const std::vector<std::size_t>& members,
                          std::optional<std::size_t> add = {}, std::optional<std::size_t> remove = {}) const
    {
        const std::size_t n = members.size() + (add ? 1 : 0) - (remove ? 1 : 0);
        if (n == 0) return 0.0;
        const double b = bandwidth_ / static_cast<double>(n);
        double r = 0.0;
        for (auto k : members)
            if (!remove || k != *remove) r += b * std::log2(1.0 + snr_at_load(uav, k, n));
        if (add) r += b * std::log2(1.0 + snr_at_load(uav, *add, n));
        return r;
    }

    /// Every member meets its threshold (4d); equal split keeps (4c).
    bool coalition_feasible(std::size_t uav, const std::vector<std::size_t>& members,
                            std::optional<std::size_t> add = {}, std::optional<std::size_t> remove = {}) const
    {
        const std::size_t n = members.size() + (add ? 1 : 0) - (remove ? 1 : 0);
        if (n == 0) return true;
        for (auto k : members)
            if ((!remove || k != *remove) && snr_at_load(uav, k, n) < thresholds_[k]) return false;
        if (add && snr_at_load(uav, *add, n) < thresholds_[*add]) return false;
        return true;
    }

    double network_rate(const CoalitionPartition& part) const
    {
        double r = 0.0;
        for (std::size_t i = 0; i < part.uav_count(); ++i) r += coalition_rate(i, part.members(i));
        return r;
    }

private:
    Matrix gains_;
    std::vector<double> thresholds_;
    double bandwidth_;
    double budget_;
    double noise_;
};

/// Change in network rate when ue leaves its coalition for `to`. Both
/// coalitions re-split bandwidth and power.
inline double transfer_utility(const CoalitionEvaluator& ev, const CoalitionPartition& part, std::size_t ue,
                               std::size_t to)
{
    const auto from = part.serving(ue);
    if (!from) throw std::invalid_argument("transfer_utility: UE is not associated");
    if (*from == to) throw std::invalid_argument("transfer_utility: self-transfer");
    if (to >= part.uav_count()) throw std::invalid_argument("transfer_utility: bad destination UAV");
    const auto& src = part.members(*from);
    const auto& dst = part.members(to);
    const double before = ev.coalition_rate(*from, src) + ev.coalition_rate(to, dst);
    const double after = ev.coalition_rate(*from, src, {}, ue) + ev.coalition_rate(to, dst, ue);
    return after - before;
}

/// Destination keeps (4c)/(4d) after admitting ue.
inline bool transfer_feasible(const CoalitionEvaluator& ev, const CoalitionPartition& part, std::size_t ue,
                              std::size_t to)
{
    return ev.coalition_feasible(to, part.members(to), ue);
}

/// Drops UEs from coalitions that violate (4d), weakest link first, then
/// admits each unassociated UE to the strongest UAV that can take it.
inline void repair_partition(const CoalitionEvaluator& ev, CoalitionPartition& part)
{
    for (std::size_t i = 0; i < part.uav_count(); ++i) {
        while (!ev.coalition_feasible(i, part.members(i))) {
            const auto& m = part.members(i);
            std::size_t worst = m.front();
            for (auto k : m)
                if (ev.gain(i, k) / ev.threshold(k) < ev.gain(i, worst) / ev.threshold(worst)) worst = k;
            part.release(worst);
        }
    }
    std::vector<std::size_t> order(part.uav_count());
    for (auto k : part.unassociated_ues()) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return ev.gain(a, k) > ev.gain(b, k); });
        for (auto i : order) {
            if (ev.coalition_feasible(i, part.members(i), k)) {
                part.assign(k, i);
                break;
            }
        }
    }
}

/// Each UE joins the UAV offering the largest received SNR (lowest id on
/// ties); UEs that cannot be served feasibly stay unassociated.
inline CoalitionPartition init_partition(const CoalitionEvaluator& ev)
{
    if (ev.uav_count() == 0) throw std::invalid_argument("init_partition: fleet has no UAVs");
    CoalitionPartition part(ev.uav_count(), ev.ue_count());
    for (std::size_t k = 0; k < ev.ue_count(); ++k) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < ev.uav_count(); ++i)
            if (ev.gain(i, k) > ev.gain(best, k)) best = i;
        part.assign(k, best);
    }
    repair_partition(ev, part);
    return part;
}

struct TransferProposal
{
    std::size_t ue;
    std::size_t from;
    std::size_t to;
    double utility; // bits/s
};

struct AppliedTransfer
{
    TransferProposal proposal;
    double rate_before;
    double rate_after;
};

struct GameResult
{
    CoalitionPartition partition;
    std::size_t rounds{0};
    std::vector<AppliedTransfer> transfers;
    double initial_rate{0.0};
    double final_rate{0.0};
};

namespace detail {

/// Best feasible improving move of any single UE; utility <= 0 if none.
inline TransferProposal best_single_move(const CoalitionEvaluator& ev, const CoalitionPartition& part)
{
    TransferProposal best{0, 0, 0, 0.0};
    for (std::size_t k = 0; k < part.ue_count(); ++k) {
        const auto from = part.serving(k);
        if (!from) continue;
        for (std::size_t i = 0; i < part.uav_count(); ++i) {
            if (i == *from || !transfer_feasible(ev, part, k, i)) continue;
            const double u = transfer_utility(ev, part, k, i);
            if (u > best.utility) best = {k, *from, i, u};
        }
    }
    return best;
}

} // namespace detail

/// Transfer-based coalition formation. Each round every UAV proposes the
/// feasible UE whose move to it raises the network rate the most; a UE
/// wanted by several UAVs goes to the highest utility (then lowest id).
/// Proposals are applied in descending utility, each re-validated against
/// the partition left by the previous ones. Stops once a round gains less
/// than epsilon and no single move is worth epsilon.
inline GameResult run_coalition_game(const CoalitionEvaluator& ev, CoalitionPartition partition, double epsilon,
                                     std::size_t max_rounds = 100000)
{
    GameResult res;
    res.initial_rate = ev.network_rate(partition);
    double current = res.initial_rate;

    const std::size_t n = partition.uav_count();
    while (res.rounds < max_rounds) {
        ++res.rounds;
        const double round_start = current;

        std::vector<std::optional<TransferProposal>> pick(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < partition.ue_count(); ++k) {
                const auto from = partition.serving(k);
                if (!from || *from == i || !transfer_feasible(ev, partition, k, i)) continue;
                const double u = transfer_utility(ev, partition, k, i);
                if (u > 0.0 && (!pick[i] || u > pick[i]->utility)) pick[i] = TransferProposal{k, *from, i, u};
            }
        }

        std::vector<TransferProposal> chosen;
        for (std::size_t i = 0; i < n; ++i) {
            if (!pick[i]) continue;
            auto clash = std::find_if(chosen.begin(), chosen.end(),
                                      [&](const TransferProposal& p) { return p.ue == pick[i]->ue; });
            if (clash == chosen.end()) chosen.push_back(*pick[i]);
            else if (pick[i]->utility > clash->utility) *clash = *pick[i];
        }
        std::stable_sort(chosen.begin(), chosen.end(), [](const TransferProposal& a, const TransferProposal& b) {
            return a.utility != b.utility ? a.utility > b.utility : a.to < b.to;
        });

        for (auto p : chosen) {
            if (!transfer_feasible(ev, partition, p.ue, p.to)) continue;
            p.utility = transfer_utility(ev, partition, p.ue, p.to);
            if (!(p.utility > 0.0)) continue;
            p.from = *partition.serving(p.ue);
            partition.assign(p.ue, p.to);
            const double next = ev.network_rate(partition);
            if (!(next > current)) { // utility lost to rounding
                partition.assign(p.ue, p.from);
                continue;
            }
            res.transfers.push_back({p, current, next});
            current = next;
        }

        if (current - round_start < epsilon && detail::best_single_move(ev, partition).utility < epsilon) break;
    }
    res.final_rate = current;
    res.partition = std::move(partition);
    return res;
}

} // namespace uavplan

#endif // UAVPLAN_ASSOCIATION_HPP
