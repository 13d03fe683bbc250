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

#ifndef UAVPLAN_HARNESS_HPP
#define UAVPLAN_HARNESS_HPP

#include <uavplan/baselines.hpp>
#include <uavplan/channel.hpp>
#include <uavplan/deploy_init.hpp>
#include <uavplan/feasibility.hpp>
#include <uavplan/format.hpp>
#include <uavplan/scenario.hpp>
#include <uavplan/trace.hpp>
#include <uavplan/vforce.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace uavplan {

enum class Algorithm
{
    vf_pud, // proposed: coalition game + virtual forces + power
    vf_pd,
    vf_d,
    ga_pud,
    pso_pud,
};

inline std::string_view to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::vf_pud: return "vf-pud";
    case Algorithm::vf_pd: return "vf-pd";
    case Algorithm::vf_d: return "vf-d";
    case Algorithm::ga_pud: return "ga-pud";
    case Algorithm::pso_pud: return "pso-pud";
    }
    return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s)
{
    for (auto a : {Algorithm::vf_pud, Algorithm::vf_pd, Algorithm::vf_d, Algorithm::ga_pud, Algorithm::pso_pud})
        if (to_string(a) == s) return a;
    return std::nullopt;
}

struct RunOptions
{
    std::size_t max_iterations{500};
    std::size_t population{50}; // GA population and PSO swarm size
};

struct RunReport
{
    std::string algorithm;
    std::uint64_t seed{0};
    std::size_t ue_count{0};
    std::size_t uav_count{0};
    double coverage{0.0};
    double total_rate{0.0};   // bits/s, final solution
    double initial_rate{0.0}; // bits/s, K-Means deployment
    std::size_t iterations{0};
    double wall_clock{0.0};   // s, optimization loop only
    bool ok{true};
    std::string error;
    std::string trace_file;
    FleetState fleet;
    Association association;
};

/// Initializes with K-Means sizing (untimed), runs one optimizer under the
/// wall clock, and repairs the final solution so every associated link
/// meets its SNR threshold.
inline RunReport run_algorithm(const Scenario& s, Algorithm algo, std::uint64_t seed, const RunOptions& opt,
                               Trace* trace_out = nullptr)
{
    RunReport rep;
    rep.algorithm = std::string(to_string(algo));
    rep.seed = seed;
    rep.ue_count = s.ues.size();
    try {
        const ChannelModel ch(s, seed);
        const auto init = initial_fleet(s, ch, seed);
        rep.uav_count = init.fleet.uav_count();
        rep.initial_rate = total_rate(s, init.fleet, init.association, ch);

        const auto t0 = std::chrono::steady_clock::now();
        Solution sol;
        switch (algo) {
        case Algorithm::vf_pud: {
            VfOptions vo;
            vo.max_iterations = opt.max_iterations;
            sol = to_solution(run_vf_optimization(s, ch, init.fleet, init.association, vo));
            break;
        }
        case Algorithm::vf_pd: sol = run_vf_pd(s, ch, init.fleet, init.association, opt.max_iterations); break;
        case Algorithm::vf_d: sol = run_vf_d(s, ch, init.fleet, init.association, opt.max_iterations); break;
        case Algorithm::ga_pud: {
            GaConfig gc;
            gc.uav_count = rep.uav_count;
            gc.population = opt.population;
            gc.generations = opt.max_iterations;
            gc.seed = detail::splitmix64(seed ^ 0x6761ULL);
            sol = run_ga_pud(s, ch, gc);
            break;
        }
        case Algorithm::pso_pud: {
            PsoConfig pc;
            pc.uav_count = rep.uav_count;
            pc.swarm = opt.population;
            pc.iterations = opt.max_iterations;
            pc.seed = detail::splitmix64(seed ^ 0x70736fULL);
            sol = run_pso_pud(s, ch, pc);
            break;
        }
        }
        rep.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        drop_infeasible_links(s, sol.fleet, sol.association, ch);
        rep.iterations = sol.iterations;
        rep.total_rate = total_rate(s, sol.fleet, sol.association, ch);
        rep.coverage = coverage(s, sol.fleet, sol.association, ch);
        rep.fleet = std::move(sol.fleet);
        rep.association = std::move(sol.association);
        if (trace_out) *trace_out = std::move(sol.trace);
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.error = e.what();
    }
    return rep;
}

inline nlohmann::json to_json(const RunReport& r)
{
    nlohmann::json j;
    j["algorithm"] = r.algorithm;
    j["seed"] = r.seed;
    j["ue_count"] = r.ue_count;
    j["uav_count"] = r.uav_count;
    j["coverage"] = r.coverage;
    j["total_rate_bps"] = r.total_rate;
    j["initial_rate_bps"] = r.initial_rate;
    j["iterations"] = r.iterations;
    j["wall_clock_s"] = r.wall_clock;
    j["status"] = r.ok ? "ok" : "error";
    j["error"] = r.error;
    j["trace_file"] = r.trace_file;

    nlohmann::json sol;
    sol["altitude_m"] = r.fleet.altitude;
    sol["positions"] = nlohmann::json::array();
    for (auto p : r.fleet.positions) sol["positions"].push_back({p.x, p.y});
    sol["association"] = nlohmann::json::array();
    for (std::size_t k = 0; k < r.association.ue_count(); ++k) {
        const auto s = r.association.serving(k);
        sol["association"].push_back(s ? nlohmann::json(*s) : nlohmann::json(nullptr));
    }
    sol["powers_w"] = nlohmann::json::array();
    for (std::size_t i = 0; i < r.fleet.uav_count(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t k = 0; k < r.fleet.powers.cols(); ++k) row.push_back(r.fleet.powers(i, k));
        sol["powers_w"].push_back(std::move(row));
    }
    j["solution"] = std::move(sol);
    return j;
}

/// Reads the summary-relevant fields back; the solution snapshot is not
/// reconstructed.
inline RunReport report_from_json(const nlohmann::json& j)
{
    RunReport r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.ue_count = j.at("ue_count").get<std::size_t>();
    r.uav_count = j.at("uav_count").get<std::size_t>();
    r.coverage = j.at("coverage").get<double>();
    r.total_rate = j.at("total_rate_bps").get<double>();
    r.initial_rate = j.at("initial_rate_bps").get<double>();
    r.iterations = j.at("iterations").get<std::size_t>();
    r.wall_clock = j.at("wall_clock_s").get<double>();
    r.ok = j.at("status").get<std::string>() == "ok";
    r.error = j.value("error", "");
    r.trace_file = j.value("trace_file", "");
    return r;
}

struct ExperimentConfig
{
    std::string scenario_label;
    std::vector<Algorithm> algorithms;
    std::vector<std::uint64_t> seeds;
    RunOptions run;
    std::filesystem::path out_dir;
    bool single_thread{false};
};

inline std::string trace_file_name(std::string_view algo, std::uint64_t seed)
{
    return "trace_" + std::string(algo) + "_seed" + std::to_string(seed) + ".csv";
}

/// Runs every (algorithm, seed) pair, writes one trace CSV per run and a
/// report.json for the batch into out_dir. Per-run failures are recorded
/// in the report, never thrown. Without single_thread, runs execute on a
/// pool of worker threads; output order is always algorithm-major.
inline std::vector<RunReport> run_experiment(const Scenario& s, const ExperimentConfig& cfg)
{
    struct Job
    {
        Algorithm algo;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (auto a : cfg.algorithms)
        for (auto seed : cfg.seeds) jobs.push_back({a, seed});

    std::vector<RunReport> reports(jobs.size());
    std::vector<Trace> traces(jobs.size());
    auto work = [&](std::size_t j) { reports[j] = run_algorithm(s, jobs[j].algo, jobs[j].seed, cfg.run, &traces[j]); };

    if (cfg.single_thread || jobs.size() < 2) {
        for (std::size_t j = 0; j < jobs.size(); ++j) work(j);
    } else {
        const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(workers, jobs.size()); ++w)
            pool.emplace_back([&] {
                for (std::size_t j; (j = next++) < jobs.size();) work(j);
            });
    }

    std::filesystem::create_directories(cfg.out_dir);
    nlohmann::json doc;
    doc["scenario"] = cfg.scenario_label;
    doc["ue_count"] = s.ues.size();
    doc["max_iterations"] = cfg.run.max_iterations;
    doc["runs"] = nlohmann::json::array();
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (reports[j].ok) {
            reports[j].trace_file = trace_file_name(reports[j].algorithm, reports[j].seed);
            std::ofstream out(cfg.out_dir / reports[j].trace_file, std::ios::binary);
            write_trace_csv(out, traces[j]);
        }
        doc["runs"].push_back(to_json(reports[j]));
    }
    std::ofstream out(cfg.out_dir / "report.json", std::ios::binary);
    out << doc.dump(2) << '\n';
    return reports;
}

/// Collects the runs of every report*.json directly inside dir.
inline std::vector<RunReport> load_reports(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (e.is_regular_file() && name.starts_with("report") && e.path().extension() == ".json")
            files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<RunReport> out;
    for (const auto& f : files) {
        std::ifstream in(f);
        const auto doc = nlohmann::json::parse(in);
        for (const auto& r : doc.at("runs")) out.push_back(report_from_json(r));
    }
    return out;
}

struct SummaryRow
{
    std::string algorithm;
    std::size_t ue_count{0};
    std::size_t runs{0};
    std::size_t failed{0};
    double mean_rate{0.0};
    double std_rate{0.0};
    double mean_coverage{0.0};
    double mean_wall_clock{0.0};
    double std_wall_clock{0.0};
    double rate_vs_vf_pud{std::nan("")};
    double time_vs_vf_pud{std::nan("")};
};

/// Means and population standard deviations per (algorithm, ue_count) over
/// successful runs, with rate and time ratios against the vf-pud group of
/// the same UE count.
inline std::vector<SummaryRow> summarize(const std::vector<RunReport>& reports)
{
    if (reports.empty()) throw std::invalid_argument("summarize: no reports");
    std::map<std::pair<std::size_t, std::string>, std::vector<const RunReport*>> groups;
    std::map<std::pair<std::size_t, std::string>, std::size_t> failures;
    for (const auto& r : reports) {
        const auto key = std::make_pair(r.ue_count, r.algorithm);
        if (r.ok) groups[key].push_back(&r);
        else { groups[key]; ++failures[key]; }
    }
    auto mean_std = [](const std::vector<double>& v) {
        if (v.empty()) return std::make_pair(std::nan(""), std::nan(""));
        double m = 0.0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - m) * (x - m);
        return std::make_pair(m, std::sqrt(var / static_cast<double>(v.size())));
    };

    std::vector<SummaryRow> rows;
    for (const auto& [key, runs] : groups) {
        SummaryRow row;
        row.ue_count = key.first;
        row.algorithm = key.second;
        row.runs = runs.size();
        row.failed = failures[key];
        std::vector<double> rate, cov, time;
        for (const auto* r : runs) {
            rate.push_back(r->total_rate);
            cov.push_back(r->coverage);
            time.push_back(r->wall_clock);
        }
        std::tie(row.mean_rate, row.std_rate) = mean_std(rate);
        row.mean_coverage = mean_std(cov).first;
        std::tie(row.mean_wall_clock, row.std_wall_clock) = mean_std(time);
        rows.push_back(row);
    }
    for (auto& row : rows) {
        auto ref = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& r) {
            return r.ue_count == row.ue_count && r.algorithm == to_string(Algorithm::vf_pud);
        });
        if (ref == rows.end()) continue;
        row.rate_vs_vf_pud = row.mean_rate / ref->mean_rate;
        row.time_vs_vf_pud = row.mean_wall_clock / ref->mean_wall_clock;
    }
    return rows;
}

inline constexpr const char* summary_header = "algorithm,ue_count,runs,failed,mean_rate_bps,std_rate_bps,"
                                              "mean_coverage,mean_wall_clock_s,std_wall_clock_s,"
                                              "rate_vs_vf_pud,time_vs_vf_pud";

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows)
{
    os << summary_header << '\n';
    for (const auto& r : rows) {
        os << r.algorithm << ',' << r.ue_count << ',' << r.runs << ',' << r.failed << ','
           << format_double(r.mean_rate) << ',' << format_double(r.std_rate) << ',' << format_double(r.mean_coverage)
           << ',' << format_double(r.mean_wall_clock) << ',' << format_double(r.std_wall_clock) << ','
           << format_double(r.rate_vs_vf_pud) << ',' << format_double(r.time_vs_vf_pud) << '\n';
    }
}

/// Summary of the reports written to `out` as CSV.
inline std::vector<SummaryRow> emit_summary(const std::vector<RunReport>& reports, const std::filesystem::path& out)
{
    auto rows = summarize(reports);
    std::ofstream os(out, std::ios::binary);
    if (!os) throw error("cannot write summary file '" + out.string() + "'");
    write_summary_csv(os, rows);
    return rows;
}

} // namespace uavplan

#endif // UAVPLAN_HARNESS_HPP
