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

#include <uavplan/uavplan.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

// "1,2,5-8" -> {1,2,5,6,7,8}
std::vector<std::uint64_t> parse_seed_list(const std::string& text)
{
    std::vector<std::uint64_t> out;
    auto num = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
            throw CLI::ValidationError("--seeds", "bad seed '" + std::string(s) + "'");
        return v;
    };
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (const auto dash = item.find('-'); dash != std::string_view::npos) {
            const auto lo = num(item.substr(0, dash)), hi = num(item.substr(dash + 1));
            if (hi < lo) throw CLI::ValidationError("--seeds", "empty range '" + std::string(item) + "'");
            for (auto s = lo; s <= hi; ++s) out.push_back(s);
        } else {
            out.push_back(num(item));
        }
    }
    if (out.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
    return out;
}

std::vector<uavplan::Algorithm> parse_algo_list(const std::vector<std::string>& names)
{
    std::vector<uavplan::Algorithm> out;
    for (const auto& list : names) {
        std::string_view rest = list;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto item = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            const auto a = uavplan::parse_algorithm(item);
            if (!a) throw CLI::ValidationError("--algo", "unknown algorithm '" + std::string(item) + "'");
            out.push_back(*a);
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"UAV placement, association and power planning"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run algorithms over a seed set");
    std::string scenario_path, seeds_text, out_dir;
    std::vector<std::string> algo_names;
    std::size_t max_iters = 500, population = 50;
    bool single_thread = false;
    run->add_option("--scenario", scenario_path, "Scenario TOML file")->required()->check(CLI::ExistingFile);
    run->add_option("--algo", algo_names, "vf-pud, vf-pd, vf-d, ga-pud, pso-pud (repeat or comma-separate)")
        ->required();
    run->add_option("--seeds", seeds_text, "Seed list, e.g. 1,2,5-8")->required();
    run->add_option("--max-iters", max_iters, "Iteration budget T")->capture_default_str();
    run->add_option("--population", population, "GA population / PSO swarm size")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_flag("--single-thread", single_thread, "Run all jobs on the calling thread");

    auto* sum = app.add_subcommand("summarize", "Aggregate report*.json files into a CSV table");
    std::string in_dir, out_file;
    sum->add_option("--in", in_dir, "Directory with report files")->required()->check(CLI::ExistingDirectory);
    sum->add_option("--out", out_file, "Summary CSV")->required();

    auto* gen = app.add_subcommand("generate", "Write a random scenario with the reference parameters");
    std::uint64_t gen_seed = 1;
    std::size_t ues = 50, obstacles = 0;
    double path_loss_exponent = -1.0;
    std::string gen_out;
    gen->add_option("--seed", gen_seed)->capture_default_str();
    gen->add_option("--ues", ues)->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--obstacles", obstacles)->capture_default_str();
    gen->add_option("--path-loss-exponent", path_loss_exponent, "Override the path-loss exponent");
    gen->add_option("--out", gen_out, "Scenario TOML file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            uavplan::ExperimentConfig cfg;
            cfg.scenario_label = scenario_path;
            cfg.algorithms = parse_algo_list(algo_names);
            cfg.seeds = parse_seed_list(seeds_text);
            cfg.run.max_iterations = max_iters;
            cfg.run.population = population;
            cfg.out_dir = out_dir;
            cfg.single_thread = single_thread;
            const auto scenario = uavplan::load_scenario(scenario_path);
            const auto reports = uavplan::run_experiment(scenario, cfg);
            int failed = 0;
            for (const auto& r : reports) {
                if (r.ok) {
                    std::cout << r.algorithm << " seed " << r.seed << ": rate " << uavplan::format_double(r.total_rate)
                              << " bps, coverage " << uavplan::format_double(r.coverage) << ", "
                              << r.uav_count << " UAVs, " << r.iterations << " iterations, "
                              << uavplan::format_fixed(r.wall_clock, 3) << " s\n";
                } else {
                    ++failed;
                    std::cerr << r.algorithm << " seed " << r.seed << ": error: " << r.error << '\n';
                }
            }
            std::cout << "wrote " << (std::filesystem::path(out_dir) / "report.json").string() << '\n';
            if (failed > 0) {
                std::cerr << failed << " of " << reports.size() << " runs failed\n";
                return 3;
            }
        } else if (*sum) {
            const auto reports = uavplan::load_reports(in_dir);
            if (reports.empty()) throw uavplan::error("no runs found in '" + in_dir + "'");
            uavplan::emit_summary(reports, out_file);
            std::cout << "wrote " << out_file << '\n';
        } else if (*gen) {
            auto params = uavplan::reference_params();
            if (path_loss_exponent >= 0.0) params.channel.path_loss_exponent = path_loss_exponent;
            uavplan::save_scenario(uavplan::generate_random_scenario(gen_seed, ues, obstacles, params), gen_out);
            std::cout << "wrote " << gen_out << '\n';
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "plan: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
