// SPDX-License-Identifier: Apache-2.0
//
// irssec: secrecy-rate optimization for multi-IRS mmWave downlinks
// Copyright (C) 2026 irssec contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
// Command-line experiment runner: point, sweep, convergence and dump-sdp.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "irssec/config.hpp"
#include "irssec/harness.hpp"

using namespace irssec;

namespace {

struct Common {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    int workers = 0;
    std::string out;
};

RunConfig resolve(const Common& c) {
    RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
    if (c.seed_set)
        cfg.run.seed = c.seed;
    if (c.trials > 0)
        cfg.run.trials = c.trials;
    if (c.workers > 0)
        cfg.run.workers = c.workers;
    cfg.validate();
    return cfg;
}

std::vector<Method> parse_methods(const std::string& list) {
    std::vector<Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(parse_method(item));
    if (out.empty())
        throw std::invalid_argument("empty method list");
    return out;
}

void parse_sweep(const std::string& text, SweepSpec& spec) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--sweep expects param:v1,v2,...");
    spec.param = parse_sweep_param(text.substr(0, colon));
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size())
            throw std::invalid_argument("bad sweep value '" + item + "'");
        spec.values.push_back(v);
    }
}

// Writes to --out or stdout.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write(f);
    if (!f)
        throw std::runtime_error("write to '" + path + "' failed");
}

int failed_trials(const std::vector<SweepRow>& rows) {
    int n = 0;
    for (const auto& r : rows)
        n += r.stats.failed;
    return n;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option_function<std::uint64_t>(
        "--seed", [&c](const std::uint64_t& s) { c.seed = s; c.seed_set = true; }, "master seed");
    sub->add_option("--trials", c.trials, "trials per point (convergence: number of seeds)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "output CSV path (default stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy-rate optimization for multi-IRS mmWave downlinks"};
    app.require_subcommand(1);

    Common common;
    std::string methods = "optimal";
    std::string sweep_text;
    std::string which = "p1";

    auto* point = app.add_subcommand("point", "Monte Carlo statistics at one operating point");
    add_common(point, common);
    point->add_option("--method", methods, "comma-separated list of optimal, mrt, no_irs");

    auto* sweep = app.add_subcommand("sweep", "parameter sweep, one CSV row per method and value");
    add_common(sweep, common);
    sweep->add_option("--method", methods, "comma-separated list of optimal, mrt, no_irs");
    sweep->add_option("--sweep", sweep_text, "param:v1,v2,... with param one of P_BS (dBm), M, N, L")->required();

    auto* conv = app.add_subcommand("convergence", "per-iteration secrecy-rate traces, seeds seed..seed+trials-1");
    add_common(conv, common);

    auto* dump = app.add_subcommand("dump-sdp", "write the first sub-problem SDP of one trial as text");
    add_common(dump, common);
    dump->add_option("--which", which, "p1 or p2")->check(CLI::IsMember({"p1", "p2"}));

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = resolve(common);
        const auto warn = [](const std::string& m) { std::cerr << "warning: " << m << '\n'; };

        if (*point || *sweep) {
            SweepSpec spec;
            spec.base = cfg.scenario;
            spec.optimizer = cfg.optimizer;
            spec.trials = cfg.run.trials;
            spec.seed = cfg.run.seed;
            spec.workers = cfg.run.workers;
            spec.methods = parse_methods(methods);
            if (*sweep) {
                parse_sweep(sweep_text, spec);
            } else {
                spec.param = SweepParam::P_BS;
                spec.values = {watt_to_dbm(cfg.scenario.P_BS)};
            }
            const auto rows = run_sweep(spec, warn);
            emit(common.out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
            if (const int f = failed_trials(rows); f > 0) {
                std::cerr << "error: " << f << " trial(s) failed\n";
                return 2;
            }
            return 0;
        }

        if (*conv) {
            std::vector<std::uint64_t> seeds;
            for (int i = 0; i < cfg.run.trials; ++i)
                seeds.push_back(cfg.run.seed + static_cast<std::uint64_t>(i));
            const auto runs = run_convergence(cfg.scenario, cfg.optimizer, seeds);
            emit(common.out, [&](std::ostream& os) { write_convergence_csv(os, runs); });
            int failed = 0;
            for (const auto& r : runs)
                if (r.trace.status != TraceStatus::Ok) {
                    ++failed;
                    std::cerr << "warning: seed " << r.seed << " failed: " << r.trace.message << '\n';
                }
            return failed ? 2 : 0;
        }

        // dump-sdp: initial point of the alternating loop for trial 0.
        Rng chan_rng(channel_seed(cfg.run.seed, 0));
        const ChannelSet ch = sample_network(cfg.scenario, chan_rng);
        const LinkBudget budget = LinkBudget::from(cfg.scenario);
        sdp::SdpProblem problem;
        if (which == "p1") {
            const auto theta = identity_phases(ch);
            problem = build_p1(effective_user_channel(ch, theta), effective_eve_channel(ch, theta), budget);
        } else {
            if (ch.L() == 0)
                throw std::invalid_argument("p2 needs at least one IRS");
            const CVector w = mrt_beamformer(ch.h_d, budget.p_bs);
            problem = build_p2(build_reduced_channels(ch, w), budget.sigma_r2, budget.sigma_e2);
        }
        emit(common.out, [&](std::ostream& os) { sdp::write_problem(os, problem); });
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
