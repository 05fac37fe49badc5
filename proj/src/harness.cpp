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
#include "irssec/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <thread>

namespace irssec {

std::string to_string(Method m) {
    switch (m) {
    case Method::Optimal:
        return "optimal";
    case Method::Mrt:
        return "mrt";
    case Method::NoIrs:
        return "no_irs";
    }
    return "unknown";
}

Method parse_method(const std::string& s) {
    if (s == "optimal")
        return Method::Optimal;
    if (s == "mrt")
        return Method::Mrt;
    if (s == "no_irs")
        return Method::NoIrs;
    throw std::invalid_argument("unknown method '" + s + "' (expected optimal, mrt or no_irs)");
}

std::string to_string(SweepParam p) {
    switch (p) {
    case SweepParam::P_BS:
        return "P_BS";
    case SweepParam::M:
        return "M";
    case SweepParam::N:
        return "N";
    case SweepParam::L:
        return "L";
    }
    return "unknown";
}

SweepParam parse_sweep_param(const std::string& s) {
    if (s == "P_BS")
        return SweepParam::P_BS;
    if (s == "M")
        return SweepParam::M;
    if (s == "N")
        return SweepParam::N;
    if (s == "L")
        return SweepParam::L;
    throw std::invalid_argument("unknown sweep parameter '" + s + "' (expected P_BS, M, N or L)");
}

ScenarioConfig apply_param(ScenarioConfig cfg, SweepParam p, double value) {
    if (!std::isfinite(value))
        throw std::invalid_argument("sweep value must be finite");
    const auto as_int = [&](const char* name) {
        if (value != std::round(value))
            throw std::invalid_argument(std::string(name) + " must be an integer");
        return static_cast<int>(value);
    };
    switch (p) {
    case SweepParam::P_BS:
        cfg.P_BS = dbm_to_watt(value);
        break;
    case SweepParam::M:
        cfg.M = as_int("M");
        break;
    case SweepParam::N: {
        const int n = as_int("N");
        if (n < 1)
            throw std::invalid_argument("N must be positive");
        cfg.set_elements(n);
        break;
    }
    case SweepParam::L:
        cfg.L = as_int("L");
        break;
    }
    return cfg;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::uint64_t nth_output(std::uint64_t master, std::uint64_t k) {
    std::uint64_t state = master + k * 0x9E3779B97F4A7C15ULL;
    return splitmix64(state);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2)
        return 0.0;
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    const double n = static_cast<double>(v.size());
    return std::sqrt(ss / (n - 1.0) / n);
}

} // namespace

std::uint64_t channel_seed(std::uint64_t master, int trial) {
    return nth_output(master, 2 * static_cast<std::uint64_t>(trial));
}

std::uint64_t optimizer_seed(std::uint64_t master, int trial) {
    return nth_output(master, 2 * static_cast<std::uint64_t>(trial) + 1);
}

TrialResult run_method(const ChannelSet& ch, const ScenarioConfig& cfg, Method method,
                       const OptimizerConfig& ocfg, Rng& rng) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialResult res;
    try {
        OptimizerConfig o = ocfg;
        ScenarioConfig c = cfg;
        ChannelSet direct_only;
        const ChannelSet* use = &ch;
        if (method == Method::NoIrs) {
            direct_only.h_d = ch.h_d;
            direct_only.g_d = ch.g_d;
            direct_only.geometry = ch.geometry;
            direct_only.geometry.irs.clear();
            c.L = 0;
            use = &direct_only;
        } else if (method == Method::Mrt) {
            o.fix_beamformer = true;
        }
        const OptimizationTrace tr = optimize(*use, c, o, rng);
        res.iterations = tr.iterations_used;
        if (tr.status != TraceStatus::Ok) {
            res.message = tr.message;
        } else {
            const RateReport r = rates(*use, tr.final_state.w, tr.final_state.theta, c.sigma_r2, c.sigma_e2);
            res.rs = r.secrecy();
            res.rr = r.user;
            res.re = r.eve;
            res.ok = true;
        }
    } catch (const std::exception& e) {
        res.message = e.what();
    }
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

TrialResult run_trial(const ScenarioConfig& cfg, Method method, const OptimizerConfig& ocfg,
                      std::uint64_t master_seed, int trial) {
    try {
        ScenarioConfig c = cfg;
        if (method == Method::NoIrs)
            c.L = 0;
        c.validate();
        Rng chan_rng(channel_seed(master_seed, trial));
        const ChannelSet ch = sample_network(c, chan_rng);
        Rng opt_rng(optimizer_seed(master_seed, trial));
        return run_method(ch, c, method, ocfg, opt_rng);
    } catch (const std::exception& e) {
        TrialResult res;
        res.message = e.what();
        return res;
    }
}

PointStats run_point(const ScenarioConfig& cfg, Method method, const OptimizerConfig& ocfg, int trials,
                     std::uint64_t master_seed, int workers, const WarningSink& warn) {
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (workers < 1)
        throw std::invalid_argument("workers must be at least 1");

    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    const auto work = [&] {
        for (int t = next++; t < trials; t = next++)
            results[static_cast<std::size_t>(t)] = run_trial(cfg, method, ocfg, master_seed, t);
    };
    const int n_threads = std::min(workers, trials);
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }

    PointStats st;
    st.trials = trials;
    std::vector<double> rs, re;
    double iters = 0.0;
    double wall = 0.0;
    for (int t = 0; t < trials; ++t) {
        const TrialResult& r = results[static_cast<std::size_t>(t)];
        if (!r.ok) {
            ++st.failed;
            const std::string msg = "trial " + std::to_string(t) + " (" + to_string(method) + ") failed: " + r.message;
            if (warn)
                warn(msg);
            else
                std::cerr << "warning: " << msg << '\n';
            continue;
        }
        rs.push_back(r.rs);
        re.push_back(r.re);
        iters += r.iterations;
        wall += r.wall_seconds;
    }
    const auto ok = static_cast<double>(rs.size());
    st.mean_rs = mean_of(rs);
    st.stderr_rs = stderr_of(rs, st.mean_rs);
    st.mean_re = mean_of(re);
    st.stderr_re = stderr_of(re, st.mean_re);
    st.mean_iters = ok > 0 ? iters / ok : 0.0;
    st.mean_wall_seconds = ok > 0 ? wall / ok : 0.0;
    return st;
}

void SweepSpec::validate() const {
    if (values.empty())
        throw std::invalid_argument("sweep needs at least one value");
    if (methods.empty())
        throw std::invalid_argument("sweep needs at least one method");
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (workers < 1)
        throw std::invalid_argument("workers must be at least 1");
    for (double v : values)
        apply_param(base, param, v).validate();
    optimizer.validate();
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const WarningSink& warn) {
    spec.validate();
    std::vector<SweepRow> rows;
    for (Method m : spec.methods)
        for (double v : spec.values) {
            SweepRow row;
            row.method = m;
            row.param = spec.param;
            row.value = v;
            row.stats = run_point(apply_param(spec.base, spec.param, v), m, spec.optimizer, spec.trials, spec.seed,
                                  spec.workers, warn);
            rows.push_back(row);
        }
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    const auto prec = os.precision(12);
    os << "method,swept_param,value,mean_Rs,stderr_Rs,mean_Re,mean_iters,trials\n";
    for (const auto& r : rows)
        os << to_string(r.method) << ',' << to_string(r.param) << ',' << r.value << ',' << r.stats.mean_rs << ','
           << r.stats.stderr_rs << ',' << r.stats.mean_re << ',' << r.stats.mean_iters << ','
           << (r.stats.trials - r.stats.failed) << '\n';
    os.precision(prec);
}

std::vector<ConvergenceRun> run_convergence(const ScenarioConfig& cfg, const OptimizerConfig& ocfg,
                                            const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty())
        throw std::invalid_argument("convergence run needs at least one seed");
    cfg.validate();
    std::vector<ConvergenceRun> out;
    for (std::uint64_t s : seeds) {
        Rng chan_rng(channel_seed(s, 0));
        const ChannelSet ch = sample_network(cfg, chan_rng);
        Rng opt_rng(optimizer_seed(s, 0));
        out.push_back({s, optimize(ch, cfg, ocfg, opt_rng)});
    }
    return out;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRun>& runs) {
    const auto prec = os.precision(12);
    os << "seed,iteration,Rs,Rr,Re,converged\n";
    for (const auto& run : runs) {
        os << run.seed << ",0," << run.trace.initial_rs << ",,,0\n";
        for (const auto& r : run.trace.records) {
            const bool stop = run.trace.converged && r.iteration == run.trace.iterations_used;
            os << run.seed << ',' << r.iteration << ',' << r.rs << ',' << r.rr << ',' << r.re << ','
               << (stop ? 1 : 0) << '\n';
        }
    }
    os.precision(prec);
}

} // namespace irssec
