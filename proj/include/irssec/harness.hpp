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
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "irssec/alternating.hpp"

namespace irssec {

enum class Method { Optimal, Mrt, NoIrs };

std::string to_string(Method m);
/// Accepts "optimal", "mrt", "no_irs". Throws std::invalid_argument.
Method parse_method(const std::string& s);

enum class SweepParam { P_BS, M, N, L };

std::string to_string(SweepParam p);
/// Accepts "P_BS", "M", "N", "L". Throws std::invalid_argument.
SweepParam parse_sweep_param(const std::string& s);

/// Returns cfg with one parameter replaced; P_BS values are in dBm.
ScenarioConfig apply_param(ScenarioConfig cfg, SweepParam p, double value);

// Trial seeds. SplitMix64 seeded with the master seed; output 2t seeds the
// channel draw of trial t and output 2t + 1 its randomization stream. The
// seeds depend on (master, t) only, so every method and every swept value
// sees the same channel prefix for a given trial.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t channel_seed(std::uint64_t master, int trial);
std::uint64_t optimizer_seed(std::uint64_t master, int trial);

struct TrialResult {
    bool ok = false;
    double rs = 0.0;
    double rr = 0.0;
    double re = 0.0;
    int iterations = 0;
    double wall_seconds = 0.0;
    std::string message;
};

/// One channel realization through one method. no_irs drops every IRS,
/// mrt keeps w at MRT and only updates the phases.
TrialResult run_trial(const ScenarioConfig& cfg, Method method, const OptimizerConfig& ocfg,
                      std::uint64_t master_seed, int trial);

/// Same on a given channel set (no_irs ignores its IRS links).
TrialResult run_method(const ChannelSet& ch, const ScenarioConfig& cfg, Method method,
                       const OptimizerConfig& ocfg, Rng& rng);

struct PointStats {
    int trials = 0;  // requested
    int failed = 0;  // excluded from the means
    double mean_rs = 0.0;
    double stderr_rs = 0.0;
    double mean_re = 0.0;
    double stderr_re = 0.0;
    double mean_iters = 0.0;
    double mean_wall_seconds = 0.0;
};

using WarningSink = std::function<void(const std::string&)>;

/// Trials 0..trials-1, fanned out over `workers` threads. Aggregation runs in
/// trial order, so the result does not depend on the worker count. Failed
/// trials are reported through `warn` (stderr when empty).
PointStats run_point(const ScenarioConfig& cfg, Method method, const OptimizerConfig& ocfg, int trials,
                     std::uint64_t master_seed, int workers = 1, const WarningSink& warn = {});

struct SweepSpec {
    SweepParam param = SweepParam::P_BS;
    std::vector<double> values;
    std::vector<Method> methods{Method::Optimal};
    int trials = 200;
    ScenarioConfig base;
    OptimizerConfig optimizer;
    std::uint64_t seed = 1;
    int workers = 1;

    void validate() const;
};

struct SweepRow {
    Method method = Method::Optimal;
    SweepParam param = SweepParam::P_BS;
    double value = 0.0;
    PointStats stats;
};

/// Rows ordered by method, then value.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const WarningSink& warn = {});

/// method,swept_param,value,mean_Rs,stderr_Rs,mean_Re,mean_iters,trials
/// where trials counts the successful ones. Wall time is left out so equal
/// seeds give byte-identical files.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct ConvergenceRun {
    std::uint64_t seed = 0;
    OptimizationTrace trace;
};

/// One optimize() run per seed; seed s draws the channel from channel_seed(s, 0)
/// and randomization from optimizer_seed(s, 0).
std::vector<ConvergenceRun> run_convergence(const ScenarioConfig& cfg, const OptimizerConfig& ocfg,
                                            const std::vector<std::uint64_t>& seeds);

/// seed,iteration,Rs,Rr,Re,converged with iteration 0 the initial point;
/// converged is 1 on the row where the stopping rule was met.
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRun>& runs);

} // namespace irssec
