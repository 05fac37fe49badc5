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

#include <iosfwd>
#include <string>
#include <vector>

#include "irssec/active_beamforming.hpp"
#include "irssec/passive_beamforming.hpp"

namespace irssec {

enum class PhaseInit { Identity, Random };

struct OptimizerConfig {
    double epsilon = 1e-3;
    int max_outer_iters = 30;
    int trials = 100;                  // Gaussian randomization draws per sub-problem
    PhaseInit init = PhaseInit::Identity;
    bool fix_beamformer = false;       // keep w at MRT and only update the phases
    sdp::SolverOptions solver;

    /// Throws DomainError for epsilon <= 0, max_outer_iters < 1 or trials < 0.
    void validate() const;
};

struct IterationRecord {
    int iteration = 0;           // 1-based outer iteration
    double rs = 0.0;             // after both updates
    double rr = 0.0;
    double re = 0.0;
    double rs_after_w = 0.0;     // after the beamformer update only
    double w_norm2 = 0.0;
    bool w_accepted = false;
    bool theta_accepted = false;
    double primal_residual = 0.0; // worst of the solves in this iteration
    double dual_residual = 0.0;
    double wall_seconds = 0.0;
};

enum class TraceStatus { Ok, SolverFailure };

struct OptimizationTrace {
    double initial_rs = 0.0;     // R_s at (w0, theta0)
    std::vector<IterationRecord> records;
    BeamformingState final_state;
    bool converged = false;
    int iterations_used = 0;
    TraceStatus status = TraceStatus::Ok;
    std::string message;

    /// initial_rs followed by every record's rs.
    std::vector<double> rs_history() const;
};

/// Relative-change stopping rule on the last two entries of an R_s history:
/// |R_i - R_{i-1}| / R_{i-1} <= epsilon, and R_{i-1} = 0 counts as converged
/// only when R_i = 0. Throws std::invalid_argument for fewer than two entries.
bool converged(const std::vector<double>& rs_history, double epsilon);

/// Alternates beamformer and phase updates from theta = identity (or random)
/// and w = MRT on h_d. A candidate replaces the incumbent only when it does not
/// lower R_r - R_e, so R_s never decreases. With no IRS the result is a single
/// beamformer solve. Solver exceptions end the run with status SolverFailure
/// and the history so far.
OptimizationTrace optimize(const ChannelSet& ch, const ScenarioConfig& cfg, const OptimizerConfig& ocfg,
                           Rng& rng);

/// Row per iteration:
/// iteration,Rs,Rr,Re,Rs_after_w,w_norm2,w_accepted,theta_accepted,primal_residual,dual_residual,wall_seconds
/// Iteration 0 carries the initial point with empty solver columns.
void write_trace_csv(std::ostream& os, const OptimizationTrace& trace);

} // namespace irssec
