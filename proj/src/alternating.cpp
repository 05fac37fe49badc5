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
#include "irssec/alternating.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace irssec {

namespace {

CVector initial_beamformer(const ChannelSet& ch, double p_bs) {
    if (ch.h_d.norm() > 0.0)
        return mrt_beamformer(ch.h_d, p_bs);
    const auto m = ch.h_d.size();
    return CVector::Constant(m, Complex(std::sqrt(p_bs / static_cast<double>(m)), 0.0));
}

std::vector<CVector> initial_phases(const ChannelSet& ch, PhaseInit init, Rng& rng) {
    std::vector<CVector> theta = identity_phases(ch);
    if (init == PhaseInit::Random) {
        std::uniform_real_distribution<double> ud(0.0, 2.0 * kPi);
        for (auto& a : theta)
            for (Eigen::Index n = 0; n < a.size(); ++n)
                a[n] = std::polar(1.0, ud(rng));
    }
    return theta;
}

void note_residuals(IterationRecord& rec, const sdp::SdpSolution& raw) {
    rec.primal_residual = std::max(rec.primal_residual, raw.primal_residual);
    rec.dual_residual = std::max(rec.dual_residual, raw.dual_residual);
}

} // namespace

void OptimizerConfig::validate() const {
    if (!(epsilon > 0.0))
        throw DomainError("epsilon must be positive");
    if (max_outer_iters < 1)
        throw DomainError("max_outer_iters must be at least 1");
    if (trials < 0)
        throw DomainError("trials must be non-negative");
}

std::vector<double> OptimizationTrace::rs_history() const {
    std::vector<double> out{initial_rs};
    for (const auto& r : records)
        out.push_back(r.rs);
    return out;
}

bool converged(const std::vector<double>& h, double epsilon) {
    if (h.size() < 2)
        throw std::invalid_argument("converged() needs at least two R_s values");
    const double prev = h[h.size() - 2];
    const double cur = h.back();
    if (prev == 0.0)
        return cur == 0.0;
    return std::abs(cur - prev) / std::abs(prev) <= epsilon;
}

OptimizationTrace optimize(const ChannelSet& ch, const ScenarioConfig& cfg, const OptimizerConfig& ocfg,
                           Rng& rng) {
    ch.validate();
    cfg.validate();
    ocfg.validate();
    const LinkBudget budget = LinkBudget::from(cfg);
    using Clock = std::chrono::steady_clock;

    OptimizationTrace trace;
    BeamformingState& st = trace.final_state;
    st.w = initial_beamformer(ch, budget.p_bs);
    st.theta = initial_phases(ch, ocfg.init, rng);
    RateReport cur = rates(ch, st.w, st.theta, budget.sigma_r2, budget.sigma_e2);
    trace.initial_rs = cur.secrecy();
    st.achieved_rs = trace.initial_rs;

    const bool no_irs = ch.L() == 0;
    try {
        for (int it = 1; it <= ocfg.max_outer_iters; ++it) {
            const auto t0 = Clock::now();
            IterationRecord rec;
            rec.iteration = it;

            if (!ocfg.fix_beamformer) {
                const CRow h = effective_user_channel(ch, st.theta);
                const CRow g = effective_eve_channel(ch, st.theta);
                const Cct1Solution s1 = solve_p1(h, g, budget, ocfg.solver);
                note_residuals(rec, s1.raw);
                const CVector w = recover_w(s1, h, g, budget, rng, ocfg.trials);
                const RateReport cand = rates(ch, w, st.theta, budget.sigma_r2, budget.sigma_e2);
                if (cand.margin() >= cur.margin()) {
                    st.w = w;
                    cur = cand;
                    rec.w_accepted = true;
                }
            }
            rec.rs_after_w = cur.secrecy();

            if (!no_irs) {
                const ReducedChannels rc = build_reduced_channels(ch, st.w);
                const Cct2Solution s2 = solve_p2(rc, budget.sigma_r2, budget.sigma_e2, ocfg.solver);
                note_residuals(rec, s2.raw);
                std::vector<CVector> theta = recover_phases(s2, rc, budget.sigma_r2, budget.sigma_e2, rng, ocfg.trials);
                const RateReport cand = rates(ch, st.w, theta, budget.sigma_r2, budget.sigma_e2);
                if (cand.margin() >= cur.margin()) {
                    st.theta = std::move(theta);
                    cur = cand;
                    rec.theta_accepted = true;
                }
            }

            rec.rs = cur.secrecy();
            rec.rr = cur.user;
            rec.re = cur.eve;
            rec.w_norm2 = st.w.squaredNorm();
            rec.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
            trace.records.push_back(rec);
            trace.iterations_used = it;
            st.achieved_rs = rec.rs;

            if (no_irs || converged(trace.rs_history(), ocfg.epsilon)) {
                trace.converged = true;
                break;
            }
        }
    } catch (const std::exception& e) {
        trace.status = TraceStatus::SolverFailure;
        trace.message = e.what();
    }
    return trace;
}

void write_trace_csv(std::ostream& os, const OptimizationTrace& trace) {
    const auto prec = os.precision(17);
    os << "iteration,Rs,Rr,Re,Rs_after_w,w_norm2,w_accepted,theta_accepted,primal_residual,dual_residual,"
          "wall_seconds\n";
    os << "0," << trace.initial_rs << ",,,,,,,,,\n";
    for (const auto& r : trace.records)
        os << r.iteration << ',' << r.rs << ',' << r.rr << ',' << r.re << ',' << r.rs_after_w << ','
           << r.w_norm2 << ',' << (r.w_accepted ? 1 : 0) << ',' << (r.theta_accepted ? 1 : 0) << ','
           << r.primal_residual << ',' << r.dual_residual << ',' << r.wall_seconds << '\n';
    os.precision(prec);
}

} // namespace irssec
