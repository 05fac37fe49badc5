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

#include <vector>

#include "irssec/channel.hpp"

namespace irssec {

/// Noise variances and power budget shared by both sub-problems.
struct LinkBudget {
    double sigma_r2 = 0.0;
    double sigma_e2 = 0.0;
    double p_bs = 0.0;

    static LinkBudget from(const ScenarioConfig& cfg) { return {cfg.sigma_r2, cfg.sigma_e2, cfg.P_BS}; }
    void validate() const;
};

/// Transmit beamformer plus one unit-modulus phase vector per IRS.
struct BeamformingState {
    CVector w;                  // M
    std::vector<CVector> theta; // L vectors of N unit-modulus entries (alpha_l)
    double achieved_rs = 0.0;   // bits/s/Hz

    /// Power budget (1e-9 relative) and unit modulus (1e-9) checks.
    bool feasible(double p_bs) const;
};

/// All-ones phases (Theta_l = I) for every IRS of the channel set.
std::vector<CVector> identity_phases(const ChannelSet& ch);

/// sum_l h_rl^H diag(alpha_l) F_l + h_d^H as a 1 x M row.
CRow effective_user_channel(const ChannelSet& ch, const std::vector<CVector>& theta);

/// sum_l g_rl^H diag(alpha_l) F_l + g_d^H as a 1 x M row.
CRow effective_eve_channel(const ChannelSet& ch, const std::vector<CVector>& theta);

/// log2(1 + |h_eff w|^2 / sigma2). Throws DomainError for sigma2 <= 0.
double achievable_rate(const CRow& h_eff, const CVector& w, double sigma2);

struct RateReport {
    double user = 0.0;  // R_r
    double eve = 0.0;   // R_e
    double secrecy() const { return user > eve ? user - eve : 0.0; }
    // R_r - R_e without the hinge; orders candidates even when both rates tie at zero secrecy.
    double margin() const { return user - eve; }
};

RateReport rates(const ChannelSet& ch, const CVector& w, const std::vector<CVector>& theta,
                 double sigma_r2, double sigma_e2);

/// [R_r - R_e]^+ for the given state.
double secrecy_rate(const ChannelSet& ch, const BeamformingState& state, const ScenarioConfig& cfg);

/// (1 + |h w|^2 / sigma_r2) / (1 + |g w|^2 / sigma_e2); log2 of it is R_r - R_e.
double fractional_objective(const CRow& h_user, const CRow& g_eve, const CVector& w,
                            double sigma_r2, double sigma_e2);

} // namespace irssec
