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

#include "irssec/metrics.hpp"
#include "irssec/sdp.hpp"

namespace irssec {

// Transmit beamforming for fixed IRS phases: semidefinite relaxation of the
// fractional SNR ratio, linearized by the Charnes-Cooper substitution
// T = gamma W, gamma = 1 / (1 + g W g^H / sigma_e2):
//
//     maximize   gamma + h T h^H / sigma_r2
//     subject to gamma + g T g^H / sigma_e2 = 1
//                tr(T) <= gamma P_BS,   T PSD,   gamma >= 0.

struct Cct1Solution {
    CMatrix T;           // M x M Hermitian PSD
    double gamma = 0.0;
    CMatrix W;           // T / gamma
    double rank1_ratio = 0.0; // lambda_2(W) / lambda_1(W)
    double objective = 0.0;   // gamma + h T h^H / sigma_r2
    sdp::SdpSolution raw;
};

/// Standard-form problem. Block 0 is real_embed(T / P_BS) (size 2M), block 1
/// is gamma; the power row is an inequality. Throws DimensionError for empty
/// or mismatched channels.
sdp::SdpProblem build_p1(const CRow& h_user, const CRow& g_eve, const LinkBudget& budget);

/// Builds, solves and undoes the scaling and the substitution.
Cct1Solution solve_p1(const CRow& h_user, const CRow& g_eve, const LinkBudget& budget,
                      const sdp::SolverOptions& opts = {});

/// Ratio of the two largest eigenvalues of a Hermitian PSD matrix (0 for a zero matrix).
double rank_one_ratio(const CMatrix& W);

/// Rotates w so its first nonzero entry is real and positive.
void normalize_phase(CVector& w);

/// Rank-one beamformer from the relaxed W. A numerically rank-one W
/// (ratio <= 1e-6) yields its principal eigenvector; otherwise the principal
/// eigenvector and `trials` Gaussian draws U Sigma^(1/2) r compete on the
/// fractional objective. Every candidate is scaled to ||w||^2 = min(tr W, P_BS).
CVector recover_w(const Cct1Solution& sol, const CRow& h_user, const CRow& g_eve,
                  const LinkBudget& budget, Rng& rng, int trials = 100);

/// sqrt(P_BS) h_d / ||h_d||. Throws DomainError for a zero channel.
CVector mrt_beamformer(const CVector& h_d, double p_bs);

/// Full-power maximizer of the fractional objective: sqrt(P_BS) times the
/// principal generalized eigenvector of (I/P + h^H h / sigma_r2, I/P + g^H g / sigma_e2).
CVector geig_oracle(const CRow& h_user, const CRow& g_eve, const LinkBudget& budget);

} // namespace irssec
