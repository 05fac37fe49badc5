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

#include "irssec/metrics.hpp"
#include "irssec/sdp.hpp"

namespace irssec {

// IRS phase design for a fixed transmit beamformer. Each IRS is lifted to
// x_l = [conj(alpha_l); 1/L] so that the received user signal is
// sum_l x_l^H h'_l with h'_l = [diag(h_rl^H) F_l w; h_d^H w].

struct ReducedChannels {
    std::vector<CVector> h_prime; // L vectors of N + 1
    std::vector<CVector> g_prime; // L vectors of N + 1

    int L() const { return static_cast<int>(h_prime.size()); }
    int N() const { return h_prime.empty() ? 0 : static_cast<int>(h_prime.front().size()) - 1; }
};

ReducedChannels build_reduced_channels(const ChannelSet& ch, const CVector& w);

/// Diagonal selector pinning one entry of X_l = x_l x_l^H. Indices are
/// 0-based: i < N selects |alpha_{l,i}|^2 = 1, i = N carries the L^2 weight
/// that fixes |1/L|^2.
struct SelectorMatrix {
    int index = 0;
    RVector diagonal;

    RMatrix dense() const { return diagonal.asDiagonal(); }
};

/// Throws std::out_of_range unless 0 <= i <= N.
SelectorMatrix build_selector(int i, int N, int L);

/// Lifted vectors x_l = [conj(alpha_l); 1/L].
std::vector<CVector> lift_phases(const std::vector<CVector>& theta);

/// Inverse of lift_phases for unit-modulus extraction from arbitrary vectors:
/// alpha_n = exp(j arg(u_{N+1} / u_n)).
CVector phases_from_lifted(const CVector& u);

// Charnes-Cooper form with T_l = lambda X_l:
//
//     maximize   lambda + sum_l h'_l^H T_l h'_l / sigma_r2
//     subject to lambda + sum_l g'_l^H T_l g'_l / sigma_e2 = 1
//                tr(S_i T_l) = lambda   for all i, l
//                T_l PSD,   lambda >= 0.

/// Blocks 0..L-1 are real_embed(T_l) (size 2(N+1)); block L is lambda.
sdp::SdpProblem build_p2(const ReducedChannels& rc, double sigma_r2, double sigma_e2);

struct Cct2Solution {
    std::vector<CMatrix> T;
    double lambda = 0.0;
    std::vector<CMatrix> X; // T_l / lambda
    double objective = 0.0;
    sdp::SdpSolution raw;
};

Cct2Solution solve_p2(const ReducedChannels& rc, double sigma_r2, double sigma_e2,
                      const sdp::SolverOptions& opts = {});

/// Per-IRS decoupled ratio
/// (1 + sum_l |x_l^H h'_l|^2 / sigma_r2) / (1 + sum_l |x_l^H g'_l|^2 / sigma_e2).
double surrogate_objective(const std::vector<CVector>& x_list, const ReducedChannels& rc,
                           double sigma_r2, double sigma_e2);

/// Exact ratio with the coherent sum |sum_l x_l^H h'_l|^2 (and likewise for g').
double exact_objective(const std::vector<CVector>& x_list, const ReducedChannels& rc,
                       double sigma_r2, double sigma_e2);

/// User and eavesdropper rates for lifted vectors, via the exact reconstruction.
RateReport reduced_rates(const std::vector<CVector>& x_list, const ReducedChannels& rc,
                         double sigma_r2, double sigma_e2);

/// Unit-modulus phases from the relaxed X_l = T_l / lambda. The principal
/// eigenvectors form the first joint candidate, followed by `trials` joint
/// Gaussian draws (one per IRS per trial). Candidates are ranked by the
/// secrecy margin R_r - R_e with w fixed; the best one is returned.
/// Throws DomainError for lambda <= 0.
std::vector<CVector> recover_phases(const Cct2Solution& sol, const ReducedChannels& rc,
                                    double sigma_r2, double sigma_e2, Rng& rng, int trials = 100);

} // namespace irssec
