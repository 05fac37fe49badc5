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

#include "irssec/active_beamforming.hpp"

#include <cmath>

namespace irssec {

namespace {

sdp::SparseMatrix sparse(const RMatrix& m) { return m.sparseView(); }

CVector complex_gaussian(Eigen::Index n, Rng& rng) {
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    CVector r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = nd(rng);
        const double im = nd(rng);
        r[i] = {re, im};
    }
    return r;
}

void check_channels(const CRow& h_user, const CRow& g_eve) {
    if (h_user.size() == 0 || h_user.size() != g_eve.size())
        throw DimensionError("user and eavesdropper channels must be non-empty and of equal length");
}

} // namespace

sdp::SdpProblem build_p1(const CRow& h_user, const CRow& g_eve, const LinkBudget& budget) {
    check_channels(h_user, g_eve);
    budget.validate();
    const auto M = static_cast<int>(h_user.size());

    sdp::SdpProblem p;
    const std::size_t t_block = p.add_block(2 * M);
    const std::size_t g_block = p.add_block(1);

    // Re(h T h^H) = tr(embed(h^H h) embed(T)) / 2, with T = P_BS * block 0.
    const CMatrix Hh = h_user.adjoint() * h_user;
    const CMatrix Gg = g_eve.adjoint() * g_eve;
    p.objective[t_block] = (0.5 * budget.p_bs / budget.sigma_r2) * sdp::real_embed(Hh);
    p.objective[g_block](0, 0) = 1.0;

    sdp::Constraint normalization;
    normalization.terms.push_back(
        {t_block, sparse((0.5 * budget.p_bs / budget.sigma_e2) * sdp::real_embed(Gg))});
    normalization.terms.push_back({g_block, sparse(RMatrix::Ones(1, 1))});
    normalization.rhs = 1.0;
    p.constraints.push_back(std::move(normalization));

    // tr(T) / P_BS - gamma <= 0
    sdp::Constraint power;
    power.terms.push_back({t_block, sparse(0.5 * RMatrix::Identity(2 * M, 2 * M))});
    power.terms.push_back({g_block, sparse(-RMatrix::Ones(1, 1))});
    power.rhs = 0.0;
    power.relation = sdp::Relation::LessEqual;
    p.constraints.push_back(std::move(power));
    return p;
}

double rank_one_ratio(const CMatrix& W) {
    if (W.rows() < 2)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(W, Eigen::EigenvaluesOnly);
    const RVector& lam = eig.eigenvalues();
    const double l1 = lam[lam.size() - 1];
    if (!(l1 > 0.0))
        return 0.0;
    return std::max(lam[lam.size() - 2], 0.0) / l1;
}

Cct1Solution solve_p1(const CRow& h_user, const CRow& g_eve, const LinkBudget& budget,
                      const sdp::SolverOptions& opts) {
    Cct1Solution out;
    out.raw = sdp::solve(build_p1(h_user, g_eve, budget), opts);
    out.T = budget.p_bs * sdp::complex_recover(out.raw.X[0]);
    out.gamma = out.raw.X[1](0, 0);
    out.W = out.gamma > 0.0 ? CMatrix(out.T / out.gamma) : CMatrix::Zero(out.T.rows(), out.T.cols());
    out.rank1_ratio = rank_one_ratio(out.W);
    out.objective = out.gamma + (h_user * out.T * h_user.adjoint())(0, 0).real() / budget.sigma_r2;
    return out;
}

void normalize_phase(CVector& w) {
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (std::abs(w[i]) > 0.0) {
            w *= std::conj(w[i]) / std::abs(w[i]);
            w[i] = std::abs(w[i]);
            return;
        }
    }
}

CVector recover_w(const Cct1Solution& sol, const CRow& h_user, const CRow& g_eve,
                  const LinkBudget& budget, Rng& rng, int trials) {
    check_channels(h_user, g_eve);
    if (sol.W.rows() != h_user.size() || sol.W.cols() != h_user.size() || !sol.W.allFinite())
        throw DomainError("relaxed beamforming matrix is missing or malformed");

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (sol.W + sol.W.adjoint()));
    const RVector lam = eig.eigenvalues().cwiseMax(0.0);
    const CMatrix& U = eig.eigenvectors();
    const Eigen::Index M = lam.size();
    const double power = std::min(lam.sum(), budget.p_bs);

    const auto scaled = [power](CVector v) {
        const double n = v.norm();
        if (n > 0.0)
            v *= std::sqrt(power) / n;
        return v;
    };

    CVector best = scaled(U.col(M - 1));
    if (sol.rank1_ratio > 1e-6) {
        double best_val = fractional_objective(h_user, g_eve, best, budget.sigma_r2, budget.sigma_e2);
        const CMatrix factor = U * lam.cwiseSqrt().asDiagonal();
        for (int t = 0; t < trials; ++t) {
            const CVector cand = scaled(factor * complex_gaussian(M, rng));
            const double val = fractional_objective(h_user, g_eve, cand, budget.sigma_r2, budget.sigma_e2);
            if (val > best_val) {
                best_val = val;
                best = cand;
            }
        }
    }
    normalize_phase(best);
    return best;
}

CVector mrt_beamformer(const CVector& h_d, double p_bs) {
    const double n = h_d.norm();
    if (!(n > 0.0))
        throw DomainError("MRT needs a nonzero channel");
    return h_d * (std::sqrt(p_bs) / n);
}

CVector geig_oracle(const CRow& h_user, const CRow& g_eve, const LinkBudget& budget) {
    check_channels(h_user, g_eve);
    budget.validate();
    const auto M = h_user.size();
    const CMatrix I = CMatrix::Identity(M, M) / budget.p_bs;
    const CMatrix A = I + h_user.adjoint() * h_user / budget.sigma_r2;
    const CMatrix B = I + g_eve.adjoint() * g_eve / budget.sigma_e2;
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(A, B);
    if (ges.info() != Eigen::Success)
        throw DomainError("singular pencil in the generalized eigenvalue oracle");
    CVector w = ges.eigenvectors().col(M - 1);
    w *= std::sqrt(budget.p_bs) / w.norm();
    normalize_phase(w);
    return w;
}

} // namespace irssec
