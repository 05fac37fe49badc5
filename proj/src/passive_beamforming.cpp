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

#include "irssec/passive_beamforming.hpp"

#include <cmath>
#include <stdexcept>

namespace irssec {

namespace {

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

void check_lifted(const std::vector<CVector>& x_list, const ReducedChannels& rc) {
    if (x_list.size() != rc.h_prime.size())
        throw DimensionError("lifted vector count differs from IRS count");
    for (std::size_t l = 0; l < x_list.size(); ++l)
        if (x_list[l].size() != rc.h_prime[l].size())
            throw DimensionError("lifted vector length differs from N + 1");
}

} // namespace

ReducedChannels build_reduced_channels(const ChannelSet& ch, const CVector& w) {
    ch.validate();
    if (w.size() != ch.M())
        throw DimensionError("beamformer length differs from BS antenna count");
    const Complex direct_user = ch.h_d.dot(w); // h_d^H w
    const Complex direct_eve = ch.g_d.dot(w);
    ReducedChannels rc;
    for (int l = 0; l < ch.L(); ++l) {
        const auto li = static_cast<std::size_t>(l);
        const CVector Fw = ch.F[li] * w;
        const auto N = Fw.size();
        CVector hp(N + 1), gp(N + 1);
        hp.head(N) = ch.h_r[li].conjugate().cwiseProduct(Fw);
        gp.head(N) = ch.g_r[li].conjugate().cwiseProduct(Fw);
        hp[N] = direct_user;
        gp[N] = direct_eve;
        rc.h_prime.push_back(std::move(hp));
        rc.g_prime.push_back(std::move(gp));
    }
    return rc;
}

SelectorMatrix build_selector(int i, int N, int L) {
    if (N < 1 || L < 1)
        throw std::out_of_range("selector needs N >= 1 and L >= 1");
    if (i < 0 || i > N)
        throw std::out_of_range("selector index out of range");
    SelectorMatrix s;
    s.index = i;
    s.diagonal = RVector::Zero(N + 1);
    s.diagonal[i] = i < N ? 1.0 : static_cast<double>(L) * L;
    return s;
}

std::vector<CVector> lift_phases(const std::vector<CVector>& theta) {
    const double tail = theta.empty() ? 0.0 : 1.0 / static_cast<double>(theta.size());
    std::vector<CVector> x;
    for (const auto& a : theta) {
        CVector v(a.size() + 1);
        v.head(a.size()) = a.conjugate();
        v[a.size()] = tail;
        x.push_back(std::move(v));
    }
    return x;
}

CVector phases_from_lifted(const CVector& u) {
    const auto N = u.size() - 1;
    const double ref = std::arg(u[N]);
    CVector a(N);
    for (Eigen::Index n = 0; n < N; ++n)
        a[n] = std::polar(1.0, ref - std::arg(u[n]));
    return a;
}

sdp::SdpProblem build_p2(const ReducedChannels& rc, double sigma_r2, double sigma_e2) {
    if (!(sigma_r2 > 0.0) || !(sigma_e2 > 0.0))
        throw DomainError("noise variances must be positive");
    const int L = rc.L();
    const int N = rc.N();
    if (L < 1 || N < 1)
        throw DimensionError("phase problem needs at least one IRS element");
    for (int l = 0; l < L; ++l)
        if (rc.h_prime[static_cast<std::size_t>(l)].size() != N + 1 ||
            rc.g_prime[static_cast<std::size_t>(l)].size() != N + 1)
            throw DimensionError("reduced channels differ in length");

    sdp::SdpProblem p;
    for (int l = 0; l < L; ++l)
        p.add_block(2 * (N + 1));
    const std::size_t lam = p.add_block(1);

    sdp::Constraint normalization;
    for (int l = 0; l < L; ++l) {
        const auto li = static_cast<std::size_t>(l);
        const CVector& hp = rc.h_prime[li];
        const CVector& gp = rc.g_prime[li];
        // h'^H T h' = tr(h' h'^H T)
        p.objective[li] = (0.5 / sigma_r2) * sdp::real_embed(hp * hp.adjoint());
        normalization.terms.push_back(
            {li, ((0.5 / sigma_e2) * sdp::real_embed(gp * gp.adjoint())).sparseView()});
    }
    p.objective[lam](0, 0) = 1.0;
    normalization.terms.push_back({lam, RMatrix::Ones(1, 1).sparseView()});
    normalization.rhs = 1.0;
    p.constraints.push_back(std::move(normalization));

    const int dim = 2 * (N + 1);
    for (int l = 0; l < L; ++l) {
        for (int i = 0; i <= N; ++i) {
            // tr(S_i T_l) - lambda = 0, embedded: the selector weight sits on
            // both diagonal copies with factor 1/2.
            const double weight = 0.5 * build_selector(i, N, L).diagonal[i];
            sdp::SparseMatrix S(dim, dim);
            S.insert(i, i) = weight;
            S.insert(i + N + 1, i + N + 1) = weight;
            sdp::Constraint c;
            c.terms.push_back({static_cast<std::size_t>(l), std::move(S)});
            c.terms.push_back({lam, (-RMatrix::Ones(1, 1)).sparseView()});
            c.rhs = 0.0;
            p.constraints.push_back(std::move(c));
        }
    }
    return p;
}

Cct2Solution solve_p2(const ReducedChannels& rc, double sigma_r2, double sigma_e2,
                      const sdp::SolverOptions& opts) {
    Cct2Solution out;
    out.raw = sdp::solve(build_p2(rc, sigma_r2, sigma_e2), opts);
    const auto L = static_cast<std::size_t>(rc.L());
    out.lambda = out.raw.X[L](0, 0);
    out.objective = out.raw.objective;
    for (std::size_t l = 0; l < L; ++l) {
        out.T.push_back(sdp::complex_recover(out.raw.X[l]));
        out.X.push_back(out.lambda > 0.0 ? CMatrix(out.T.back() / out.lambda)
                                         : CMatrix::Zero(out.T.back().rows(), out.T.back().cols()));
    }
    return out;
}

double surrogate_objective(const std::vector<CVector>& x_list, const ReducedChannels& rc,
                           double sigma_r2, double sigma_e2) {
    check_lifted(x_list, rc);
    double user = 0.0, eve = 0.0;
    for (std::size_t l = 0; l < x_list.size(); ++l) {
        user += std::norm(x_list[l].dot(rc.h_prime[l]));
        eve += std::norm(x_list[l].dot(rc.g_prime[l]));
    }
    return (1.0 + user / sigma_r2) / (1.0 + eve / sigma_e2);
}

RateReport reduced_rates(const std::vector<CVector>& x_list, const ReducedChannels& rc,
                         double sigma_r2, double sigma_e2) {
    check_lifted(x_list, rc);
    Complex user{0.0, 0.0}, eve{0.0, 0.0};
    for (std::size_t l = 0; l < x_list.size(); ++l) {
        user += x_list[l].dot(rc.h_prime[l]); // x^H h'
        eve += x_list[l].dot(rc.g_prime[l]);
    }
    return {std::log2(1.0 + std::norm(user) / sigma_r2), std::log2(1.0 + std::norm(eve) / sigma_e2)};
}

double exact_objective(const std::vector<CVector>& x_list, const ReducedChannels& rc,
                       double sigma_r2, double sigma_e2) {
    const RateReport r = reduced_rates(x_list, rc, sigma_r2, sigma_e2);
    return std::exp2(r.user - r.eve);
}

std::vector<CVector> recover_phases(const Cct2Solution& sol, const ReducedChannels& rc,
                                    double sigma_r2, double sigma_e2, Rng& rng, int trials) {
    if (!(sol.lambda > 0.0))
        throw DomainError("phase recovery needs lambda > 0");
    const auto L = static_cast<std::size_t>(rc.L());
    if (sol.X.size() != L)
        throw DimensionError("relaxed solution does not match the reduced channels");

    std::vector<CMatrix> factors;
    std::vector<CVector> principal;
    for (const CMatrix& X : sol.X) {
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (X + X.adjoint()));
        if (eig.info() != Eigen::Success)
            throw std::runtime_error("eigensolver failed in phase recovery");
        const RVector lam = eig.eigenvalues().cwiseMax(0.0);
        factors.push_back(eig.eigenvectors() * lam.cwiseSqrt().asDiagonal());
        principal.push_back(eig.eigenvectors().col(X.rows() - 1));
    }

    const auto to_phases = [](const std::vector<CVector>& lifted) {
        std::vector<CVector> theta;
        for (const auto& u : lifted)
            theta.push_back(phases_from_lifted(u));
        return theta;
    };

    std::vector<CVector> best = to_phases(principal);
    double best_margin = reduced_rates(lift_phases(best), rc, sigma_r2, sigma_e2).margin();
    std::vector<CVector> draw(L);
    for (int t = 0; t < trials; ++t) {
        for (std::size_t l = 0; l < L; ++l)
            draw[l] = factors[l] * complex_gaussian(factors[l].cols(), rng);
        std::vector<CVector> cand = to_phases(draw);
        const double margin = reduced_rates(lift_phases(cand), rc, sigma_r2, sigma_e2).margin();
        if (margin > best_margin) {
            best_margin = margin;
            best = std::move(cand);
        }
    }
    return best;
}

} // namespace irssec
