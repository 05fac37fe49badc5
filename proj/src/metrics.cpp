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

#include "irssec/metrics.hpp"

#include <cmath>

namespace irssec {

namespace {

CRow effective_channel(const ChannelSet& ch, const std::vector<CVector>& theta,
                       const CVector& direct, const std::vector<CVector>& reflected) {
    if (theta.size() != ch.F.size())
        throw DimensionError("phase list length differs from IRS count");
    CRow eff = direct.adjoint();
    for (std::size_t l = 0; l < ch.F.size(); ++l) {
        const CMatrix& F = ch.F[l];
        if (theta[l].size() != F.rows() || reflected[l].size() != F.rows() ||
            F.cols() != direct.size())
            throw DimensionError("IRS channel and phase dimensions disagree");
        // h^H diag(alpha) F = (conj(h) .* alpha)^T F
        const CVector weights = reflected[l].conjugate().cwiseProduct(theta[l]);
        eff.noalias() += weights.transpose() * F;
    }
    return eff;
}

} // namespace

void LinkBudget::validate() const {
    if (!(sigma_r2 > 0.0) || !(sigma_e2 > 0.0))
        throw DomainError("noise variances must be positive");
    if (!(p_bs > 0.0))
        throw DomainError("power budget must be positive");
}

bool BeamformingState::feasible(double p_bs) const {
    if (w.squaredNorm() > p_bs * (1.0 + 1e-9))
        return false;
    for (const auto& a : theta)
        for (Eigen::Index n = 0; n < a.size(); ++n)
            if (std::abs(std::abs(a[n]) - 1.0) > 1e-9)
                return false;
    return true;
}

std::vector<CVector> identity_phases(const ChannelSet& ch) {
    std::vector<CVector> theta;
    for (const auto& F : ch.F)
        theta.push_back(CVector::Ones(F.rows()));
    return theta;
}

CRow effective_user_channel(const ChannelSet& ch, const std::vector<CVector>& theta) {
    return effective_channel(ch, theta, ch.h_d, ch.h_r);
}

CRow effective_eve_channel(const ChannelSet& ch, const std::vector<CVector>& theta) {
    return effective_channel(ch, theta, ch.g_d, ch.g_r);
}

double achievable_rate(const CRow& h_eff, const CVector& w, double sigma2) {
    if (!(sigma2 > 0.0))
        throw DomainError("noise variance must be positive");
    if (h_eff.size() != w.size())
        throw DimensionError("channel and beamformer lengths differ");
    return std::log2(1.0 + std::norm((h_eff * w)(0)) / sigma2);
}

RateReport rates(const ChannelSet& ch, const CVector& w, const std::vector<CVector>& theta,
                 double sigma_r2, double sigma_e2) {
    RateReport r;
    r.user = achievable_rate(effective_user_channel(ch, theta), w, sigma_r2);
    r.eve = achievable_rate(effective_eve_channel(ch, theta), w, sigma_e2);
    return r;
}

double secrecy_rate(const ChannelSet& ch, const BeamformingState& state, const ScenarioConfig& cfg) {
    return rates(ch, state.w, state.theta, cfg.sigma_r2, cfg.sigma_e2).secrecy();
}

double fractional_objective(const CRow& h_user, const CRow& g_eve, const CVector& w,
                            double sigma_r2, double sigma_e2) {
    if (h_user.size() != w.size() || g_eve.size() != w.size())
        throw DimensionError("channel and beamformer lengths differ");
    const double num = 1.0 + std::norm((h_user * w)(0)) / sigma_r2;
    const double den = 1.0 + std::norm((g_eve * w)(0)) / sigma_e2;
    return num / den;
}

} // namespace irssec
