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

#include "irssec/channel.hpp"

#include <cmath>
#include <sstream>

namespace irssec {

namespace {

std::uniform_real_distribution<double> uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi);
}

bool all_finite(const CMatrix& m) { return m.allFinite(); }

} // namespace

void PathLossParams::validate() const {
    if (!(kappa > 0.0))
        throw DomainError("path loss exponent must be positive");
    if (!(sigma_xi_db >= 0.0))
        throw DomainError("shadowing standard deviation must be non-negative");
}

void ScenarioConfig::set_elements(int n) {
    auto [az, el] = square_factorization(n);
    N_az = az;
    N_el = el;
}

void ScenarioConfig::validate() const {
    if (M < 1)
        throw DomainError("M must be >= 1");
    if (N_az < 1 || N_el < 1)
        throw DomainError("IRS dimensions must be >= 1");
    if (L < 0)
        throw DomainError("L must be >= 0");
    if (L > 0 && L % 2 == 0)
        throw DomainError("L must be odd (IRS placement is symmetric around pi/4)");
    if (K < 1)
        throw DomainError("K must be >= 1");
    if (!(P_BS > 0.0) || !(sigma_r2 > 0.0) || !(sigma_e2 > 0.0))
        throw DomainError("powers and noise variances must be positive");
    if (!(G_b > 0.0) || !(G_l > 0.0))
        throw DomainError("antenna gains must be positive");
    if (!(element_spacing > 0.0))
        throw DomainError("element spacing must be positive");
    pl_nlos.validate();
    pl_los.validate();
    if (!(layout.beta_max >= layout.beta_min))
        throw DomainError("beta range is empty");
}

std::pair<int, int> square_factorization(int n) {
    if (n < 1)
        throw DomainError("element count must be >= 1");
    int el = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    while (n % el != 0)
        --el;
    return {n / el, el};
}

void ChannelSet::validate() const {
    const auto m = h_d.size();
    if (m == 0 || g_d.size() != m)
        throw DimensionError("direct channels must be non-empty and of equal length");
    const auto l = F.size();
    if (h_r.size() != l || g_r.size() != l)
        throw DimensionError("per-IRS channel lists differ in length");
    const Eigen::Index n = l ? F.front().rows() : 0;
    for (std::size_t i = 0; i < l; ++i) {
        if (F[i].cols() != m || F[i].rows() != n || h_r[i].size() != n || g_r[i].size() != n)
            throw DimensionError("IRS channel shapes are inconsistent");
        if (!all_finite(F[i]) || !h_r[i].allFinite() || !g_r[i].allFinite())
            throw DomainError("non-finite IRS channel entry");
    }
    if (!h_d.allFinite() || !g_d.allFinite())
        throw DomainError("non-finite direct channel entry");
}

double path_loss_db(double distance, const PathLossParams& p, double xi_db) {
    if (!(distance > 0.0))
        throw DomainError("path loss distance must be positive");
    return p.mu_db + 10.0 * p.kappa * std::log10(distance) + xi_db;
}

CVector ula_response(int M, double phi, double spacing) {
    if (M < 1)
        throw DomainError("array size must be >= 1");
    CVector a(M);
    const double step = 2.0 * kPi * spacing * std::sin(phi);
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    for (int m = 0; m < M; ++m)
        a[m] = std::polar(scale, step * m);
    return a;
}

CVector upa_response(int N_az, int N_el, double phi, double psi, double spacing) {
    const CVector az = ula_response(N_az, psi, spacing);
    const CVector el = ula_response(N_el, phi, spacing);
    CVector a(N_az * N_el);
    for (int i = 0; i < N_az; ++i)
        a.segment(i * N_el, N_el) = az[i] * el;
    return a;
}

CVector multipath_bs_channel(int M, std::span<const Complex> gains, std::span<const double> aods,
                             double antenna_gain, double spacing) {
    if (gains.size() != aods.size() || gains.empty())
        throw DimensionError("path gains and angles must be non-empty and of equal length");
    const double K = static_cast<double>(gains.size());
    CVector h = CVector::Zero(M);
    for (std::size_t k = 0; k < gains.size(); ++k)
        h += gains[k] * ula_response(M, aods[k], spacing);
    return h * (std::sqrt(static_cast<double>(M)) / K * antenna_gain);
}

CVector multipath_irs_channel(int N_az, int N_el, std::span<const Complex> gains,
                              std::span<const double> phis, std::span<const double> psis,
                              double antenna_gain, double spacing) {
    if (gains.size() != phis.size() || gains.size() != psis.size() || gains.empty())
        throw DimensionError("path gains and angles must be non-empty and of equal length");
    const int N = N_az * N_el;
    const double K = static_cast<double>(gains.size());
    CVector h = CVector::Zero(N);
    for (std::size_t k = 0; k < gains.size(); ++k)
        h += gains[k] * upa_response(N_az, N_el, phis[k], psis[k], spacing);
    return h * (std::sqrt(static_cast<double>(N)) / K * antenna_gain);
}

CMatrix los_bs_irs_channel(int M, int N_az, int N_el, Complex rho, double phi_irs, double psi_irs,
                           double phi_bs, double antenna_gain, double spacing) {
    const double scale = std::sqrt(static_cast<double>(M) * N_az * N_el) * antenna_gain;
    return (scale * rho) * upa_response(N_az, N_el, phi_irs, psi_irs, spacing) *
           ula_response(M, phi_bs, spacing).adjoint();
}

Complex draw_path_gain(double variance, Rng& rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

double draw_link_power(double distance, const PathLossParams& p, Rng& rng) {
    double xi = 0.0;
    if (p.sigma_xi_db > 0.0)
        xi = std::normal_distribution<double>(0.0, p.sigma_xi_db)(rng);
    return std::pow(10.0, -0.1 * path_loss_db(distance, p, xi));
}

std::vector<Eigen::Vector2d> irs_positions(int L, double radius) {
    if (L < 0 || (L > 0 && L % 2 == 0)) {
        std::ostringstream os;
        os << "IRS count must be zero or odd, got " << L;
        throw DomainError(os.str());
    }
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(static_cast<std::size_t>(L));
    const int half = (L - 1) / 2;
    for (int i = -half; i <= half && L > 0; ++i) {
        const double angle = kPi / 4.0 + i * kPi / 12.0;
        pts.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
    }
    return pts;
}

Geometry make_geometry(const ScenarioConfig& cfg, double beta_user, double beta_eve) {
    const Layout& lay = cfg.layout;
    Geometry g;
    g.bs = {0.0, 0.0, lay.bs_height};
    for (const auto& p : irs_positions(cfg.L, lay.irs_radius))
        g.irs.emplace_back(p.x(), p.y(), lay.irs_height);
    g.beta_user = beta_user;
    g.beta_eve = beta_eve;
    g.user = {lay.user_distance * std::cos(beta_user), lay.user_distance * std::sin(beta_user),
              lay.terminal_height};
    g.eve = {lay.eve_distance * std::cos(beta_eve), lay.eve_distance * std::sin(beta_eve),
             lay.terminal_height};
    return g;
}

CVector sample_direct_channel(const ScenarioConfig& cfg, const Geometry& geo, Endpoint endpoint,
                              Rng& rng) {
    const Eigen::Vector3d& rx = endpoint == Endpoint::User ? geo.user : geo.eve;
    const double power = draw_link_power((rx - geo.bs).norm(), cfg.pl_nlos, rng);
    auto aod = uniform(0.0, 2.0 * kPi);
    std::vector<Complex> gains(static_cast<std::size_t>(cfg.K));
    std::vector<double> angles(gains.size());
    for (std::size_t k = 0; k < gains.size(); ++k) {
        gains[k] = draw_path_gain(power, rng);
        angles[k] = aod(rng);
    }
    return multipath_bs_channel(cfg.M, gains, angles, cfg.G_b, cfg.element_spacing);
}

CMatrix sample_bs_irs_channel(const ScenarioConfig& cfg, const Geometry& geo, int l, Rng& rng) {
    if (l < 0 || l >= static_cast<int>(geo.irs.size()))
        throw std::out_of_range("IRS index out of range");
    const double power =
        draw_link_power((geo.irs[static_cast<std::size_t>(l)] - geo.bs).norm(), cfg.pl_los, rng);
    const Complex rho = draw_path_gain(power, rng);
    auto half_turn = uniform(0.0, kPi);
    const double phi_irs = half_turn(rng);
    const double psi_irs = half_turn(rng);
    const double phi_bs = uniform(0.0, 2.0 * kPi)(rng);
    return los_bs_irs_channel(cfg.M, cfg.N_az, cfg.N_el, rho, phi_irs, psi_irs, phi_bs, cfg.G_b,
                              cfg.element_spacing);
}

CVector sample_irs_user_channel(const ScenarioConfig& cfg, const Geometry& geo, int l,
                                Endpoint endpoint, Rng& rng) {
    if (l < 0 || l >= static_cast<int>(geo.irs.size()))
        throw std::out_of_range("IRS index out of range");
    const Eigen::Vector3d& rx = endpoint == Endpoint::User ? geo.user : geo.eve;
    const double power =
        draw_link_power((rx - geo.irs[static_cast<std::size_t>(l)]).norm(), cfg.pl_nlos, rng);
    auto half_turn = uniform(0.0, kPi);
    const auto K = static_cast<std::size_t>(cfg.K);
    std::vector<Complex> gains(K);
    std::vector<double> phis(K), psis(K);
    for (std::size_t k = 0; k < K; ++k) {
        gains[k] = draw_path_gain(power, rng);
        phis[k] = half_turn(rng);
        psis[k] = half_turn(rng);
    }
    return multipath_irs_channel(cfg.N_az, cfg.N_el, gains, phis, psis, cfg.G_l,
                                 cfg.element_spacing);
}

ChannelSet sample_network(const ScenarioConfig& cfg, Rng& rng) {
    cfg.validate();
    auto beta = uniform(cfg.layout.beta_min, cfg.layout.beta_max);
    const double beta_user = beta(rng);
    const double beta_eve = cfg.layout.shared_beta ? beta_user : beta(rng);

    ChannelSet ch;
    ch.geometry = make_geometry(cfg, beta_user, beta_eve);
    ch.h_d = sample_direct_channel(cfg, ch.geometry, Endpoint::User, rng);
    ch.g_d = sample_direct_channel(cfg, ch.geometry, Endpoint::Eve, rng);
    for (int l = 0; l < cfg.L; ++l) {
        ch.F.push_back(sample_bs_irs_channel(cfg, ch.geometry, l, rng));
        ch.h_r.push_back(sample_irs_user_channel(cfg, ch.geometry, l, Endpoint::User, rng));
        ch.g_r.push_back(sample_irs_user_channel(cfg, ch.geometry, l, Endpoint::Eve, rng));
    }
    return ch;
}

} // namespace irssec
