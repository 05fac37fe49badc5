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

#include <random>
#include <span>
#include <utility>
#include <vector>

#include "irssec/types.hpp"

namespace irssec {

using Rng = std::mt19937_64;

/// Log-distance path loss with log-normal shadowing, all in dB.
struct PathLossParams {
    double mu_db = 72.0;      // constant offset
    double kappa = 2.92;      // exponent
    double sigma_xi_db = 8.7; // shadowing standard deviation

    void validate() const;
};

/// Placement of the network nodes. The BS sits at the origin; IRSs on a circle
/// around it; user and eavesdropper at polar positions (distance, beta).
struct Layout {
    double bs_height = 10.0;
    double irs_height = 10.0;
    double terminal_height = 1.5;
    double irs_radius = 25.0;
    double user_distance = 20.0;
    double eve_distance = 18.0;
    double beta_min = 0.0;
    double beta_max = kPi / 2.0;
    // true: user and eavesdropper share one drawn angle; false: i.i.d. angles.
    bool shared_beta = true;
};

struct ScenarioConfig {
    int M = 4;    // BS antennas (ULA)
    int N_az = 4; // IRS columns
    int N_el = 4; // IRS rows
    int L = 3;    // IRS count, 0 means no IRS
    int K = 4;    // paths per NLOS link

    double P_BS = dbm_to_watt(30.0);
    double sigma_r2 = dbm_to_watt(-95.0);
    double sigma_e2 = dbm_to_watt(-95.0);
    double G_b = 1.0;
    double G_l = 1.0;
    double element_spacing = 0.5; // wavelengths

    PathLossParams pl_nlos{72.0, 2.92, 8.7};
    PathLossParams pl_los{61.4, 2.0, 5.8};
    Layout layout;

    int N() const { return N_az * N_el; }

    // Sets N_az x N_el to the most square factorization of n.
    void set_elements(int n);

    /// Throws DomainError on any violated invariant.
    void validate() const;
};

/// Most square factorization n = az * el with az >= el.
std::pair<int, int> square_factorization(int n);

struct Geometry {
    Eigen::Vector3d bs = Eigen::Vector3d::Zero();
    std::vector<Eigen::Vector3d> irs;
    Eigen::Vector3d user = Eigen::Vector3d::Zero();
    Eigen::Vector3d eve = Eigen::Vector3d::Zero();
    double beta_user = 0.0;
    double beta_eve = 0.0;
};

enum class Endpoint { User, Eve };

/// One realization of every link in the network.
///
/// Conventions: the user receives (sum_l h_r[l]^H diag(alpha_l) F[l] + h_d^H) w,
/// the eavesdropper the same with g in place of h.
struct ChannelSet {
    std::vector<CMatrix> F; // L matrices, N x M
    CVector h_d;            // M
    CVector g_d;            // M
    std::vector<CVector> h_r; // L vectors, N
    std::vector<CVector> g_r; // L vectors, N
    Geometry geometry;

    int M() const { return static_cast<int>(h_d.size()); }
    int L() const { return static_cast<int>(F.size()); }
    int N() const { return F.empty() ? 0 : static_cast<int>(F.front().rows()); }

    /// Checks shapes and finiteness; throws DimensionError / DomainError.
    void validate() const;
};

/// PL(d) = mu + 10 kappa log10(d) + xi. Throws DomainError for d <= 0.
double path_loss_db(double distance, const PathLossParams& p, double xi_db);

/// Normalized ULA steering vector: entry m is exp(j 2 pi spacing m sin(phi)) / sqrt(M).
CVector ula_response(int M, double phi, double spacing = 0.5);

/// UPA steering vector a_az(psi) kron a_el(phi), unit norm.
CVector upa_response(int N_az, int N_el, double phi, double psi, double spacing = 0.5);

// Deterministic assembly from explicit path draws. The samplers below draw the
// gains and angles and delegate here.

/// (sqrt(M)/K) sum_k gains[k] G_b a_b(aods[k]), K = gains.size().
CVector multipath_bs_channel(int M, std::span<const Complex> gains, std::span<const double> aods,
                             double antenna_gain, double spacing);

/// (sqrt(N)/K) sum_k gains[k] G_l a_l(phis[k], psis[k]).
CVector multipath_irs_channel(int N_az, int N_el, std::span<const Complex> gains,
                              std::span<const double> phis, std::span<const double> psis,
                              double antenna_gain, double spacing);

/// sqrt(MN) rho G_b a_l(phi_irs, psi_irs) a_b(phi_bs)^H, rank one.
CMatrix los_bs_irs_channel(int M, int N_az, int N_el, Complex rho, double phi_irs, double psi_irs,
                           double phi_bs, double antenna_gain, double spacing);

/// Draws CN(0, variance).
Complex draw_path_gain(double variance, Rng& rng);

/// Linear large-scale power gain 10^(-PL(d)/10) with one shadowing draw.
double draw_link_power(double distance, const PathLossParams& p, Rng& rng);

/// IRS centres on the circle of given radius at angles pi/4 + i pi/12,
/// i = -(L-1)/2 .. (L-1)/2. L = 0 gives no IRS; even L is rejected.
std::vector<Eigen::Vector2d> irs_positions(int L, double radius = 25.0);

/// Node positions for given user/eavesdropper polar angles.
Geometry make_geometry(const ScenarioConfig& cfg, double beta_user, double beta_eve);

/// BS -> user (h_d) or BS -> eavesdropper (g_d).
CVector sample_direct_channel(const ScenarioConfig& cfg, const Geometry& geo, Endpoint endpoint,
                              Rng& rng);

/// BS -> IRS l (0-based) LOS channel F_l.
CMatrix sample_bs_irs_channel(const ScenarioConfig& cfg, const Geometry& geo, int l, Rng& rng);

/// IRS l (0-based) -> user (h_rl) or eavesdropper (g_rl).
CVector sample_irs_user_channel(const ScenarioConfig& cfg, const Geometry& geo, int l,
                                Endpoint endpoint, Rng& rng);

/// Draws the user angle(s), then h_d, g_d, then (F_l, h_rl, g_rl) for each IRS
/// in index order. Pure function of (cfg, rng state).
ChannelSet sample_network(const ScenarioConfig& cfg, Rng& rng);

} // namespace irssec
