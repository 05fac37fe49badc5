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
#include <doctest.h>

#include <cmath>

#include "irssec/metrics.hpp"
#include "support/random.hpp"

using namespace irssec;
using irssec::testing::random_channels;
using irssec::testing::random_cvector;
using irssec::testing::random_phases;

namespace {

// Elementwise evaluation of sum_l sum_n conj(r_ln) alpha_ln F_l(n, m) + conj(d_m).
CRow loop_oracle(const std::vector<CMatrix>& F, const std::vector<CVector>& r, const CVector& d,
                 const std::vector<CVector>& theta) {
    const auto M = d.size();
    CRow out(M);
    for (Eigen::Index m = 0; m < M; ++m) {
        Complex acc = std::conj(d[m]);
        for (std::size_t l = 0; l < F.size(); ++l)
            for (Eigen::Index n = 0; n < F[l].rows(); ++n)
                acc += std::conj(r[l][n]) * theta[l][n] * F[l](n, m);
        out[m] = acc;
    }
    return out;
}

} // namespace

TEST_CASE("effective channels") {
    SUBCASE("no IRS gives the direct channel") {
        Rng rng(1);
        const ChannelSet ch = random_channels(4, 16, 0, rng);
        CHECK((effective_user_channel(ch, {}) - ch.h_d.adjoint()).norm() == 0.0);
        CHECK((effective_eve_channel(ch, {}) - ch.g_d.adjoint()).norm() == 0.0);
    }
    SUBCASE("scalar example") {
        ChannelSet ch;
        ch.h_d = CVector::Ones(1);
        ch.g_d = CVector::Zero(1);
        ch.F = {CMatrix::Ones(1, 1)};
        ch.h_r = {CVector::Ones(1)};
        ch.g_r = {CVector::Zero(1)};
        const CRow h = effective_user_channel(ch, {CVector::Ones(1)});
        CHECK(std::abs(h[0] - Complex(2.0, 0.0)) < 1e-15);
    }
    SUBCASE("matches the elementwise oracle") {
        Rng rng(2);
        for (int t = 0; t < 20; ++t) {
            const ChannelSet ch = random_channels(3 + t % 3, 4 + t % 5, 1 + 2 * (t % 3), rng);
            std::vector<CVector> theta;
            for (int l = 0; l < ch.L(); ++l)
                theta.push_back(random_phases(ch.N(), rng));
            const CRow hu = effective_user_channel(ch, theta);
            const CRow ge = effective_eve_channel(ch, theta);
            const CRow hu_ref = loop_oracle(ch.F, ch.h_r, ch.h_d, theta);
            const CRow ge_ref = loop_oracle(ch.F, ch.g_r, ch.g_d, theta);
            CHECK((hu - hu_ref).norm() <= 1e-12 * hu_ref.norm());
            CHECK((ge - ge_ref).norm() <= 1e-12 * ge_ref.norm());
        }
    }
    SUBCASE("identity phases") {
        Rng rng(3);
        const ChannelSet ch = random_channels(4, 9, 3, rng);
        CRow expected = ch.g_d.adjoint();
        for (int l = 0; l < 3; ++l)
            expected += ch.g_r[l].adjoint() * ch.F[l];
        CHECK((effective_eve_channel(ch, identity_phases(ch)) - expected).norm() <= 1e-12 * expected.norm());
    }
    SUBCASE("dimension errors") {
        Rng rng(4);
        const ChannelSet ch = random_channels(4, 9, 3, rng);
        CHECK_THROWS_AS(effective_user_channel(ch, {CVector::Ones(9)}), DimensionError);
        CHECK_THROWS_AS(effective_user_channel(ch, {CVector::Ones(9), CVector::Ones(9), CVector::Ones(8)}),
                        DimensionError);
    }
}

TEST_CASE("achievable rate") {
    CRow h(2);
    h << Complex(1.0, 0.0), Complex(0.0, 0.0);
    CVector w(2);
    w << Complex(0.0, 0.0), Complex(1.0, 0.0);
    CHECK(achievable_rate(h, w, 1.0) == 0.0);
    w << Complex(0.0, 1.0), Complex(5.0, 0.0);
    CHECK(achievable_rate(h, w, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    w << Complex(std::sqrt(3.0), 0.0), Complex(0.0, 0.0);
    CHECK(achievable_rate(h, w, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(achievable_rate(h, w, 0.0), DomainError);
    CHECK_THROWS_AS(achievable_rate(h, w, -1.0), DomainError);
}

TEST_CASE("secrecy rate") {
    ScenarioConfig cfg;
    cfg.sigma_r2 = 1.0;
    cfg.sigma_e2 = 1.0;
    ChannelSet ch;
    ch.h_d = CVector::Zero(2);
    ch.g_d = CVector::Zero(2);
    BeamformingState st;
    st.w = CVector::Zero(2);

    SUBCASE("identical channels") {
        Rng rng(5);
        ch.h_d = random_cvector(2, rng);
        ch.g_d = ch.h_d;
        st.w = random_cvector(2, rng);
        CHECK(secrecy_rate(ch, st, cfg) == 0.0);
    }
    SUBCASE("eavesdropper nulled") {
        ch.h_d << Complex(1.0, 0.0), Complex(0.0, 0.0);
        ch.g_d << Complex(0.0, 0.0), Complex(1.0, 0.0);
        st.w << Complex(1.0, 0.0), Complex(0.0, 0.0);
        CHECK(secrecy_rate(ch, st, cfg) == doctest::Approx(1.0));
    }
    SUBCASE("hinge at zero") {
        ch.h_d << Complex(0.1, 0.0), Complex(0.0, 0.0);
        ch.g_d << Complex(2.0, 0.0), Complex(0.0, 0.0);
        st.w << Complex(1.0, 0.0), Complex(0.0, 0.0);
        const RateReport r = rates(ch, st.w, {}, 1.0, 1.0);
        CHECK(r.margin() < 0.0);
        CHECK(secrecy_rate(ch, st, cfg) == 0.0);
    }
}

TEST_CASE("secrecy rate properties") {
    ScenarioConfig cfg;
    cfg.sigma_r2 = 0.5;
    cfg.sigma_e2 = 2.0;
    Rng rng(6);
    for (int t = 0; t < 30; ++t) {
        const ChannelSet ch = random_channels(4, 8, 3, rng);
        BeamformingState st;
        st.w = random_cvector(4, rng);
        for (int l = 0; l < 3; ++l)
            st.theta.push_back(random_phases(8, rng));
        const double rs = secrecy_rate(ch, st, cfg);
        CHECK(rs >= 0.0);

        BeamformingState rot = st;
        rot.w *= std::polar(1.0, 0.37 * (t + 1));
        CHECK(std::abs(secrecy_rate(ch, rot, cfg) - rs) <= 1e-12);
    }

    SUBCASE("scaling w down with a nulled eavesdropper never helps") {
        ChannelSet ch = random_channels(3, 4, 0, rng);
        ch.g_d.setZero();
        BeamformingState st;
        st.w = random_cvector(3, rng);
        const double full = secrecy_rate(ch, st, cfg);
        for (double c = 0.1; c <= 1.0; c += 0.1) {
            BeamformingState s = st;
            s.w *= c;
            CHECK(secrecy_rate(ch, s, cfg) <= full + 1e-15);
        }
    }
}

TEST_CASE("beamforming state feasibility") {
    BeamformingState st;
    st.w = CVector::Constant(4, Complex(0.5, 0.0));
    st.theta = {CVector::Ones(3)};
    CHECK(st.feasible(1.0));
    CHECK_FALSE(st.feasible(0.9));
    st.theta[0][1] = Complex(0.5, 0.0);
    CHECK_FALSE(st.feasible(1.0));
}

TEST_CASE("fractional objective matches the rate difference") {
    Rng rng(7);
    const CRow h = random_cvector(4, rng).transpose();
    const CRow g = random_cvector(4, rng).transpose();
    const CVector w = random_cvector(4, rng);
    const double f = fractional_objective(h, g, w, 0.7, 1.3);
    CHECK(std::log2(f) == doctest::Approx(achievable_rate(h, w, 0.7) - achievable_rate(g, w, 1.3)).epsilon(1e-12));
    CHECK_THROWS_AS(fractional_objective(h, CRow::Zero(3), w, 1.0, 1.0), DimensionError);
}

TEST_CASE("power unit conversions") {
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watt(-95.0) == doctest::Approx(3.1622776601683795e-13));
    CHECK(watt_to_dbm(dbm_to_watt(17.5)) == doctest::Approx(17.5));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
}
