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

#include "irssec/passive_beamforming.hpp"
#include "support/random.hpp"

using namespace irssec;
using irssec::testing::random_channels;
using irssec::testing::random_cvector;
using irssec::testing::random_phases;

namespace {

ReducedChannels random_reduced(int N, int L, Rng& rng) {
    ReducedChannels rc;
    for (int l = 0; l < L; ++l) {
        rc.h_prime.push_back(random_cvector(N + 1, rng));
        rc.g_prime.push_back(random_cvector(N + 1, rng));
    }
    return rc;
}

std::vector<CVector> unit_phases(int N, int L) {
    return std::vector<CVector>(static_cast<std::size_t>(L), CVector::Ones(N));
}

// Exhaustive search of the single-IRS ratio over a uniform phase grid.
double grid_optimum(const ReducedChannels& rc, int steps) {
    const int N = rc.N();
    const CVector& h = rc.h_prime.front();
    const CVector& g = rc.g_prime.front();
    std::vector<Complex> e(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k)
        e[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * kPi * k / steps);
    std::vector<int> idx(static_cast<std::size_t>(N), 0);
    double best = 0.0;
    while (true) {
        Complex u = h[N], v = g[N];
        for (int n = 0; n < N; ++n) {
            u += e[static_cast<std::size_t>(idx[n])] * h[n];
            v += e[static_cast<std::size_t>(idx[n])] * g[n];
        }
        best = std::max(best, (1.0 + std::norm(u)) / (1.0 + std::norm(v)));
        int n = 0;
        while (n < N && ++idx[static_cast<std::size_t>(n)] == steps)
            idx[static_cast<std::size_t>(n++)] = 0;
        if (n == N)
            break;
    }
    return best;
}

} // namespace

TEST_CASE("reduced channels reproduce the effective channels") {
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        const int L = 1 + t % 3;
        const ChannelSet ch = random_channels(4, 6, L, rng);
        const CVector w = random_cvector(4, rng);
        std::vector<CVector> theta;
        for (int l = 0; l < L; ++l)
            theta.push_back(random_phases(6, rng));
        const ReducedChannels rc = build_reduced_channels(ch, w);
        REQUIRE(rc.L() == L);
        REQUIRE(rc.N() == 6);
        const std::vector<CVector> x = lift_phases(theta);
        Complex user{0.0, 0.0}, eve{0.0, 0.0};
        for (int l = 0; l < L; ++l) {
            user += x[l].dot(rc.h_prime[l]);
            eve += x[l].dot(rc.g_prime[l]);
        }
        const Complex user_ref = (effective_user_channel(ch, theta) * w)(0, 0);
        const Complex eve_ref = (effective_eve_channel(ch, theta) * w)(0, 0);
        CHECK(std::abs(user - user_ref) < 1e-10);
        CHECK(std::abs(eve - eve_ref) < 1e-10);
    }
}

TEST_CASE("zero beamformer gives zero reduced channels") {
    Rng rng(22);
    const ChannelSet ch = random_channels(3, 4, 2, rng);
    const ReducedChannels rc = build_reduced_channels(ch, CVector::Zero(3));
    for (int l = 0; l < 2; ++l) {
        CHECK(rc.h_prime[l].norm() == 0.0);
        CHECK(rc.g_prime[l].norm() == 0.0);
    }
}

TEST_CASE("selector matrices") {
    const SelectorMatrix s0 = build_selector(0, 2, 3);
    const SelectorMatrix s2 = build_selector(2, 2, 3);
    RMatrix e0 = RMatrix::Zero(3, 3);
    e0(0, 0) = 1.0;
    RMatrix e2 = RMatrix::Zero(3, 3);
    e2(2, 2) = 9.0;
    CHECK((s0.dense() - e0).norm() == 0.0);
    CHECK((s2.dense() - e2).norm() == 0.0);
    CHECK_THROWS_AS(build_selector(3, 2, 3), std::out_of_range);
    CHECK_THROWS_AS(build_selector(-1, 2, 3), std::out_of_range);

    Rng rng(23);
    const std::vector<CVector> x =
        lift_phases({random_phases(2, rng), random_phases(2, rng), random_phases(2, rng)});
    for (int i = 0; i <= 2; ++i) {
        const RVector d = build_selector(i, 2, 3).diagonal;
        const double v = (x[0].adjoint() * d.cast<Complex>().asDiagonal() * x[0])(0, 0).real();
        CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("lift and extract round trip") {
    Rng rng(24);
    const CVector a = random_phases(5, rng);
    const std::vector<CVector> x = lift_phases({a, a});
    CHECK(x[0].size() == 6);
    CHECK(std::abs(x[0][5] - Complex(0.5, 0.0)) < 1e-15);
    CHECK((x[0].head(5) - a.conjugate()).norm() < 1e-15);
    CHECK((phases_from_lifted(x[0]) - a).norm() < 1e-12);
    CHECK((phases_from_lifted(Complex(0.0, 3.0) * x[0]) - a).norm() < 1e-12);
}

TEST_CASE("relaxed solution satisfies the constraints") {
    Rng rng(25);
    for (int t = 0; t < 15; ++t) {
        const int L = 1 + t % 3;
        const int N = 2 + t % 4;
        const ReducedChannels rc = random_reduced(N, L, rng);
        const Cct2Solution s = solve_p2(rc, 1.0, 1.0);
        REQUIRE(s.raw.status == sdp::Status::Optimal);
        REQUIRE(s.lambda > 0.0);
        double eve = 0.0, user = 0.0;
        for (int l = 0; l < L; ++l) {
            eve += (rc.g_prime[l].adjoint() * s.T[l] * rc.g_prime[l])(0, 0).real();
            user += (rc.h_prime[l].adjoint() * s.T[l] * rc.h_prime[l])(0, 0).real();
            for (int n = 0; n < N; ++n)
                CHECK(s.X[l](n, n).real() == doctest::Approx(1.0).epsilon(1e-5));
            CHECK(s.X[l](N, N).real() == doctest::Approx(1.0 / (L * L)).epsilon(1e-5));
            const Eigen::SelfAdjointEigenSolver<CMatrix> eig(s.X[l]);
            CHECK(eig.eigenvalues().minCoeff() > -1e-6);
        }
        CHECK(s.lambda + eve == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(s.objective == doctest::Approx(s.lambda + user).epsilon(1e-6));
        CHECK(1.0 / s.lambda == doctest::Approx(1.0 + eve / s.lambda).epsilon(1e-5));
        // The relaxation upper-bounds every feasible point.
        CHECK(s.objective >= surrogate_objective(lift_phases(unit_phases(N, L)), rc, 1.0, 1.0) - 1e-6);
    }
}

TEST_CASE("recovered phases improve on the identity start") {
    Rng rng(26);
    int improved = 0;
    for (int t = 0; t < 100; ++t) {
        const ReducedChannels rc = random_reduced(4, 3, rng);
        const Cct2Solution s = solve_p2(rc, 1.0, 1.0);
        REQUIRE(s.raw.status == sdp::Status::Optimal);
        const std::vector<CVector> theta = recover_phases(s, rc, 1.0, 1.0, rng);
        for (const CVector& a : theta)
            CHECK((a.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
        const double start = surrogate_objective(lift_phases(unit_phases(4, 3)), rc, 1.0, 1.0);
        if (surrogate_objective(lift_phases(theta), rc, 1.0, 1.0) >= start)
            ++improved;
    }
    CHECK(improved >= 90);
}

TEST_CASE("rank-one relaxed solution recovers the phases exactly") {
    Rng rng(27);
    const ReducedChannels rc = random_reduced(5, 2, rng);
    const std::vector<CVector> theta{random_phases(5, rng), random_phases(5, rng)};
    Cct2Solution s;
    s.lambda = 1.0;
    for (const CVector& x : lift_phases(theta)) {
        s.X.push_back(x * x.adjoint());
        s.T.push_back(s.X.back());
    }
    const std::vector<CVector> exact = recover_phases(s, rc, 1.0, 1.0, rng, 0);
    const std::vector<CVector> drawn = recover_phases(s, rc, 1.0, 1.0, rng, 20);
    for (int l = 0; l < 2; ++l) {
        CHECK((exact[l] - theta[l]).norm() < 1e-10);
        CHECK((drawn[l] - theta[l]).norm() < 1e-6);
    }

    s.lambda = 0.0;
    CHECK_THROWS_AS(recover_phases(s, rc, 1.0, 1.0, rng), DomainError);
}

TEST_CASE("aligned single element keeps the identity phase") {
    ReducedChannels rc;
    rc.h_prime.push_back(CVector::Ones(2));
    rc.g_prime.push_back(CVector::Zero(2));
    Rng rng(28);
    const Cct2Solution s = solve_p2(rc, 1.0, 1.0);
    REQUIRE(s.raw.status == sdp::Status::Optimal);
    CHECK(s.objective == doctest::Approx(5.0).epsilon(1e-5));
    const std::vector<CVector> theta = recover_phases(s, rc, 1.0, 1.0, rng);
    CHECK(std::abs(theta[0][0] - Complex(1.0, 0.0)) < 1e-4);
}

TEST_CASE("single IRS matches an exhaustive phase grid") {
    Rng rng(29);
    for (int N = 1; N <= 3; ++N) {
        const int steps = N < 3 ? 360 : 72;
        for (int t = 0; t < 8; ++t) {
            const ReducedChannels rc = random_reduced(N, 1, rng);
            const Cct2Solution s = solve_p2(rc, 1.0, 1.0);
            REQUIRE(s.raw.status == sdp::Status::Optimal);
            const std::vector<CVector> theta = recover_phases(s, rc, 1.0, 1.0, rng);
            const double got = exact_objective(lift_phases(theta), rc, 1.0, 1.0);
            CHECK(got >= 0.99 * grid_optimum(rc, steps));
            CHECK(s.objective >= got - 1e-6);
        }
    }
}

TEST_CASE("surrogate and exact objectives") {
    Rng rng(30);
    const ReducedChannels one = random_reduced(3, 1, rng);
    const std::vector<CVector> x1 = lift_phases({random_phases(3, rng)});
    CHECK(surrogate_objective(x1, one, 0.5, 2.0) ==
          doctest::Approx(exact_objective(x1, one, 0.5, 2.0)).epsilon(1e-12));

    ReducedChannels zero;
    zero.h_prime.assign(3, CVector::Zero(4));
    zero.g_prime.assign(3, CVector::Zero(4));
    const std::vector<CVector> x3 = lift_phases(unit_phases(3, 3));
    CHECK(surrogate_objective(x3, zero, 1.0, 1.0) == 1.0);
    CHECK(exact_objective(x3, zero, 1.0, 1.0) == 1.0);

    const ReducedChannels three = random_reduced(3, 3, rng);
    CHECK(std::abs(surrogate_objective(x3, three, 1.0, 1.0) - exact_objective(x3, three, 1.0, 1.0)) > 1e-6);

    ReducedChannels bad = three;
    bad.h_prime.pop_back();
    CHECK_THROWS(surrogate_objective(x3, bad, 1.0, 1.0));
}
