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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "irssec/alternating.hpp"
#include "support/random.hpp"

using namespace irssec;
using irssec::testing::random_channels;

namespace {

ScenarioConfig unit_scenario(int M, int N, int L) {
    ScenarioConfig cfg;
    cfg.M = M;
    cfg.set_elements(N);
    cfg.L = L;
    cfg.P_BS = 1.0;
    cfg.sigma_r2 = 1.0;
    cfg.sigma_e2 = 1.0;
    return cfg;
}

ChannelSet scenario_channels(const ScenarioConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    return sample_network(cfg, rng);
}

} // namespace

TEST_CASE("relative-change convergence test") {
    CHECK(converged({1.0, 1.0005}, 1e-3));
    CHECK_FALSE(converged({1.0, 1.1}, 1e-3));
    CHECK(converged({0.0, 0.0}, 1e-3));
    CHECK_FALSE(converged({0.0, 0.1}, 1e-3));
    CHECK(converged({5.0, 2.0, 2.001}, 1e-3));
    CHECK_THROWS_AS(converged({1.0}, 1e-3), std::invalid_argument);
}

TEST_CASE("optimizer configuration is validated") {
    OptimizerConfig o;
    CHECK_NOTHROW(o.validate());
    o.epsilon = 0.0;
    CHECK_THROWS_AS(o.validate(), DomainError);
    o = {};
    o.max_outer_iters = 0;
    CHECK_THROWS_AS(o.validate(), DomainError);
    o = {};
    o.trials = -1;
    CHECK_THROWS_AS(o.validate(), DomainError);
}

TEST_CASE("without IRS the run is one beamformer solve") {
    Rng rng(41);
    const ScenarioConfig cfg = unit_scenario(4, 4, 0);
    const ChannelSet ch = random_channels(4, 4, 0, rng);
    const OptimizationTrace t = optimize(ch, cfg, {}, rng);
    REQUIRE(t.status == TraceStatus::Ok);
    CHECK(t.records.size() == 1);
    CHECK(t.converged);
    const LinkBudget b = LinkBudget::from(cfg);
    const CVector w = geig_oracle(ch.h_d.adjoint(), ch.g_d.adjoint(), b);
    const double oracle =
        std::max(0.0, std::log2(fractional_objective(ch.h_d.adjoint(), ch.g_d.adjoint(), w, b.sigma_r2, b.sigma_e2)));
    CHECK(t.final_state.achieved_rs == doctest::Approx(oracle).epsilon(1e-5));
}

TEST_CASE("zero channels stop immediately at zero secrecy") {
    const ScenarioConfig cfg = unit_scenario(3, 4, 1);
    ChannelSet ch;
    ch.h_d = CVector::Zero(3);
    ch.g_d = CVector::Zero(3);
    ch.F.push_back(CMatrix::Zero(4, 3));
    ch.h_r.push_back(CVector::Zero(4));
    ch.g_r.push_back(CVector::Zero(4));
    Rng rng(42);
    const OptimizationTrace t = optimize(ch, cfg, {}, rng);
    REQUIRE(t.status == TraceStatus::Ok);
    CHECK(t.converged);
    CHECK(t.iterations_used == 1);
    CHECK(t.final_state.achieved_rs == 0.0);
    CHECK(t.final_state.feasible(cfg.P_BS));
}

TEST_CASE("secrecy rate never decreases") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Rng rng(seed);
        const int L = 1 + 2 * static_cast<int>(seed % 3);
        const ScenarioConfig cfg = unit_scenario(3, 4, L);
        const ChannelSet ch = random_channels(3, 4, L, rng, 0.5);
        OptimizerConfig o;
        o.epsilon = 1e-6;
        const OptimizationTrace t = optimize(ch, cfg, o, rng);
        REQUIRE(t.status == TraceStatus::Ok);
        double prev = t.initial_rs;
        for (const IterationRecord& r : t.records) {
            CHECK(r.rs_after_w >= prev - 1e-9);
            CHECK(r.rs >= r.rs_after_w - 1e-9);
            CHECK(r.rs == doctest::Approx(std::max(0.0, r.rr - r.re)).epsilon(1e-12));
            CHECK(r.w_norm2 <= cfg.P_BS * (1.0 + 1e-9));
            prev = r.rs;
        }
        const std::vector<double> h = t.rs_history();
        CHECK(h.size() == t.records.size() + 1);
        CHECK(t.final_state.feasible(cfg.P_BS));
        CHECK(t.final_state.achieved_rs == doctest::Approx(secrecy_rate(ch, t.final_state, cfg)).epsilon(1e-12));
    }
}

TEST_CASE("secrecy rate stays below the interference-free user rate") {
    ScenarioConfig cfg;
    cfg.L = 3;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const ChannelSet ch = scenario_channels(cfg, seed);
        Rng rng(seed + 100);
        const OptimizationTrace t = optimize(ch, cfg, {}, rng);
        REQUIRE(t.status == TraceStatus::Ok);
        const CRow h = effective_user_channel(ch, t.final_state.theta);
        const double bound = std::log2(1.0 + cfg.P_BS * h.squaredNorm() / cfg.sigma_r2);
        CHECK(t.final_state.achieved_rs <= bound + 1e-9);
        CHECK(t.iterations_used <= 10);
    }
}

TEST_CASE("fixed beamformer keeps MRT") {
    ScenarioConfig cfg;
    const ChannelSet ch = scenario_channels(cfg, 7);
    OptimizerConfig o;
    o.fix_beamformer = true;
    Rng rng(8);
    const OptimizationTrace t = optimize(ch, cfg, o, rng);
    REQUIRE(t.status == TraceStatus::Ok);
    CHECK((t.final_state.w - mrt_beamformer(ch.h_d, cfg.P_BS)).norm() < 1e-12);
    for (const IterationRecord& r : t.records)
        CHECK_FALSE(r.w_accepted);
}

TEST_CASE("runs are deterministic and write a trace") {
    ScenarioConfig cfg;
    const ChannelSet ch = scenario_channels(cfg, 3);
    Rng a(5), b(5);
    const OptimizationTrace ta = optimize(ch, cfg, {}, a);
    const OptimizationTrace tb = optimize(ch, cfg, {}, b);
    REQUIRE(ta.records.size() == tb.records.size());
    for (std::size_t i = 0; i < ta.records.size(); ++i) {
        CHECK(ta.records[i].rs == tb.records[i].rs);
        CHECK(ta.records[i].re == tb.records[i].re);
    }
    CHECK((ta.final_state.w - tb.final_state.w).norm() == 0.0);

    std::ostringstream os;
    write_trace_csv(os, ta);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line ==
          "iteration,Rs,Rr,Re,Rs_after_w,w_norm2,w_accepted,theta_accepted,primal_residual,dual_residual,wall_seconds");
    int rows = 0;
    while (std::getline(is, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 10);
        ++rows;
    }
    CHECK(rows == static_cast<int>(ta.records.size()) + 1);
}

TEST_CASE("random phase start") {
    ScenarioConfig cfg;
    const ChannelSet ch = scenario_channels(cfg, 4);
    OptimizerConfig o;
    o.init = PhaseInit::Random;
    Rng rng(9);
    const OptimizationTrace t = optimize(ch, cfg, o, rng);
    REQUIRE(t.status == TraceStatus::Ok);
    CHECK(t.final_state.achieved_rs >= t.initial_rs - 1e-9);
    CHECK(t.final_state.feasible(cfg.P_BS));
}
