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
#include "irssec/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace irssec {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ConfigError(where + ": unknown key '" + key + "'");
}

template <typename T>
void read(const json& j, const std::string& where, const char* key, T& out) {
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

void read_dbm(const json& j, const std::string& where, const char* key, double& watt) {
    double dbm = watt_to_dbm(watt);
    read(j, where, key, dbm);
    watt = dbm_to_watt(dbm);
}

void read_path_loss(const json& j, const std::string& where, PathLossParams& p) {
    check_keys(j, where, {"mu_db", "kappa", "sigma_xi_db"});
    read(j, where, "mu_db", p.mu_db);
    read(j, where, "kappa", p.kappa);
    read(j, where, "sigma_xi_db", p.sigma_xi_db);
}

void read_scenario(const json& j, ScenarioConfig& s) {
    const std::string w = "scenario";
    check_keys(j, w,
               {"M", "N", "L", "K", "P_BS_dbm", "sigma_r2_dbm", "sigma_e2_dbm", "G_b", "G_l", "element_spacing",
                "path_loss", "geometry"});
    read(j, w, "M", s.M);
    if (j.contains("N")) {
        int n = s.N();
        read(j, w, "N", n);
        if (n < 1)
            throw ConfigError("scenario.N: must be positive");
        s.set_elements(n);
    }
    read(j, w, "L", s.L);
    read(j, w, "K", s.K);
    read_dbm(j, w, "P_BS_dbm", s.P_BS);
    read_dbm(j, w, "sigma_r2_dbm", s.sigma_r2);
    read_dbm(j, w, "sigma_e2_dbm", s.sigma_e2);
    read(j, w, "G_b", s.G_b);
    read(j, w, "G_l", s.G_l);
    read(j, w, "element_spacing", s.element_spacing);
    if (j.contains("path_loss")) {
        const json& pl = j.at("path_loss");
        check_keys(pl, "scenario.path_loss", {"nlos", "los"});
        if (pl.contains("nlos"))
            read_path_loss(pl.at("nlos"), "scenario.path_loss.nlos", s.pl_nlos);
        if (pl.contains("los"))
            read_path_loss(pl.at("los"), "scenario.path_loss.los", s.pl_los);
    }
    if (j.contains("geometry")) {
        const json& g = j.at("geometry");
        const std::string gw = "scenario.geometry";
        check_keys(g, gw,
                   {"bs_height", "irs_height", "terminal_height", "irs_radius", "user_distance", "eve_distance",
                    "beta_min", "beta_max", "shared_beta"});
        Layout& l = s.layout;
        read(g, gw, "bs_height", l.bs_height);
        read(g, gw, "irs_height", l.irs_height);
        read(g, gw, "terminal_height", l.terminal_height);
        read(g, gw, "irs_radius", l.irs_radius);
        read(g, gw, "user_distance", l.user_distance);
        read(g, gw, "eve_distance", l.eve_distance);
        read(g, gw, "beta_min", l.beta_min);
        read(g, gw, "beta_max", l.beta_max);
        read(g, gw, "shared_beta", l.shared_beta);
    }
}

void read_optimizer(const json& j, OptimizerConfig& o) {
    const std::string w = "optimizer";
    check_keys(j, w, {"epsilon", "max_outer_iters", "trials", "init", "solver"});
    read(j, w, "epsilon", o.epsilon);
    read(j, w, "max_outer_iters", o.max_outer_iters);
    read(j, w, "trials", o.trials);
    if (j.contains("init")) {
        std::string init;
        read(j, w, "init", init);
        if (init == "identity")
            o.init = PhaseInit::Identity;
        else if (init == "random")
            o.init = PhaseInit::Random;
        else
            throw ConfigError("optimizer.init: expected 'identity' or 'random'");
    }
    if (j.contains("solver")) {
        const json& sj = j.at("solver");
        check_keys(sj, "optimizer.solver", {"tol", "max_iter", "step_fraction"});
        read(sj, "optimizer.solver", "tol", o.solver.tol);
        read(sj, "optimizer.solver", "max_iter", o.solver.max_iter);
        read(sj, "optimizer.solver", "step_fraction", o.solver.step_fraction);
    }
}

void read_run(const json& j, RunSettings& r) {
    check_keys(j, "run", {"trials", "seed", "workers"});
    read(j, "run", "trials", r.trials);
    read(j, "run", "seed", r.seed);
    read(j, "run", "workers", r.workers);
}

} // namespace

void RunConfig::validate() const {
    try {
        scenario.validate();
        optimizer.validate();
        if (optimizer.solver.tol <= 0.0 || optimizer.solver.max_iter < 1 || optimizer.solver.step_fraction <= 0.0 ||
            optimizer.solver.step_fraction >= 1.0)
            throw DomainError("invalid solver settings");
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (run.trials < 1)
        throw ConfigError("run.trials must be at least 1");
    if (run.workers < 1)
        throw ConfigError("run.workers must be at least 1");
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    check_keys(j, "config", {"scenario", "optimizer", "run"});
    RunConfig cfg;
    if (j.contains("scenario"))
        read_scenario(j.at("scenario"), cfg.scenario);
    if (j.contains("optimizer"))
        read_optimizer(j.at("optimizer"), cfg.optimizer);
    if (j.contains("run"))
        read_run(j.at("run"), cfg.run);
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_json(const RunConfig& cfg) {
    const ScenarioConfig& s = cfg.scenario;
    const Layout& l = s.layout;
    const auto pl = [](const PathLossParams& p) {
        return json{{"mu_db", p.mu_db}, {"kappa", p.kappa}, {"sigma_xi_db", p.sigma_xi_db}};
    };
    json j;
    j["scenario"] = {{"M", s.M},
                     {"N", s.N()},
                     {"L", s.L},
                     {"K", s.K},
                     {"P_BS_dbm", watt_to_dbm(s.P_BS)},
                     {"sigma_r2_dbm", watt_to_dbm(s.sigma_r2)},
                     {"sigma_e2_dbm", watt_to_dbm(s.sigma_e2)},
                     {"G_b", s.G_b},
                     {"G_l", s.G_l},
                     {"element_spacing", s.element_spacing},
                     {"path_loss", {{"nlos", pl(s.pl_nlos)}, {"los", pl(s.pl_los)}}},
                     {"geometry",
                      {{"bs_height", l.bs_height},
                       {"irs_height", l.irs_height},
                       {"terminal_height", l.terminal_height},
                       {"irs_radius", l.irs_radius},
                       {"user_distance", l.user_distance},
                       {"eve_distance", l.eve_distance},
                       {"beta_min", l.beta_min},
                       {"beta_max", l.beta_max},
                       {"shared_beta", l.shared_beta}}}};
    const OptimizerConfig& o = cfg.optimizer;
    j["optimizer"] = {{"epsilon", o.epsilon},
                      {"max_outer_iters", o.max_outer_iters},
                      {"trials", o.trials},
                      {"init", o.init == PhaseInit::Identity ? "identity" : "random"},
                      {"solver", {{"tol", o.solver.tol}, {"max_iter", o.solver.max_iter},
                                  {"step_fraction", o.solver.step_fraction}}}};
    j["run"] = {{"trials", cfg.run.trials}, {"seed", cfg.run.seed}, {"workers", cfg.run.workers}};
    return j.dump(2);
}

} // namespace irssec
