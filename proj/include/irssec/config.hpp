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

#include <cstdint>
#include <iosfwd>
#include <string>

#include "irssec/alternating.hpp"

namespace irssec {

// JSON run configuration. Every key is optional; missing keys keep the
// defaults and unknown keys are rejected. Powers are given in dBm.
//
// {
//   "scenario": {
//     "M": 4, "N": 16, "L": 3, "K": 4,
//     "P_BS_dbm": 30, "sigma_r2_dbm": -95, "sigma_e2_dbm": -95,
//     "G_b": 1, "G_l": 1, "element_spacing": 0.5,
//     "path_loss": { "nlos": {"mu_db": 72, "kappa": 2.92, "sigma_xi_db": 8.7},
//                    "los":  {"mu_db": 61.4, "kappa": 2, "sigma_xi_db": 5.8} },
//     "geometry": { "bs_height": 10, "irs_height": 10, "terminal_height": 1.5,
//                   "irs_radius": 25, "user_distance": 20, "eve_distance": 18,
//                   "beta_min": 0, "beta_max": 1.5707963267948966, "shared_beta": true }
//   },
//   "optimizer": { "epsilon": 1e-3, "max_outer_iters": 30, "trials": 100,
//                  "init": "identity", "solver": {"tol": 1e-8, "max_iter": 100, "step_fraction": 0.98} },
//   "run": { "trials": 200, "seed": 1, "workers": 1 }
// }

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunSettings {
    int trials = 200;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct RunConfig {
    ScenarioConfig scenario;
    OptimizerConfig optimizer;
    RunSettings run;

    void validate() const;
};

/// Throws ConfigError with the offending key on malformed input.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Round-trips through parse_config.
std::string to_json(const RunConfig& cfg);

} // namespace irssec
