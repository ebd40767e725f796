/*
   Copyright 2026 the cellergy authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cellergy/mobility.hpp"
#include "cellergy/model.hpp"
#include "cellergy/traffic.hpp"

namespace cellergy {

/// One fully specified scenario: cell, traffic law, mobility law.
struct Scenario {
    CellConfig cell;
    TrafficModel traffic;
    MobilityModel mobility;

    void validate() const {
        cell.validate();
        traffic.validate();
        mobility.validate();
    }
};

/// Parses a scenario document. The schema is strict: unknown keys anywhere
/// raise ConfigError, as do missing required keys and out-of-range values.
///
/// {
///   "radius_m": 500, "density_per_m2": 1e-4, "horizon_s": 3600,
///   "pathloss": {"kind": "singular|clipped|smooth", "gamma": 3, "r0_m": 1},
///   "budget": {"p_min_rx_mw": 1e-9, "p_min_beacon_mw": 1e-8,
///              "frequency_hz": 2e9, "d_ref_m": 1,
///              "uplink_downlink_factor": 2},
///   "traffic": {"kind": "exponential_on_off|always_on",
///               "mu_on_per_s": 0.01, "mu_off_per_s": 0.01},
///   "mobility": {"kind": "motionless|constant_velocity",
///                "speed_mps": {"fixed": 5} | {"uniform": [1, 10]},
///                "epsilon": 1.0}
/// }
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

nlohmann::json to_json(const Scenario& scenario);

} // namespace cellergy
