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

#include "cellergy/config_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include <nlohmann/json.hpp>

namespace cellergy {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    const std::set<std::string> allow(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!allow.count(key)) {
            throw ConfigError(where + ": unknown key \"" + key + "\"");
        }
    }
}

double require_number(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) throw ConfigError(where + ": missing key \"" + key + "\"");
    if (!j.at(key).is_number()) {
        throw ConfigError(where + ": key \"" + std::string(key) + "\" must be a number");
    }
    return j.at(key).get<double>();
}

std::string require_string(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) throw ConfigError(where + ": missing key \"" + key + "\"");
    if (!j.at(key).is_string()) {
        throw ConfigError(where + ": key \"" + std::string(key) + "\" must be a string");
    }
    return j.at(key).get<std::string>();
}

PathLoss parse_pathloss(const json& j) {
    reject_unknown_keys(j, "pathloss", {"kind", "gamma", "r0_m"});
    PathLoss pl;
    const std::string kind = require_string(j, "pathloss", "kind");
    if (kind == "singular") {
        pl.kind = PathLossKind::Singular;
    } else if (kind == "clipped") {
        pl.kind = PathLossKind::Clipped;
    } else if (kind == "smooth") {
        pl.kind = PathLossKind::Smooth;
    } else {
        throw ConfigError("pathloss: unknown kind \"" + kind + "\"");
    }
    pl.gamma = require_number(j, "pathloss", "gamma");
    if (pl.kind == PathLossKind::Clipped) {
        pl.r0_m = require_number(j, "pathloss", "r0_m");
    } else if (j.contains("r0_m")) {
        throw ConfigError("pathloss: r0_m only applies to the clipped kind");
    }
    pl.validate();
    return pl;
}

LinkBudget parse_budget(const json& j) {
    reject_unknown_keys(j, "budget",
                        {"p_min_rx_mw", "p_min_beacon_mw", "frequency_hz", "d_ref_m",
                         "uplink_downlink_factor"});
    LinkBudget b;
    b.p_min_rx_mw = require_number(j, "budget", "p_min_rx_mw");
    b.p_min_beacon_mw = require_number(j, "budget", "p_min_beacon_mw");
    b.frequency_hz = require_number(j, "budget", "frequency_hz");
    b.d_ref_m = require_number(j, "budget", "d_ref_m");
    if (j.contains("uplink_downlink_factor")) {
        b.uplink_downlink_factor = j.at("uplink_downlink_factor").get<double>();
    }
    b.validate();
    return b;
}

TrafficModel parse_traffic(const json& j) {
    reject_unknown_keys(j, "traffic", {"kind", "mu_on_per_s", "mu_off_per_s"});
    TrafficModel t;
    const std::string kind = require_string(j, "traffic", "kind");
    if (kind == "exponential_on_off") {
        t.kind = TrafficKind::ExponentialOnOff;
        t.mu_on_per_s = require_number(j, "traffic", "mu_on_per_s");
        t.mu_off_per_s = require_number(j, "traffic", "mu_off_per_s");
    } else if (kind == "always_on") {
        t.kind = TrafficKind::AlwaysOn;
        t.mu_on_per_s = 0.0;
        t.mu_off_per_s = 0.0;
        if (j.contains("mu_on_per_s") || j.contains("mu_off_per_s")) {
            throw ConfigError("traffic: always_on takes no rates");
        }
    } else {
        throw ConfigError("traffic: unknown kind \"" + kind + "\"");
    }
    t.validate();
    return t;
}

MobilityModel parse_mobility(const json& j) {
    reject_unknown_keys(j, "mobility", {"kind", "speed_mps", "epsilon"});
    MobilityModel m;
    const std::string kind = require_string(j, "mobility", "kind");
    if (kind == "motionless") {
        m.kind = MobilityKind::Motionless;
        if (j.contains("speed_mps")) {
            throw ConfigError("mobility: motionless takes no speed_mps");
        }
    } else if (kind == "constant_velocity") {
        m.kind = MobilityKind::ConstantVelocity;
        if (!j.contains("speed_mps")) {
            throw ConfigError("mobility: constant_velocity needs speed_mps");
        }
        const json& s = j.at("speed_mps");
        reject_unknown_keys(s, "mobility.speed_mps", {"fixed", "uniform"});
        if (s.contains("fixed") == s.contains("uniform")) {
            throw ConfigError("mobility.speed_mps: exactly one of fixed/uniform");
        }
        if (s.contains("fixed")) {
            m.speed = {SpeedDistKind::Fixed, s.at("fixed").get<double>(),
                       s.at("fixed").get<double>()};
        } else {
            const auto arr = s.at("uniform");
            if (!arr.is_array() || arr.size() != 2) {
                throw ConfigError("mobility.speed_mps.uniform: expected [lo, hi]");
            }
            m.speed = {SpeedDistKind::Uniform, arr[0].get<double>(),
                       arr[1].get<double>()};
        }
    } else {
        throw ConfigError("mobility: unknown kind \"" + kind + "\"");
    }
    if (j.contains("epsilon")) m.epsilon = j.at("epsilon").get<double>();
    m.validate();
    return m;
}

} // namespace

Scenario scenario_from_json(const json& j) {
    reject_unknown_keys(j, "scenario",
                        {"radius_m", "density_per_m2", "horizon_s", "pathloss",
                         "budget", "traffic", "mobility"});
    Scenario s;
    s.cell.radius_m = require_number(j, "scenario", "radius_m");
    s.cell.density_per_m2 = require_number(j, "scenario", "density_per_m2");
    s.cell.horizon_s = require_number(j, "scenario", "horizon_s");
    if (!j.contains("pathloss")) throw ConfigError("scenario: missing pathloss");
    if (!j.contains("budget")) throw ConfigError("scenario: missing budget");
    if (!j.contains("traffic")) throw ConfigError("scenario: missing traffic");
    if (!j.contains("mobility")) throw ConfigError("scenario: missing mobility");
    s.cell.pathloss = parse_pathloss(j.at("pathloss"));
    s.cell.budget = parse_budget(j.at("budget"));
    s.traffic = parse_traffic(j.at("traffic"));
    s.mobility = parse_mobility(j.at("mobility"));
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("scenario parse error in " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

nlohmann::json to_json(const Scenario& s) {
    json j;
    j["radius_m"] = s.cell.radius_m;
    j["density_per_m2"] = s.cell.density_per_m2;
    j["horizon_s"] = s.cell.horizon_s;
    json pl;
    pl["kind"] = to_string(s.cell.pathloss.kind);
    pl["gamma"] = s.cell.pathloss.gamma;
    if (s.cell.pathloss.kind == PathLossKind::Clipped) pl["r0_m"] = s.cell.pathloss.r0_m;
    j["pathloss"] = pl;
    json b;
    b["p_min_rx_mw"] = s.cell.budget.p_min_rx_mw;
    b["p_min_beacon_mw"] = s.cell.budget.p_min_beacon_mw;
    b["frequency_hz"] = s.cell.budget.frequency_hz;
    b["d_ref_m"] = s.cell.budget.d_ref_m;
    b["uplink_downlink_factor"] = s.cell.budget.uplink_downlink_factor;
    j["budget"] = b;
    json t;
    if (s.traffic.kind == TrafficKind::AlwaysOn) {
        t["kind"] = "always_on";
    } else {
        t["kind"] = "exponential_on_off";
        t["mu_on_per_s"] = s.traffic.mu_on_per_s;
        t["mu_off_per_s"] = s.traffic.mu_off_per_s;
    }
    j["traffic"] = t;
    json m;
    if (s.mobility.kind == MobilityKind::Motionless) {
        m["kind"] = "motionless";
    } else {
        m["kind"] = "constant_velocity";
        if (s.mobility.speed.kind == SpeedDistKind::Fixed) {
            m["speed_mps"] = json{{"fixed", s.mobility.speed.lo_mps}};
        } else {
            m["speed_mps"] =
                json{{"uniform", {s.mobility.speed.lo_mps, s.mobility.speed.hi_mps}}};
        }
    }
    m["epsilon"] = s.mobility.epsilon;
    j["mobility"] = m;
    return j;
}

} // namespace cellergy
