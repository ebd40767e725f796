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

#include <numbers>

#include "cellergy/pathloss.hpp"
#include "cellergy/types.hpp"

namespace cellergy {

/// Link-budget constants for one carrier.
///
/// K = (c / (4 pi f d_ref))^2 * d_ref^gamma converts emitted power to
/// received power at the reference geometry. The additive factor covers the
/// uplink and the downlink of each live connection, hence the default
/// uplink_downlink_factor of 2:
///
///   beta_additive  = uplink_downlink_factor * p_min_rx / K
///   beta_broadcast = p_min_beacon / K
struct LinkBudget {
    double p_min_rx_mw = 1e-9;       // uplink sensitivity
    double p_min_beacon_mw = 1e-8;   // beacon sensitivity at cell edge
    double frequency_hz = 2e9;
    double d_ref_m = 1.0;
    double uplink_downlink_factor = 2.0;

    static constexpr double kLightSpeedMps = 299792458.0;

    void validate() const {
        if (!(p_min_rx_mw > 0.0)) throw ConfigError("budget: p_min_rx_mw must be > 0");
        if (!(p_min_beacon_mw > 0.0)) {
            throw ConfigError("budget: p_min_beacon_mw must be > 0");
        }
        if (!(frequency_hz > 0.0)) throw ConfigError("budget: frequency_hz must be > 0");
        if (!(d_ref_m > 0.0)) throw ConfigError("budget: d_ref_m must be > 0");
        if (!(uplink_downlink_factor > 0.0)) {
            throw ConfigError("budget: uplink_downlink_factor must be > 0");
        }
    }

    double k_factor(double gamma) const {
        const double base =
            kLightSpeedMps / (4.0 * std::numbers::pi * frequency_hz * d_ref_m);
        return base * base * std::pow(d_ref_m, gamma);
    }
};

struct Betas {
    double additive = 0.0;   // beta_A, mW * m^(-gamma) scale
    double broadcast = 0.0;  // beta_B
};

/// Both link-budget multipliers for a given path-loss exponent.
inline Betas beta_constants(const LinkBudget& budget, double gamma) {
    budget.validate();
    if (!(gamma > 0.0)) throw ConfigError("beta_constants: gamma must be > 0");
    const double k = budget.k_factor(gamma);
    return {budget.uplink_downlink_factor * budget.p_min_rx_mw / k,
            budget.p_min_beacon_mw / k};
}

/// Scenario root: one circular cell of radius R centered at the base
/// station, users forming a homogeneous Poisson process of the given
/// density, observed over [0, horizon]. Immutable after construction.
struct CellConfig {
    double radius_m = 500.0;
    double density_per_m2 = 1e-4;
    double horizon_s = 3600.0;
    PathLoss pathloss;
    LinkBudget budget;

    void validate() const {
        if (!(radius_m > 0.0)) throw ConfigError("cell: radius_m must be > 0");
        if (!(density_per_m2 > 0.0)) {
            throw ConfigError("cell: density_per_m2 must be > 0");
        }
        if (!(horizon_s > 0.0)) throw ConfigError("cell: horizon_s must be > 0");
        pathloss.validate();
        budget.validate();
    }

    /// Mean number of users in the cell.
    double mean_count() const {
        return density_per_m2 * std::numbers::pi * radius_m * radius_m;
    }

    /// Mean number of active users given the stationary ON probability.
    double mean_active(double pi_on) const { return mean_count() * pi_on; }

    Betas betas() const { return beta_constants(budget, pathloss.gamma); }
};

} // namespace cellergy
