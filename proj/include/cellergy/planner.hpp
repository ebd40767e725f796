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

#include <optional>
#include <string>
#include <vector>

#include "cellergy/analytic.hpp"
#include "cellergy/model.hpp"
#include "cellergy/traffic.hpp"

namespace cellergy {

/// Deployment-plus-energy cost model over a region of area S:
///   Cost(R) = S (1 + kappa) beta_B T R^(gamma - 2) + c1 S / R^2,
/// i.e. S / R^2 stations, each with a fixed deployment cost c1 and an
/// operating cost proportional to its consumed energy over the horizon.
struct KappaPolicy {
    enum class Kind { Constant, Recompute };
    Kind kind = Kind::Constant;
    double value = 0.0; // Constant only

    static KappaPolicy constant(double v) { return {Kind::Constant, v}; }
    static KappaPolicy recompute() { return {Kind::Recompute, 0.0}; }
};

struct CostModel {
    double area_m2 = 1e8;
    double c1 = 1.0;        // per-station deployment cost
    double horizon_s = 0.0; // network lifetime; 0 = take the cell horizon
    KappaPolicy kappa_policy;

    void validate() const {
        if (!(area_m2 > 0.0)) throw ConfigError("cost: area_m2 must be > 0");
        if (!(c1 >= 0.0)) throw ConfigError("cost: c1 must be >= 0");
        if (!(horizon_s >= 0.0)) throw ConfigError("cost: horizon_s must be >= 0");
    }
};

/// Total network cost at radius R. Under the Recompute policy kappa is
/// re-derived at each R from the fixed user density (the mean active count
/// grows with the cell), which makes the cost landscape honest when density
/// rather than load is held fixed.
double network_cost(const CostModel& cost, const CellConfig& cell_template,
                    const TrafficModel& traffic, double radius_m);

struct RadiusResult {
    /// Stationary point of Cost under constant kappa,
    ///   R_opt = (2 c1 / ((gamma - 2)(1 + kappa) beta_B T))^(1/gamma),
    /// the radius where dCost/dR vanishes. Needs gamma > 2; absent under
    /// the Recompute policy.
    std::optional<double> r_opt_closed_form;
    double r_hat_numeric = 0.0; // golden-section minimizer, cross-validation
    double cost_at_opt = 0.0;
    double kappa_used = 0.0; // Constant policy value, or kappa at r_hat
};

/// Optimal cell radius. The closed form exists only for the Constant kappa
/// policy with gamma > 2; the numeric minimizer is always returned.
RadiusResult optimal_radius(const CostModel& cost, const CellConfig& cell_template,
                            const TrafficModel& traffic);

enum class BatteryMode { ExactMoments, Asymptotic };

/// Battery level sized so P(total energy > zeta) stays below epsilon.
struct BatterySpec {
    double epsilon = 0.0;
    double zeta_additive_mws = 0.0; // mu_F + alpha* sigma_F for J_A
    double jb0_mws = 0.0;            // fixed broadcast part over the horizon
    double zeta_total_mws = 0.0;     // budgeted battery level
    double alpha_star = 0.0;         // standardized threshold
    double m3 = 0.0;                 // m(3, lambda) used in the tail
    double e_lambda = 0.0;           // approximation error bound
    BatteryMode mode = BatteryMode::Asymptotic;
    bool reliable = true;            // false when e_lambda >= epsilon
    bool clamped_at_root = false;    // tail correction left [0, 1] at alpha*
    std::vector<std::string> warnings;
};

/// Dimensioning procedure (singular path loss):
///  1. m(3, lambda) from the defining integral ratio;
///  2. E_lambda reported, with warnings when it is not small next to epsilon;
///  3. alpha* solving mu3([alpha, inf)) = epsilon;
///  4. zeta = m_1 (beta_A R^gamma / (gamma/2 + 1)) n
///          + alpha* sqrt(m_2) (beta_A R^gamma / sqrt(gamma + 1)) sqrt(n),
///     plus the fixed broadcast energy beta_B R^gamma T on top.
/// Asymptotic mode substitutes m_k = (pi_on T)^k throughout.
BatterySpec dimension_battery(const CellConfig& cell, const TrafficModel& traffic,
                              double epsilon, BatteryMode mode,
                              const ActivityMomentSpec& spec = {});

} // namespace cellergy
