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

#include "cellergy/planner.hpp"

#include <cmath>
#include <cstdio>

namespace cellergy {

namespace {

double cost_horizon(const CostModel& cost, const CellConfig& cell) {
    return cost.horizon_s > 0.0 ? cost.horizon_s : cell.horizon_s;
}

double kappa_at_radius(const CostModel& cost, const CellConfig& cell_template,
                       const TrafficModel& traffic, double radius_m) {
    if (cost.kappa_policy.kind == KappaPolicy::Kind::Constant) {
        return cost.kappa_policy.value;
    }
    CellConfig cell = cell_template;
    cell.radius_m = radius_m;
    return kappa(cell, traffic);
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > rel_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

double network_cost(const CostModel& cost, const CellConfig& cell_template,
                    const TrafficModel& traffic, double radius_m) {
    cost.validate();
    cell_template.validate();
    if (!(radius_m > 0.0)) throw std::invalid_argument("network_cost: radius must be > 0");

    const double gamma = cell_template.pathloss.gamma;
    const double beta_b = cell_template.betas().broadcast;
    const double T = cost_horizon(cost, cell_template);
    const double k = kappa_at_radius(cost, cell_template, traffic, radius_m);
    return cost.area_m2 * (1.0 + k) * beta_b * T * std::pow(radius_m, gamma - 2.0) +
           cost.c1 * cost.area_m2 / (radius_m * radius_m);
}

RadiusResult optimal_radius(const CostModel& cost, const CellConfig& cell_template,
                            const TrafficModel& traffic) {
    cost.validate();
    cell_template.validate();
    const double gamma = cell_template.pathloss.gamma;
    const double beta_b = cell_template.betas().broadcast;
    const double T = cost_horizon(cost, cell_template);

    RadiusResult out;
    const bool constant_kappa = cost.kappa_policy.kind == KappaPolicy::Kind::Constant;

    double bracket_lo = 1e-3;
    double bracket_hi = 1e7;
    if (constant_kappa && gamma > 2.0 && cost.c1 > 0.0) {
        // Setting dCost/dR = 0:
        //   (gamma - 2)(1 + kappa) beta_B T R^(gamma - 3) = 2 c1 R^(-3)
        // gives the closed form below. Note the (gamma - 2): the energy term
        // scales as R^(gamma - 2), so its log-derivative carries gamma - 2.
        const double k = cost.kappa_policy.value;
        out.r_opt_closed_form = std::pow(
            2.0 * cost.c1 / ((gamma - 2.0) * (1.0 + k) * beta_b * T), 1.0 / gamma);
        bracket_lo = *out.r_opt_closed_form / 64.0;
        bracket_hi = *out.r_opt_closed_form * 64.0;
    }

    auto objective = [&](double r) {
        return network_cost(cost, cell_template, traffic, r);
    };
    out.r_hat_numeric = golden_section_min(objective, bracket_lo, bracket_hi, 1e-12);
    out.cost_at_opt = objective(out.r_hat_numeric);
    out.kappa_used = constant_kappa
                         ? cost.kappa_policy.value
                         : kappa_at_radius(cost, cell_template, traffic,
                                           out.r_hat_numeric);
    return out;
}

BatterySpec dimension_battery(const CellConfig& cell, const TrafficModel& traffic,
                              double epsilon, BatteryMode mode,
                              const ActivityMomentSpec& spec) {
    cell.validate();
    traffic.validate();
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("dimension_battery: epsilon must lie in (0, 1)");
    }
    if (cell.pathloss.kind != PathLossKind::Singular) {
        throw ConfigError("dimension_battery: singular path loss required");
    }

    BatterySpec out;
    out.epsilon = epsilon;
    out.mode = mode;

    const MRatioMode ratio_mode =
        mode == BatteryMode::Asymptotic ? MRatioMode::Asymptotic : MRatioMode::FiniteT;
    out.m3 = m_ratio(cell, traffic, 3, ratio_mode, spec);

    // Error bound from the unit-intensity ratios, scaled back by 1/lambda.
    CellConfig unit = cell;
    unit.density_per_m2 = 1.0;
    const double m3_unit = m_ratio(unit, traffic, 3, ratio_mode, spec);
    const double m4_unit = m_ratio(unit, traffic, 4, ratio_mode, spec);
    out.e_lambda = approximation_error_bound(m3_unit, m4_unit, cell.density_per_m2);

    char buf[200];
    if (out.e_lambda >= epsilon) {
        out.reliable = false;
        std::snprintf(buf, sizeof(buf),
                      "approximation error bound %.3g exceeds epsilon %.3g; "
                      "result unreliable",
                      out.e_lambda, epsilon);
        out.warnings.emplace_back(buf);
    } else if (out.e_lambda > epsilon / 10.0) {
        std::snprintf(buf, sizeof(buf),
                      "approximation error bound %.3g above epsilon/10 = %.3g "
                      "(ratio %.2f); tail target is not comfortably resolved",
                      out.e_lambda, epsilon / 10.0, out.e_lambda / epsilon);
        out.warnings.emplace_back(buf);
    }

    const TailRoot root = solve_tail_threshold(out.m3, epsilon);
    out.alpha_star = root.alpha;
    out.clamped_at_root = root.clamped_at_root;
    if (root.clamped_at_root) {
        out.warnings.emplace_back(
            "tail correction clamped at the solved threshold; approximation out "
            "of validity");
    }

    const TrafficMomentMethod method = mode == BatteryMode::Asymptotic
                                           ? TrafficMomentMethod::Asymptotic
                                           : TrafficMomentMethod::Analytic;
    const double T = cell.horizon_s;
    const double m1 = traffic_moment(traffic, 1, T, method).value;
    const double m2 = traffic_moment(traffic, 2, T, method).value;
    const double gamma = cell.pathloss.gamma;
    const double beta_a = cell.betas().additive;
    const double n = cell.mean_count();
    const double scale = beta_a * std::pow(cell.radius_m, gamma);

    // zeta for J_A is mu_F + alpha* sigma_F in disguise: the two factors are
    // exactly the first two cumulants of the motionless additive energy.
    out.zeta_additive_mws = m1 * scale / (0.5 * gamma + 1.0) * n +
                            out.alpha_star * std::sqrt(m2) * scale /
                                std::sqrt(gamma + 1.0) * std::sqrt(n);
    out.jb0_mws = jb_no_power_control(cell);
    out.zeta_total_mws = out.zeta_additive_mws + out.jb0_mws;
    return out;
}

} // namespace cellergy
