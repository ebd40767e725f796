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

#include "cellergy/analytic.hpp"

#include <cmath>
#include <numbers>

#include "cellergy/bell.hpp"
#include "cellergy/path_kernel.hpp"
#include "cellergy/stats.hpp"

namespace cellergy {

std::vector<double> activity_moments(const TrafficModel& traffic, int max_order,
                                     double horizon_s, const ActivityMomentSpec& spec) {
    using Mode = ActivityMomentSpec::Mode;
    RngStream rng(derive_key(spec.seed, 0x616374ULL));
    switch (spec.mode) {
    case Mode::Analytic:
        return traffic_moments_upto(traffic, max_order, horizon_s,
                                    TrafficMomentMethod::Analytic);
    case Mode::Asymptotic:
        return traffic_moments_upto(traffic, max_order, horizon_s,
                                    TrafficMomentMethod::Asymptotic);
    case Mode::MonteCarlo:
        return traffic_moments_upto(traffic, max_order, horizon_s,
                                    TrafficMomentMethod::MonteCarlo, spec.mc_samples,
                                    &rng);
    case Mode::Auto:
        if (traffic.kind == TrafficKind::AlwaysOn || max_order <= 2) {
            return traffic_moments_upto(traffic, max_order, horizon_s,
                                        TrafficMomentMethod::Analytic);
        }
        return traffic_moments_upto(traffic, max_order, horizon_s,
                                    TrafficMomentMethod::MonteCarlo, spec.mc_samples,
                                    &rng);
    }
    return {};
}

std::vector<double> ja_cumulants_motionless(const CellConfig& cell,
                                            const TrafficModel& traffic, int max_order,
                                            const ActivityMomentSpec& spec) {
    cell.validate();
    traffic.validate();
    if (max_order < 1) {
        throw std::invalid_argument("ja_cumulants_motionless: order must be >= 1");
    }
    const double beta_a = cell.betas().additive;
    const auto m = activity_moments(traffic, max_order, cell.horizon_s, spec);
    std::vector<double> alpha(static_cast<std::size_t>(max_order));
    for (int k = 1; k <= max_order; ++k) {
        const double kernel_power =
            radial_inv_power_integral(cell.pathloss, cell.radius_m, k);
        alpha[k - 1] = cell.density_per_m2 * std::pow(beta_a, k) * m[k - 1] * kernel_power;
        if (!std::isfinite(alpha[k - 1])) {
            throw NumericError("ja_cumulants_motionless: cumulant not finite");
        }
    }
    return alpha;
}

namespace {

bool uses_monte_carlo(const TrafficModel& traffic, int max_order,
                      const ActivityMomentSpec& spec) {
    using Mode = ActivityMomentSpec::Mode;
    if (spec.mode == Mode::MonteCarlo) return true;
    return spec.mode == Mode::Auto && max_order > 2 &&
           traffic.kind != TrafficKind::AlwaysOn;
}

} // namespace

MomentReport ja_moments_motionless(const CellConfig& cell, const TrafficModel& traffic,
                                   int max_order, const ActivityMomentSpec& spec) {
    const auto alpha = ja_cumulants_motionless(cell, traffic, max_order, spec);
    MomentReport report = campbell_moments(alpha);
    report.provenance = uses_monte_carlo(traffic, max_order, spec)
                            ? Provenance::MonteCarlo
                            : Provenance::Analytic;
    report.formula_refs.insert(report.formula_refs.begin(),
                               "additive_energy_cumulants_motionless");
    report.validate();
    return report;
}

double MaxDistanceLaw::mean_count() const {
    return density_per_m2 * std::numbers::pi * radius_m * radius_m;
}

double MaxDistanceLaw::empty_atom() const { return std::exp(-mean_count()); }

double MaxDistanceLaw::pdf(double u) const {
    if (u < 0.0 || u > radius_m) return 0.0;
    const double lp = density_per_m2 * std::numbers::pi;
    return 2.0 * lp * u * std::exp(-lp * (radius_m * radius_m - u * u));
}

double MaxDistanceLaw::cdf(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= radius_m) return 1.0 - empty_atom();
    const double lp = density_per_m2 * std::numbers::pi;
    return std::exp(-lp * (radius_m * radius_m - u * u)) - empty_atom();
}

double MaxDistanceLaw::cdf_given_nonempty(double u) const {
    return cdf(u) / (1.0 - empty_atom());
}

MaxDistanceLaw max_distance_law(const CellConfig& cell) {
    cell.validate();
    return {cell.density_per_m2, cell.radius_m};
}

double jb_no_power_control(const CellConfig& cell) {
    cell.validate();
    return cell.betas().broadcast *
           pathloss_inv_radial(cell.pathloss, cell.radius_m) * cell.horizon_s;
}

double jb_power_control_moment(const CellConfig& cell, int order,
                               const QuadOptions& quad) {
    cell.validate();
    if (order < 1) {
        throw std::invalid_argument("jb_power_control_moment: order must be >= 1");
    }
    const MaxDistanceLaw law = max_distance_law(cell);
    const double scale = std::pow(cell.betas().broadcast * cell.horizon_s, order);
    const auto result = integrate_adaptive(
        [&](double u) {
            return std::pow(pathloss_inv_radial(cell.pathloss, u),
                            static_cast<double>(order)) *
                   law.pdf(u);
        },
        0.0, cell.radius_m, quad);
    return scale * result.value;
}

double power_control_gain(double mean_count, double gamma, const QuadOptions& quad) {
    if (!(mean_count > 0.0)) {
        throw std::invalid_argument("power_control_gain: mean count must be > 0");
    }
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("power_control_gain: gamma must be > 0");
    }
    // exp(-n) n^(-g/2) int_0^n v^(g/2) e^v dv  ==  int_0^n (1 - w/n)^(g/2) e^-w dw
    // (substitute v = n - w); the right side never overflows. The integrand
    // is bounded by e^-w, so truncating at w = 60 discards less than 1e-26
    // of mass while keeping the adaptive nodes where the mass actually is.
    const double half_gamma = 0.5 * gamma;
    const double w_hi = std::min(mean_count, 60.0);
    const auto result = integrate_adaptive(
        [&](double w) {
            return std::pow(1.0 - w / mean_count, half_gamma) * std::exp(-w);
        },
        0.0, w_hi, quad);
    return result.value;
}

double kappa(const CellConfig& cell, const TrafficModel& traffic,
             bool with_beta_factor) {
    cell.validate();
    traffic.validate();
    const auto betas = cell.betas();
    const double mean_ja = cell.density_per_m2 * betas.additive *
                           traffic.pi_on() * cell.horizon_s *
                           radial_inv_power_integral(cell.pathloss, cell.radius_m, 1);
    double value = mean_ja / jb_no_power_control(cell);
    if (!with_beta_factor) {
        // Drop the uplink/downlink multiplicity folded into beta_A; the ratio
        // then reads 2/(gamma+2) * rho * p_min_rx / p_min_beacon.
        value /= cell.budget.uplink_downlink_factor;
    }
    return value;
}

namespace {

constexpr std::uint64_t kTagFunctional = 0x46;

struct NodeAccumulator {
    std::vector<long double> sums;   // per order
    std::vector<long double> sums2;  // per order, of squared samples
};

/// Inner expectation at radius r for all orders 1..max_order at once.
/// Returns per-order mean and standard error of I^n over the samples.
void inner_expectation(const CellConfig& cell, const TrafficModel& traffic,
                       const MobilityModel& mobility, int max_order, double r,
                       long samples, RngStream& rng, const GaussLegendre&,
                       std::vector<double>& mean_out, std::vector<double>& se_out) {
    const double beta_a = cell.betas().additive;
    const double T = cell.horizon_s;
    const Vec2 x0(r, 0.0);
    NodeAccumulator acc;
    acc.sums.assign(max_order, 0.0L);
    acc.sums2.assign(max_order, 0.0L);

    for (long s = 0; s < samples; ++s) {
        const MotionPath path = sample_motion(mobility, rng);
        double integral = 0.0;
        if (!path.moving()) {
            if (r <= cell.radius_m) {
                integral = pathloss_inv_radial(cell.pathloss, r) *
                           sample_activity_integral(traffic, T, rng);
            } else {
                // Keep the stream in lockstep with the in-cell branch.
                (void)sample_activity_integral(traffic, T, rng);
            }
        } else {
            const auto crossing = disk_crossing(x0, path.velocity_eff, cell.radius_m);
            const double lo = std::max(0.0, crossing.t_enter);
            const double hi = std::min(T, crossing.t_exit);
            const TrafficTrajectory traj = sample_trajectory(traffic, T, rng);
            if (crossing.hits && hi > lo) {
                const double step = std::max((hi - lo) / 24.0, 1e-9);
                for_each_on_interval(traj, T, [&](double a, double b) {
                    const double seg_lo = std::max(a, lo);
                    const double seg_hi = std::min(b, hi);
                    if (seg_hi > seg_lo) {
                        integral += attenuation_line_integral(
                            cell.pathloss, x0, path.velocity_eff, seg_lo, seg_hi, step);
                    }
                });
            }
        }
        integral *= beta_a;
        double power = 1.0;
        for (int n = 1; n <= max_order; ++n) {
            power *= integral;
            acc.sums[n - 1] += power;
            acc.sums2[n - 1] += power * power;
        }
    }

    mean_out.resize(max_order);
    se_out.resize(max_order);
    const long double n = static_cast<long double>(samples);
    for (int k = 0; k < max_order; ++k) {
        const long double mean = acc.sums[k] / n;
        const long double var = std::max(0.0L, acc.sums2[k] / n - mean * mean);
        mean_out[k] = static_cast<double>(mean);
        se_out[k] = samples > 1 ? static_cast<double>(std::sqrt(var / n)) : 0.0;
    }
}

struct RadialPass {
    std::vector<double> value;  // per order
    std::vector<double> se;     // per order, quadrature-weighted MC error
};

RadialPass radial_pass(const CellConfig& cell, const TrafficModel& traffic,
                       const MobilityModel& mobility, int max_order, int nodes,
                       long samples_per_node, std::uint64_t seed) {
    const double reach = cell.radius_m + mobility.effective_speed_cap_mps() * cell.horizon_s;
    const auto& rule = gauss_legendre(nodes);
    RadialPass pass;
    pass.value.assign(max_order, 0.0);
    pass.se.assign(max_order, 0.0);
    std::vector<double> mean, se;
    for (int i = 0; i < nodes; ++i) {
        const double r = 0.5 * reach * (rule.nodes[i] + 1.0);
        const double w = 0.5 * reach * rule.weights[i] * 2.0 * std::numbers::pi * r;
        RngStream rng(derive_key(seed, kTagFunctional, nodes, i));
        inner_expectation(cell, traffic, mobility, max_order, r, samples_per_node, rng,
                          rule, mean, se);
        for (int k = 0; k < max_order; ++k) {
            pass.value[k] += w * mean[k];
            pass.se[k] += w * w * se[k] * se[k];
        }
    }
    for (int k = 0; k < max_order; ++k) pass.se[k] = std::sqrt(pass.se[k]);
    return pass;
}

std::vector<FunctionalEstimate> functional_all_orders(const CellConfig& cell,
                                                      const TrafficModel& traffic,
                                                      const MobilityModel& mobility,
                                                      int max_order,
                                                      const FunctionalOptions& options) {
    cell.validate();
    traffic.validate();
    mobility.validate();
    if (max_order < 1) {
        throw std::invalid_argument("mobility_functional: order must be >= 1");
    }

    std::vector<FunctionalEstimate> out(static_cast<std::size_t>(max_order));

    if (mobility.kind == MobilityKind::Motionless) {
        // Exact collapse: F_n = m_n[A, T] * integral_C (beta_A l^(-1))^n dx.
        const auto m = activity_moments(traffic, max_order, cell.horizon_s,
                                        options.activity);
        const double beta_a = cell.betas().additive;
        for (int n = 1; n <= max_order; ++n) {
            out[n - 1].value = m[n - 1] * std::pow(beta_a, n) *
                               radial_inv_power_integral(cell.pathloss, cell.radius_m, n);
        }
        return out;
    }

    int nodes = options.radial_nodes;
    long samples = options.samples_per_node;
    bool partial = false;
    // The coarse verification pass uses half the nodes; both passes must fit
    // the evaluation budget.
    const long per_sample_cost = 1;
    long budget_needed = (nodes + nodes / 2) * samples * per_sample_cost;
    if (budget_needed > options.max_evaluations) {
        samples = std::max(8L, options.max_evaluations / (nodes + nodes / 2));
        partial = true;
    }

    const RadialPass fine =
        radial_pass(cell, traffic, mobility, max_order, nodes, samples, options.seed);
    const RadialPass coarse = radial_pass(cell, traffic, mobility, max_order,
                                          std::max(4, nodes / 2), samples, options.seed);

    for (int k = 0; k < max_order; ++k) {
        const double grid_delta = std::abs(fine.value[k] - coarse.value[k]);
        out[k].value = fine.value[k];
        out[k].std_error = std::sqrt(fine.se[k] * fine.se[k] + grid_delta * grid_delta);
        out[k].partial = partial;
        out[k].evaluations = (nodes + std::max(4, nodes / 2)) * samples;
    }
    return out;
}

} // namespace

FunctionalEstimate mobility_functional(const CellConfig& cell,
                                       const TrafficModel& traffic,
                                       const MobilityModel& mobility, int order,
                                       const FunctionalOptions& options) {
    return functional_all_orders(cell, traffic, mobility, order, options).back();
}

MomentReport ja_moments_mobile(const CellConfig& cell, const TrafficModel& traffic,
                               const MobilityModel& mobility, int max_order,
                               const FunctionalOptions& options) {
    const auto functionals =
        functional_all_orders(cell, traffic, mobility, max_order, options);
    std::vector<double> cumulants(functionals.size());
    std::vector<double> errors(functionals.size());
    for (std::size_t i = 0; i < functionals.size(); ++i) {
        cumulants[i] = cell.density_per_m2 * functionals[i].value;
        errors[i] = cell.density_per_m2 * functionals[i].std_error;
    }
    MomentReport report = campbell_moments(cumulants);
    report.std_errors = errors;
    report.provenance = mobility.kind == MobilityKind::Motionless
                            ? Provenance::Analytic
                            : Provenance::MonteCarlo;
    report.formula_refs.insert(report.formula_refs.begin(),
                               "additive_energy_cumulants_mobile_kernel");
    return report;
}

double m_ratio(const CellConfig& cell, const TrafficModel& traffic, int order,
               MRatioMode mode, const ActivityMomentSpec& spec) {
    cell.validate();
    traffic.validate();
    if (order < 1) throw std::invalid_argument("m_ratio: order must be >= 1");
    if (cell.pathloss.kind != PathLossKind::Singular) {
        throw ConfigError("m_ratio: defined here for the singular path-loss model");
    }
    ActivityMomentSpec effective = spec;
    effective.mode = mode == MRatioMode::Asymptotic ? ActivityMomentSpec::Mode::Asymptotic
                                                    : ActivityMomentSpec::Mode::Auto;
    const int need = std::max(order, 2);
    const auto alpha = ja_cumulants_motionless(cell, traffic, need, effective);
    return alpha[order - 1] / std::pow(alpha[1], 0.5 * order);
}

TailValue edgeworth_tail(double m3, double alpha) {
    // integral_alpha^inf H_3 dmu = (8 alpha^2 + 4) phi(alpha) for H_3 = 8x^3 - 12x.
    const double raw = normal_upper_tail(alpha) +
                       m3 / 6.0 * (8.0 * alpha * alpha + 4.0) * normal_pdf(alpha);
    if (raw < 0.0) return {0.0, true};
    if (raw > 1.0) return {1.0, true};
    return {raw, false};
}

double approximation_error_bound(double m3_at_unit_intensity,
                                 double m4_at_unit_intensity, double density_per_m2) {
    if (!(m3_at_unit_intensity >= 0.0) || !(m4_at_unit_intensity >= 0.0)) {
        throw std::invalid_argument("approximation_error_bound: inputs must be >= 0");
    }
    if (!(density_per_m2 > 0.0)) {
        throw std::invalid_argument("approximation_error_bound: density must be > 0");
    }
    return (m3_at_unit_intensity * m3_at_unit_intensity / 6.0 +
            m4_at_unit_intensity / 9.0 * std::sqrt(2.0 / std::numbers::pi)) /
           density_per_m2;
}

TailRoot solve_tail_threshold(double m3, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("solve_tail_threshold: epsilon must lie in (0, 1)");
    }
    double lo = -10.0, hi = 10.0;
    double f_lo = edgeworth_tail(m3, lo).value - epsilon;
    double f_hi = edgeworth_tail(m3, hi).value - epsilon;
    if (f_lo < 0.0 || f_hi > 0.0) {
        throw ConfigError("solve_tail_threshold: no root in [-10, 10]");
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = edgeworth_tail(m3, mid).value - epsilon;
        if (f_mid >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double root = 0.5 * (lo + hi);
    return {root, edgeworth_tail(m3, root).clamped};
}

} // namespace cellergy
