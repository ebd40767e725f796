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

#include "cellergy/traffic.hpp"

#include <cmath>
#include <stdexcept>

#include "cellergy/stats.hpp"

namespace cellergy {

TrafficTrajectory sample_trajectory(const TrafficModel& model, double horizon_s,
                                    RngStream& rng) {
    model.validate();
    if (!(horizon_s > 0.0)) {
        throw std::invalid_argument("sample_trajectory: horizon must be > 0");
    }
    TrafficTrajectory traj;
    if (model.kind == TrafficKind::AlwaysOn) {
        traj.initial_on = true;
        return traj;
    }
    traj.initial_on = rng.uniform01() < model.pi_on();
    bool on = traj.initial_on;
    double t = 0.0;
    for (;;) {
        t += rng.exponential(on ? model.mu_on_per_s : model.mu_off_per_s);
        if (t >= horizon_s) break;
        traj.switch_times.push_back(t);
        on = !on;
    }
    return traj;
}

double integrate_activity(const TrafficTrajectory& traj, double horizon_s) {
    double total = 0.0;
    for_each_on_interval(traj, horizon_s, [&](double a, double b) { total += b - a; });
    return total;
}

double sample_activity_integral(const TrafficModel& model, double horizon_s,
                                RngStream& rng) {
    if (model.kind == TrafficKind::AlwaysOn) return horizon_s;
    bool on = rng.uniform01() < model.pi_on();
    double t = 0.0;
    double total = 0.0;
    for (;;) {
        const double hold = rng.exponential(on ? model.mu_on_per_s : model.mu_off_per_s);
        const double next = t + hold;
        if (on) total += std::min(next, horizon_s) - t;
        if (next >= horizon_s) break;
        t = next;
        on = !on;
    }
    return total;
}

namespace {

double analytic_moment(const TrafficModel& model, int order, double horizon_s) {
    if (model.kind == TrafficKind::AlwaysOn) {
        return std::pow(horizon_s, order); // deterministic integral
    }
    const double pi_on = model.pi_on();
    if (order == 1) return pi_on * horizon_s;
    if (order == 2) {
        const double theta = model.rate_sum();
        const double cov_term =
            horizon_s / theta - (1.0 - std::exp(-theta * horizon_s)) / (theta * theta);
        return pi_on * horizon_s * pi_on * horizon_s +
               2.0 * pi_on * model.pi_off() * cov_term;
    }
    throw std::invalid_argument(
        "traffic_moment: no closed form for ON/OFF moments of order >= 3; "
        "use MonteCarlo or Asymptotic");
}

} // namespace

TrafficMoment traffic_moment(const TrafficModel& model, int order, double horizon_s,
                             TrafficMomentMethod method, long samples, RngStream* rng) {
    model.validate();
    if (order < 1) throw std::invalid_argument("traffic_moment: order must be >= 1");
    if (!(horizon_s > 0.0)) {
        throw std::invalid_argument("traffic_moment: horizon must be > 0");
    }

    switch (method) {
    case TrafficMomentMethod::Analytic:
        return {analytic_moment(model, order, horizon_s), 0.0, method};
    case TrafficMomentMethod::Asymptotic:
        return {std::pow(model.pi_on() * horizon_s, order), 0.0, method};
    case TrafficMomentMethod::MonteCarlo: {
        if (samples < 2) {
            throw std::invalid_argument("traffic_moment: MonteCarlo needs samples >= 2");
        }
        RngStream local(derive_key(0x7261666663ULL, order));
        RngStream& gen = rng ? *rng : local;
        std::vector<double> powers(static_cast<std::size_t>(samples));
        for (auto& p : powers) {
            p = std::pow(sample_activity_integral(model, horizon_s, gen), order);
        }
        const auto stats = SampleMoments::from(powers);
        return {stats.mean, stats.std_error_mean(), method};
    }
    }
    return {};
}

std::vector<double> traffic_moments_upto(const TrafficModel& model, int max_order,
                                         double horizon_s, TrafficMomentMethod method,
                                         long samples, RngStream* rng) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(max_order));
    if (method == TrafficMomentMethod::MonteCarlo) {
        // One trajectory set serves every order; moments of the same sample.
        RngStream local(derive_key(0x7261666663ULL, max_order));
        RngStream& gen = rng ? *rng : local;
        std::vector<double> integrals(static_cast<std::size_t>(samples));
        for (auto& v : integrals) {
            v = sample_activity_integral(model, horizon_s, gen);
        }
        for (int k = 1; k <= max_order; ++k) {
            long double acc = detail::pairwise_accumulate(
                integrals, [k](double x) { return std::pow(x, k); });
            out.push_back(static_cast<double>(acc / static_cast<long double>(samples)));
        }
        // Exact low orders are preferred when the model admits them.
        out[0] = analytic_moment(model, 1, horizon_s);
        if (max_order >= 2) out[1] = analytic_moment(model, 2, horizon_s);
        return out;
    }
    for (int k = 1; k <= max_order; ++k) {
        out.push_back(traffic_moment(model, k, horizon_s, method, samples, rng).value);
    }
    return out;
}

} // namespace cellergy
