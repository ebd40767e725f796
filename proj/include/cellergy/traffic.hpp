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

#include <vector>

#include "cellergy/rng.hpp"
#include "cellergy/types.hpp"

namespace cellergy {

enum class TrafficKind { ExponentialOnOff, AlwaysOn };

/// Stationary two-state ON/OFF traffic source.
///
/// ON holding times are exponential(mu_on), OFF holding times are
/// exponential(mu_off), and the initial state is drawn from the stationary
/// law pi_on = mu_off / (mu_on + mu_off). Exponential holding times make
/// the residual time at t = 0 exponential again, so sampling fresh holding
/// times from the start is already stationary.
struct TrafficModel {
    TrafficKind kind = TrafficKind::ExponentialOnOff;
    double mu_on_per_s = 0.01;   // rate that ends ON periods
    double mu_off_per_s = 0.01;  // rate that ends OFF periods

    void validate() const {
        if (kind == TrafficKind::AlwaysOn) return;
        if (!(mu_on_per_s > 0.0) || !(mu_off_per_s > 0.0)) {
            throw ConfigError("traffic: mu_on_per_s and mu_off_per_s must be > 0");
        }
    }

    double pi_on() const {
        if (kind == TrafficKind::AlwaysOn) return 1.0;
        return mu_off_per_s / (mu_on_per_s + mu_off_per_s);
    }
    double pi_off() const { return 1.0 - pi_on(); }
    /// theta = mu_on + mu_off, the relaxation rate of the two-state chain.
    double rate_sum() const {
        return kind == TrafficKind::AlwaysOn ? 0.0 : mu_on_per_s + mu_off_per_s;
    }
};

/// Piecewise-constant two-valued trajectory on [0, T]: the initial state
/// plus the strictly increasing times at which the state flips.
struct TrafficTrajectory {
    bool initial_on = true;
    std::vector<double> switch_times;

    bool on_at(double t) const {
        bool on = initial_on;
        for (double s : switch_times) {
            if (s > t) break;
            on = !on;
        }
        return on;
    }
};

TrafficTrajectory sample_trajectory(const TrafficModel& model, double horizon_s,
                                    RngStream& rng);

/// Exact integral of A(t) over [0, T]: the total ON time. No quadrature.
double integrate_activity(const TrafficTrajectory& traj, double horizon_s);

/// Samples a trajectory and returns its exact ON time without materializing
/// the switch list. Draw-for-draw identical to sample_trajectory followed by
/// integrate_activity.
double sample_activity_integral(const TrafficModel& model, double horizon_s,
                                RngStream& rng);

/// Visits every maximal ON interval [a, b) of the trajectory, clipped to
/// [0, T], in increasing order. fn(a, b) is called once per interval.
template <class F>
void for_each_on_interval(const TrafficTrajectory& traj, double horizon_s, F&& fn) {
    bool on = traj.initial_on;
    double prev = 0.0;
    for (double s : traj.switch_times) {
        if (s >= horizon_s) break;
        if (on && s > prev) fn(prev, s);
        on = !on;
        prev = s;
    }
    if (on && horizon_s > prev) fn(prev, horizon_s);
}

enum class TrafficMomentMethod { Analytic, MonteCarlo, Asymptotic };

struct TrafficMoment {
    double value = 0.0;
    double std_error = 0.0;
    TrafficMomentMethod method = TrafficMomentMethod::Analytic;
};

/// k-th moment m_k[A, T] of the integrated activity, E[(integral A)^k].
///
/// Analytic: exact closed forms. m_1 = pi_on T always;
///   m_2 = (pi_on T)^2 + 2 pi_on pi_off (T/theta - (1 - e^(-theta T))/theta^2)
/// from the stationary covariance pi_on pi_off e^(-theta |t-s|). Orders
/// k >= 3 are only closed-form for AlwaysOn (T^k); otherwise an
/// unsupported-order error is raised.
/// MonteCarlo: sample moment over `samples` trajectories, with standard error.
/// Asymptotic: the large-T substitution (pi_on T)^k.
TrafficMoment traffic_moment(const TrafficModel& model, int order, double horizon_s,
                             TrafficMomentMethod method, long samples = 100000,
                             RngStream* rng = nullptr);

/// Convenience: m_1..m_n with one method. Auto-selects analytic forms where
/// they exist when `method` is MonteCarlo only for the orders that need it.
std::vector<double> traffic_moments_upto(const TrafficModel& model, int max_order,
                                         double horizon_s, TrafficMomentMethod method,
                                         long samples = 100000, RngStream* rng = nullptr);

} // namespace cellergy
