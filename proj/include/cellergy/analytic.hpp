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

#include "cellergy/mobility.hpp"
#include "cellergy/model.hpp"
#include "cellergy/moments.hpp"
#include "cellergy/quadrature.hpp"
#include "cellergy/traffic.hpp"

namespace cellergy {

/// How the activity moments m_k[A, T] feeding a closed-form report are
/// produced. Auto takes exact closed forms where they exist and falls back
/// to Monte Carlo above order 2.
struct ActivityMomentSpec {
    enum class Mode { Auto, Analytic, MonteCarlo, Asymptotic };
    Mode mode = Mode::Auto;
    long mc_samples = 200000;
    std::uint64_t seed = 0x6d6f6d656e74ULL;
};

std::vector<double> activity_moments(const TrafficModel& traffic, int max_order,
                                     double horizon_s, const ActivityMomentSpec& spec);

/// Cumulant coefficients of the additive energy for motionless users:
///   alpha_k = lambda * beta_A^k * m_k[A, T] * integral_C (l^(-1))^k dx.
std::vector<double> ja_cumulants_motionless(const CellConfig& cell,
                                            const TrafficModel& traffic, int max_order,
                                            const ActivityMomentSpec& spec = {});

/// Raw moments of the motionless additive energy, E[J_A^n] = B_n(alpha_1..n).
/// For the singular path-loss model the mean reduces to
/// 2 beta_A / (gamma + 2) * rho * R^gamma * T.
MomentReport ja_moments_motionless(const CellConfig& cell, const TrafficModel& traffic,
                                   int max_order, const ActivityMomentSpec& spec = {});

/// Law of the distance from the base station to the farthest user. Density
///   f(u) = 2 lambda pi u exp(-lambda pi (R^2 - u^2)) on [0, R],
/// which integrates to 1 - exp(-n); the missing mass exp(-n) is the atom at
/// "cell empty".
struct MaxDistanceLaw {
    double density_per_m2 = 0.0;
    double radius_m = 0.0;

    double mean_count() const;
    double empty_atom() const;
    double pdf(double u) const;
    /// P(distance <= u, cell non-empty).
    double cdf(double u) const;
    /// CDF conditioned on a non-empty cell.
    double cdf_given_nonempty(double u) const;
};

MaxDistanceLaw max_distance_law(const CellConfig& cell);

/// Broadcast energy without power control: beta_B * L^(-1)(R) * T, which is
/// beta_B R^gamma T for the singular (and clipped, R >= r0) models.
double jb_no_power_control(const CellConfig& cell);

/// k-th moment of the power-controlled broadcast energy,
///   (beta_B T)^k * integral_0^R (L^(-1)(u))^k f_delta(u) du,
/// by adaptive quadrature. An empty cell needs no beacon effort and
/// contributes zero, which is why the atom at exp(-n) does not appear.
double jb_power_control_moment(const CellConfig& cell, int order,
                               const QuadOptions& quad = {});

/// Mean power-control gain E[J_B] / J_B^0 for the singular model:
///   exp(-n) n^(-gamma/2) integral_0^n v^(gamma/2) e^v dv,
/// evaluated in the overflow-free form integral_0^n (1 - w/n)^(gamma/2) e^(-w) dw.
/// Lies in (0, 1], increases with the mean user count n.
double power_control_gain(double mean_count, double gamma, const QuadOptions& quad = {});

/// kappa = E[J_A] / J_B^0. For the singular model this is
/// 2 / (gamma + 2) * rho * beta_A / beta_B. With with_beta_factor = false the
/// uplink/downlink multiplicity carried by beta_A is dropped and the ratio
/// uses p_min_rx / p_min_beacon directly.
double kappa(const CellConfig& cell, const TrafficModel& traffic,
             bool with_beta_factor = true);

/// Numerical evaluation of the mobility kernel functional
///   F_n(f, T) = integral_{R^2} E[(integral_0^T f(x + M(t)) A(t)
///                1{x + M(t) in C} dt)^n] dx   with f = beta_A l^(-1).
///
/// The outer spatial integral is a radial Gauss-Legendre grid over the
/// enlarged window (the inner expectation is isotropic because directions
/// are uniform); the inner expectation is Monte Carlo over (speed,
/// direction, traffic) with one deterministic stream per grid node.
struct FunctionalOptions {
    int radial_nodes = 64;
    long samples_per_node = 512;
    long max_evaluations = 1u << 26; // budget; exceeded -> partial result
    std::uint64_t seed = 0x6d6f62696cULL;
    ActivityMomentSpec activity; // used by the exact motionless branch
};

struct FunctionalEstimate {
    double value = 0.0;
    double std_error = 0.0;  // Monte Carlo part of the uncertainty
    bool partial = false;    // budget forced fewer samples than requested
    long evaluations = 0;
};

FunctionalEstimate mobility_functional(const CellConfig& cell,
                                       const TrafficModel& traffic,
                                       const MobilityModel& mobility, int order,
                                       const FunctionalOptions& options = {});

/// Moments of the additive energy under mobility,
/// E[J_A^n] = B_n(lambda F_1, ..., lambda F_n).
MomentReport ja_moments_mobile(const CellConfig& cell, const TrafficModel& traffic,
                               const MobilityModel& mobility, int max_order,
                               const FunctionalOptions& options = {});

enum class MRatioMode { FiniteT, Asymptotic };

/// Standardized integral ratio of the additive energy kernel,
///   m(k, lambda) = (integral f^2 dnu)^(-k/2) * integral |f|^k dnu
/// with f(x, a) = beta_A l^(-1)(x) integral_0^T a(t) dt. Always computed
/// from this defining ratio; for the singular model it equals
///   (m_k / m_2^(k/2)) * (gamma+1)^(k/2) / (gamma k/2 + 1) * n^(1 - k/2).
/// Asymptotic mode substitutes m_k = (pi_on T)^k.
double m_ratio(const CellConfig& cell, const TrafficModel& traffic, int order,
               MRatioMode mode, const ActivityMomentSpec& spec = {});

/// Third-order Gaussian correction model for the standardized energy.
struct EdgeworthModel {
    double m3 = 0.0;          // m(3, lambda)
    double error_bound = 0.0; // E_lambda
    double mean = 0.0;        // mu_F, mW s
    double sigma = 0.0;       // sigma_F, mW s
};

struct TailValue {
    double value = 0.0;
    bool clamped = false; // true when the signed measure left [0, 1]
};

/// Upper tail of the corrected measure,
///   mu3([alpha, inf)) = Q(alpha) + m3/6 * (8 alpha^2 + 4) * phi(alpha),
/// using H_3(x) = 8x^3 - 12x. The correction is a signed measure, so the
/// result is clamped to [0, 1] and flagged rather than rejected.
TailValue edgeworth_tail(double m3, double alpha);

/// Distance bound of the third-order approximation,
///   E_lambda = (m(3,1)^2 / 6 + m(4,1)/9 * sqrt(2/pi)) / lambda.
double approximation_error_bound(double m3_at_unit_intensity,
                                 double m4_at_unit_intensity, double density_per_m2);

/// Solves mu3([alpha, inf)) = epsilon on the clamped tail by bisection in
/// [-10, 10] to 1e-9. Returns the root and whether clamping was active there.
struct TailRoot {
    double alpha = 0.0;
    bool clamped_at_root = false;
};
TailRoot solve_tail_threshold(double m3, double epsilon);

} // namespace cellergy
