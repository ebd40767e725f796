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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cellergy/model.hpp"
#include "cellergy/ppp.hpp"
#include "cellergy/stats.hpp"

namespace cellergy {
namespace mc {

/// Users are sampled on a disk of radius R + cap * T (+ extra) so that
/// terminals starting outside the cell but moving through it are captured.
/// The speed cap of the mobility model makes the margin exact: no user
/// outside the enlarged window can reach the cell within the horizon.
struct WindowMarginPolicy {
    bool speed_cap = true;
    double extra_m = 0.0;
};

struct SimulationOutputs {
    bool ja = true;
    bool jb_power_control = false;
    bool jb_fixed = true;
    bool jtotal = true; // J_A plus the fixed (no power control) broadcast part
};

struct SimulationPlan {
    long replications = 1000;
    std::uint64_t master_seed = 1;
    double time_step_s = 1.0; // mobility quadrature step
    WindowMarginPolicy margin;
    SimulationOutputs outputs;

    void validate() const {
        if (replications < 1) throw ConfigError("plan: replications must be >= 1");
        if (!(time_step_s > 0.0)) throw ConfigError("plan: time_step_s must be > 0");
        if (!(margin.extra_m >= 0.0)) throw ConfigError("plan: extra margin must be >= 0");
    }
};

struct StatSummary {
    std::string name;
    SampleMoments moments;
};

/// Moment estimates with confidence metadata for one simulation run.
/// Bit-identical for equal (plan, configs) regardless of worker count:
/// every replication owns a derived stream and the reduction is an
/// index-ordered pairwise sum.
struct EstimateReport {
    long replications = 0;
    std::uint64_t master_seed = 0;
    double time_step_s = 0.0;
    double elapsed_s = 0.0;
    std::vector<StatSummary> stats;
    std::vector<std::string> warnings;

    const StatSummary* find(const std::string& name) const;
};

nlohmann::json to_json(const EstimateReport& report, bool include_timing = true);
void write_csv(std::ostream& os, const EstimateReport& report);

/// Raw per-replication energies plus the summarized report.
struct SimulationResult {
    EstimateReport report;
    std::vector<double> ja;
    std::vector<double> jb_power_control;
    std::vector<double> jb_fixed;
    std::vector<double> jtotal;
};

/// Replication-parallel simulation of the configured energy functionals.
/// workers = 0 picks the hardware concurrency.
SimulationResult run_simulation(const CellConfig& cell, const TrafficModel& traffic,
                                const MobilityModel& mobility, const SimulationPlan& plan,
                                int workers = 0);

/// Additive energy only.
EstimateReport simulate_ja(const CellConfig& cell, const TrafficModel& traffic,
                           const MobilityModel& mobility, const SimulationPlan& plan,
                           int workers = 0);

enum class BeaconMode { PowerControl, Fixed };

/// Broadcast energy only. Fixed mode returns beta_B L^(-1)(R) T in every
/// replication; PowerControl tracks the farthest in-cell user (an empty
/// cell contributes zero while it stays empty).
EstimateReport simulate_jb(const CellConfig& cell, const MobilityModel& mobility,
                           const SimulationPlan& plan, BeaconMode mode, int workers = 0);

/// Additive energy of one explicit configuration; deterministic.
/// Motionless users use the exact factorization (activity integral times
/// attenuation); moving users are integrated by composite quadrature over
/// their ON intervals clipped to the exact cell-crossing window.
double ja_of_configuration(const CellConfig& cell, const MarkedConfiguration& cfg,
                           double time_step_s);

/// Broadcast energy of one explicit configuration; deterministic.
double jb_of_configuration(const CellConfig& cell, const MarkedConfiguration& cfg,
                           BeaconMode mode, double time_step_s);

struct VarianceRow {
    double epsilon = 1.0;
    double variance = 0.0;
    double ci95_halfwidth = 0.0;
    double mean = 0.0;
};

struct VarianceTable {
    std::vector<VarianceRow> rows;
    /// True when the variance trend is non-increasing up to CI overlap.
    bool non_increasing_within_ci = false;
};

/// Variance of J_A across accelerated versions M^epsilon of the base
/// mobility model. The base model must satisfy property T.
VarianceTable variance_vs_epsilon(const CellConfig& cell, const TrafficModel& traffic,
                                  const MobilityModel& base_mobility,
                                  const std::vector<double>& epsilons,
                                  const SimulationPlan& plan, int workers = 0);

struct TailEstimate {
    double probability = 0.0;
    Interval wilson_ci95;
    long exceed_count = 0;
    long replications = 0;
};

/// Empirical P(J_A + J_B > threshold) with a Wilson score interval. The
/// broadcast part is held at its fixed no-power-control level.
TailEstimate empirical_tail(const CellConfig& cell, const TrafficModel& traffic,
                            const SimulationPlan& plan, double threshold_mws,
                            int workers = 0);

} // namespace mc
} // namespace cellergy
