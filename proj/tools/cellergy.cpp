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

// Command-line front end: analytic moment reports, analytic-vs-Monte-Carlo
// validation, power-control gain curves, radius optimization and battery
// dimensioning. Every run is deterministic given (config, seed) and emits a
// manifest with a digest per output file.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cellergy/analytic.hpp"
#include "cellergy/config_io.hpp"
#include "cellergy/manifest.hpp"
#include "cellergy/montecarlo.hpp"
#include "cellergy/planner.hpp"
#include "cellergy/version.hpp"

namespace {

using nlohmann::json;
using namespace cellergy;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitCoverage = 2;
constexpr int kExitNumeric = 3;

struct Common {
    std::string config_path;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string format = "both"; // json | csv | both

    bool want_json() const { return format != "csv"; }
    bool want_csv() const { return format != "json"; }
};

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--config", common.config_path, "scenario JSON file")->required();
    cmd->add_option("--seed", common.seed, "master seed");
    cmd->add_option("--out-dir", common.out_dir, "output directory");
    cmd->add_option("--format", common.format, "json, csv or both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

/// Collects emitted files and writes the manifest last.
class RunEmitter {
public:
    RunEmitter(std::string command, const Common& common, const Scenario& scenario)
        : common_(common), started_(std::chrono::steady_clock::now()) {
        manifest_.command = std::move(command);
        manifest_.master_seed = common.seed;
        manifest_.tool_version = kVersion;
        manifest_.wall_clock_utc = utc_now();
        config_snapshot_ = to_json(scenario);
        std::filesystem::create_directories(common_.out_dir);
    }

    void emit(const std::string& name, const std::string& bytes) {
        const auto path = std::filesystem::path(common_.out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + path.string());
        out << bytes;
        out.close();
        manifest_.output_digests.emplace_back(name, fnv1a64_hex(bytes));
        std::cout << "wrote " << path.string() << "\n";
    }

    void finish() {
        manifest_.elapsed_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started_)
                .count();
        const json j = manifest_json(manifest_, config_snapshot_);
        const auto path = std::filesystem::path(common_.out_dir) / "manifest.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + path.string());
        out << j.dump(2) << "\n";
        std::cout << "wrote " << path.string() << "\n";
    }

private:
    Common common_;
    RunManifest manifest_;
    json config_snapshot_;
    std::chrono::steady_clock::time_point started_;
};

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

std::string format_row(const char* fmt, ...) {
    char line[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(line, sizeof(line), fmt, args);
    va_end(args);
    return line;
}

// ---------------------------------------------------------------------------
// moments

struct MomentsArgs {
    Common common;
    int orders = 4;
    std::string traffic_moments = "auto"; // auto|analytic|mc|asymptotic
    long mc_samples = 200000;
    std::string kappa_convention = "beta"; // beta | sensitivity_ratio
};

ActivityMomentSpec activity_spec(const std::string& mode, long samples,
                                 std::uint64_t seed) {
    ActivityMomentSpec spec;
    spec.mc_samples = samples;
    spec.seed = seed;
    if (mode == "auto") {
        spec.mode = ActivityMomentSpec::Mode::Auto;
    } else if (mode == "analytic") {
        spec.mode = ActivityMomentSpec::Mode::Analytic;
    } else if (mode == "mc") {
        spec.mode = ActivityMomentSpec::Mode::MonteCarlo;
    } else if (mode == "asymptotic") {
        spec.mode = ActivityMomentSpec::Mode::Asymptotic;
    } else {
        throw ConfigError("unknown traffic moment mode: " + mode);
    }
    return spec;
}

int run_moments(const MomentsArgs& args) {
    const Scenario scenario = load_scenario(args.common.config_path);
    RunEmitter emitter("moments", args.common, scenario);

    const auto spec =
        activity_spec(args.traffic_moments, args.mc_samples, args.common.seed);
    const MomentReport ja =
        ja_moments_motionless(scenario.cell, scenario.traffic, args.orders, spec);

    std::vector<double> jb_pc(static_cast<std::size_t>(args.orders));
    for (int k = 1; k <= args.orders; ++k) {
        jb_pc[k - 1] = jb_power_control_moment(scenario.cell, k);
    }
    const double kap = kappa(scenario.cell, scenario.traffic,
                             args.kappa_convention == "beta");
    const double jb0 = jb_no_power_control(scenario.cell);

    if (args.common.want_json()) {
        json j;
        j["ja"] = to_json(ja);
        j["jb_power_control"] = {{"orders", ja.orders}, {"values", jb_pc}};
        j["kappa"] = kap;
        j["kappa_convention"] = args.kappa_convention;
        j["jb0_mws"] = jb0;
        emitter.emit("moments.json", dump_json(j));
    }
    if (args.common.want_csv()) {
        std::string csv = "quantity,order,value,std_error\n";
        for (std::size_t i = 0; i < ja.values.size(); ++i) {
            csv += format_row("JA,%d,%.17g,%.17g\n", ja.orders[i], ja.values[i],
                              ja.std_errors.empty() ? 0.0 : ja.std_errors[i]);
        }
        for (std::size_t i = 0; i < jb_pc.size(); ++i) {
            csv += format_row("JB_power_control,%zu,%.17g,0\n", i + 1, jb_pc[i]);
        }
        csv += format_row("kappa,1,%.17g,0\n", kap);
        csv += format_row("JB0,1,%.17g,0\n", jb0);
        emitter.emit("moments.csv", csv);
    }
    emitter.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
    Common common;
    long replications = 2000;
    int workers = 0;
    double time_step_s = 4.0;
    bool dump_replications = false;
};

int run_validate(const ValidateArgs& args) {
    const Scenario scenario = load_scenario(args.common.config_path);
    RunEmitter emitter("validate", args.common, scenario);

    mc::SimulationPlan plan;
    plan.replications = args.replications;
    plan.master_seed = args.common.seed;
    plan.time_step_s = args.time_step_s;
    plan.outputs = {true, false, true, true};

    const auto sim = mc::run_simulation(scenario.cell, scenario.traffic,
                                        scenario.mobility, plan, args.workers);
    const auto alpha = ja_cumulants_motionless(scenario.cell, scenario.traffic, 2);
    const double jb0 = jb_no_power_control(scenario.cell);
    const auto* ja = sim.report.find("JA");
    const auto* jb = sim.report.find("JB_fixed");

    const bool motionless = scenario.mobility.kind == MobilityKind::Motionless;
    struct Row {
        std::string stat;
        double analytic;
        double simulated;
        double std_error;
        double z;
        bool pass;
    };
    std::vector<Row> rows;

    {
        // Mean is mobility-invariant (displacement of the point process).
        const double se = ja->moments.std_error_mean();
        const double z = se > 0.0 ? (ja->moments.mean - alpha[0]) / se : 0.0;
        rows.push_back({"JA_mean", alpha[0], ja->moments.mean, se, z, std::abs(z) <= 3.0});
    }
    {
        const double se = ja->moments.std_error_variance();
        const double var = ja->moments.variance();
        if (motionless) {
            const double z = se > 0.0 ? (var - alpha[1]) / se : 0.0;
            rows.push_back({"JA_variance", alpha[1], var, se, z, std::abs(z) <= 3.0});
        } else {
            // Moving users must not increase the variance.
            const double z = se > 0.0 ? (var - alpha[1]) / se : 0.0;
            rows.push_back({"JA_variance_reduction", alpha[1], var, se, z,
                            var - 3.0 * se <= alpha[1]});
        }
    }
    {
        const double diff = jb->moments.mean - jb0;
        rows.push_back({"JB_fixed_mean", jb0, jb->moments.mean, 0.0, 0.0, diff == 0.0});
    }

    bool all_pass = true;
    std::string csv = "statistic,analytic,simulated,std_error,z,verdict\n";
    for (const auto& row : rows) {
        all_pass = all_pass && row.pass;
        csv += format_row("%s,%.17g,%.17g,%.17g,%.17g,%s\n", row.stat.c_str(),
                          row.analytic, row.simulated, row.std_error, row.z,
                          row.pass ? "pass" : "FAIL");
    }
    emitter.emit("validate.csv", csv);
    if (args.common.want_json()) {
        emitter.emit("estimates.json",
                     dump_json(mc::to_json(sim.report, /*include_timing=*/false)));
    }
    if (args.dump_replications) {
        std::string dump = "replication,JA,JB,JTotal\n";
        for (long i = 0; i < plan.replications; ++i) {
            dump += format_row("%ld,%.17g,%.17g,%.17g\n", i,
                               sim.ja[static_cast<std::size_t>(i)], jb0,
                               sim.jtotal[static_cast<std::size_t>(i)]);
        }
        emitter.emit("replications.csv", dump);
    }
    emitter.finish();

    for (const auto& w : sim.report.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << (all_pass ? "validation passed" : "validation FAILED") << "\n";
    return all_pass ? kExitOk : kExitCoverage;
}

// ---------------------------------------------------------------------------
// power-gain

struct PowerGainArgs {
    Common common;
    std::string n_grid = "0.5,1,2,5,10,20,50";
};

int run_power_gain(const PowerGainArgs& args) {
    const Scenario scenario = load_scenario(args.common.config_path);
    if (scenario.cell.pathloss.kind != PathLossKind::Singular) {
        throw ConfigError("power-gain: singular path loss required");
    }
    RunEmitter emitter("power-gain", args.common, scenario);

    std::vector<double> grid;
    std::stringstream ss(args.n_grid);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    if (grid.empty()) throw ConfigError("power-gain: empty --n-grid");

    std::string csv = "mean_count,gain\n";
    json rows = json::array();
    for (double n : grid) {
        const double gain = power_control_gain(n, scenario.cell.pathloss.gamma);
        csv += format_row("%.17g,%.17g\n", n, gain);
        rows.push_back({{"mean_count", n}, {"gain", gain}});
    }
    if (args.common.want_csv()) emitter.emit("power_gain.csv", csv);
    if (args.common.want_json()) {
        emitter.emit("power_gain.json",
                     dump_json(json{{"gamma", scenario.cell.pathloss.gamma},
                                    {"rows", rows}}));
    }
    emitter.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// optimize-radius

struct OptimizeArgs {
    Common common;
    double area_m2 = 1e8;
    double c1 = 1.0;
    double cost_horizon_s = 0.0;
    bool kappa_recompute = false;
    double kappa_value = -1.0; // <0: derive from the scenario
    int curve_points = 200;
};

int run_optimize(const OptimizeArgs& args) {
    const Scenario scenario = load_scenario(args.common.config_path);
    RunEmitter emitter("optimize-radius", args.common, scenario);

    CostModel cost;
    cost.area_m2 = args.area_m2;
    cost.c1 = args.c1;
    cost.horizon_s = args.cost_horizon_s;
    if (args.kappa_recompute) {
        cost.kappa_policy = KappaPolicy::recompute();
    } else {
        const double k = args.kappa_value >= 0.0
                             ? args.kappa_value
                             : kappa(scenario.cell, scenario.traffic);
        cost.kappa_policy = KappaPolicy::constant(k);
    }

    const RadiusResult result = optimal_radius(cost, scenario.cell, scenario.traffic);

    json j;
    j["r_opt_m"] = result.r_opt_closed_form ? json(*result.r_opt_closed_form)
                                            : json(nullptr);
    j["r_hat_m"] = result.r_hat_numeric;
    j["cost_at_opt"] = result.cost_at_opt;
    j["kappa"] = result.kappa_used;
    j["warnings"] = json::array();
    if (!result.r_opt_closed_form) {
        j["warnings"].push_back("closed form unavailable (recompute policy or gamma <= 2)");
    }
    if (args.common.want_json()) emitter.emit("planner.json", dump_json(j));

    if (args.common.want_csv()) {
        std::string csv = "radius_m,cost\n";
        const double r0 = result.r_hat_numeric / 10.0;
        const double r1 = result.r_hat_numeric * 10.0;
        for (int i = 0; i < args.curve_points; ++i) {
            const double t = static_cast<double>(i) / (args.curve_points - 1);
            const double r = r0 * std::pow(r1 / r0, t);
            csv += format_row("%.17g,%.17g\n", r,
                              network_cost(cost, scenario.cell, scenario.traffic, r));
        }
        emitter.emit("cost_curve.csv", csv);
    }
    emitter.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// dimension-battery

struct BatteryArgs {
    Common common;
    double epsilon = 0.05;
    std::string mode = "asymptotic"; // asymptotic | exact
    double curve_gamma_lo = 2.2;
    double curve_gamma_hi = 5.0;
    int curve_points = 15;
};

int run_battery(const BatteryArgs& args) {
    const Scenario scenario = load_scenario(args.common.config_path);
    RunEmitter emitter("dimension-battery", args.common, scenario);

    const BatteryMode mode =
        args.mode == "exact" ? BatteryMode::ExactMoments : BatteryMode::Asymptotic;
    ActivityMomentSpec spec;
    spec.seed = args.common.seed;
    const BatterySpec battery =
        dimension_battery(scenario.cell, scenario.traffic, args.epsilon, mode, spec);

    json j;
    j["epsilon"] = battery.epsilon;
    j["zeta_mws"] = battery.zeta_total_mws;
    j["zeta_additive_mws"] = battery.zeta_additive_mws;
    j["jb0_mws"] = battery.jb0_mws;
    j["alpha_star"] = battery.alpha_star;
    j["m3"] = battery.m3;
    j["e_lambda"] = battery.e_lambda;
    j["mode"] = args.mode;
    j["reliable"] = battery.reliable;
    j["warnings"] = battery.warnings;
    if (args.common.want_json()) emitter.emit("battery.json", dump_json(j));

    if (args.common.want_csv()) {
        // zeta/T against the path-loss exponent, on a fixed grid.
        std::string csv = "gamma,zeta_over_T,log10_zeta_over_T\n";
        for (int i = 0; i < args.curve_points; ++i) {
            const double t = static_cast<double>(i) / (args.curve_points - 1);
            const double g =
                args.curve_gamma_lo + t * (args.curve_gamma_hi - args.curve_gamma_lo);
            Scenario s = scenario;
            s.cell.pathloss.gamma = g;
            const BatterySpec b =
                dimension_battery(s.cell, s.traffic, args.epsilon, mode, spec);
            const double z_over_t = b.zeta_total_mws / s.cell.horizon_s;
            csv += format_row("%.17g,%.17g,%.17g\n", g, z_over_t, std::log10(z_over_t));
        }
        emitter.emit("zeta_curve.csv", csv);
    }
    emitter.finish();

    for (const auto& w : battery.warnings) std::cerr << "warning: " << w << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
    Common common;
    long replication = 0;
};

int run_sample(const SampleArgs& args) {
    const Scenario scenario = load_scenario(args.common.config_path);
    RunEmitter emitter("sample", args.common, scenario);

    const double margin =
        scenario.mobility.effective_speed_cap_mps() * scenario.cell.horizon_s;
    const Window window = Window::disk(scenario.cell.radius_m + margin);
    const SeedLineage lineage{args.common.seed, static_cast<std::uint64_t>(args.replication), 0};
    MarkedConfiguration cfg =
        sample_ppp(scenario.cell.density_per_m2, window, lineage);
    attach_marks(cfg, scenario.traffic, scenario.mobility, scenario.cell.horizon_s);

    std::ostringstream os;
    write_configuration_csv(os, cfg);
    emitter.emit("configuration.csv", os.str());
    emitter.finish();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"energy model of one cellular base station under a marked "
                 "Poisson process of users"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    MomentsArgs moments_args;
    auto* cmd_moments = app.add_subcommand("moments", "closed-form moment reports");
    add_common(cmd_moments, moments_args.common);
    cmd_moments->add_option("--orders", moments_args.orders, "highest moment order")
        ->check(CLI::Range(1, 12));
    cmd_moments->add_option("--traffic-moments", moments_args.traffic_moments,
                            "auto, analytic, mc or asymptotic");
    cmd_moments->add_option("--mc-traffic-samples", moments_args.mc_samples,
                            "trajectories for Monte Carlo activity moments");
    cmd_moments->add_option("--kappa-convention", moments_args.kappa_convention,
                            "beta (uplink+downlink folded in) or sensitivity_ratio")
        ->check(CLI::IsMember({"beta", "sensitivity_ratio"}));

    ValidateArgs validate_args;
    auto* cmd_validate =
        app.add_subcommand("validate", "analytic vs Monte Carlo comparison");
    add_common(cmd_validate, validate_args.common);
    cmd_validate->add_option("--replications", validate_args.replications)
        ->check(CLI::PositiveNumber);
    cmd_validate->add_option("--workers", validate_args.workers,
                             "0 = hardware concurrency");
    cmd_validate->add_option("--time-step", validate_args.time_step_s,
                             "mobility quadrature step, seconds");
    cmd_validate->add_flag("--dump-replications", validate_args.dump_replications,
                           "also write one CSV row per replication");

    PowerGainArgs gain_args;
    auto* cmd_gain =
        app.add_subcommand("power-gain", "beacon energy gain of power control");
    add_common(cmd_gain, gain_args.common);
    cmd_gain->add_option("--n-grid", gain_args.n_grid,
                         "comma-separated mean user counts");

    OptimizeArgs optimize_args;
    auto* cmd_optimize =
        app.add_subcommand("optimize-radius", "cost-optimal cell radius");
    add_common(cmd_optimize, optimize_args.common);
    cmd_optimize->add_option("--area-m2", optimize_args.area_m2, "region area S");
    cmd_optimize->add_option("--c1", optimize_args.c1, "per-station deployment cost");
    cmd_optimize->add_option("--cost-horizon-s", optimize_args.cost_horizon_s,
                             "network lifetime; 0 = scenario horizon");
    cmd_optimize->add_flag("--kappa-recompute", optimize_args.kappa_recompute,
                           "re-derive kappa at every candidate radius");
    cmd_optimize->add_option("--kappa-value", optimize_args.kappa_value,
                             "hold kappa constant at this value");
    cmd_optimize->add_option("--curve-points", optimize_args.curve_points)
        ->check(CLI::Range(2, 100000));

    BatteryArgs battery_args;
    auto* cmd_battery =
        app.add_subcommand("dimension-battery", "battery level for an outage target");
    add_common(cmd_battery, battery_args.common);
    cmd_battery->add_option("--epsilon", battery_args.epsilon, "outage probability")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    cmd_battery->add_option("--mode", battery_args.mode, "asymptotic or exact")
        ->check(CLI::IsMember({"asymptotic", "exact"}));
    cmd_battery->add_option("--curve-gamma-lo", battery_args.curve_gamma_lo);
    cmd_battery->add_option("--curve-gamma-hi", battery_args.curve_gamma_hi);
    cmd_battery->add_option("--curve-points", battery_args.curve_points)
        ->check(CLI::Range(2, 10000));

    SampleArgs sample_args;
    auto* cmd_sample =
        app.add_subcommand("sample", "dump one marked configuration as CSV");
    add_common(cmd_sample, sample_args.common);
    cmd_sample->add_option("--replication", sample_args.replication,
                           "replication index within the seed lineage");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (cmd_moments->parsed()) return run_moments(moments_args);
        if (cmd_validate->parsed()) return run_validate(validate_args);
        if (cmd_gain->parsed()) return run_power_gain(gain_args);
        if (cmd_optimize->parsed()) return run_optimize(optimize_args);
        if (cmd_battery->parsed()) return run_battery(battery_args);
        if (cmd_sample->parsed()) return run_sample(sample_args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}
