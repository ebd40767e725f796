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

#include "cellergy/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "cellergy/analytic.hpp"
#include "cellergy/path_kernel.hpp"

namespace cellergy {
namespace mc {

namespace {

void parallel_for(long n, int workers, const std::function<void(long)>& body) {
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers <= 0) workers = 1;
    }
    workers = static_cast<int>(std::min<long>(workers, n));
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const long chunk = std::max(1L, std::min(64L, n / (workers * 8)));

    auto worker = [&]() {
        try {
            for (;;) {
                const long start = next.fetch_add(chunk);
                if (start >= n) break;
                const long stop = std::min(n, start + chunk);
                for (long i = start; i < stop; ++i) body(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct CrossingUser {
    Vec2 pos;
    Vec2 vel;
    double t_lo;
    double t_hi;
};

struct RepScratch {
    std::vector<CrossingUser> crossing;
};

struct RepValues {
    double ja = 0.0;
    double jb_power = 0.0;
    double ja_refined = 0.0;
    bool refined = false;
};

double jb_power_time_integral(const CellConfig& cell,
                              const std::vector<CrossingUser>& users, double beta_b,
                              double time_step_s) {
    const double T = cell.horizon_s;
    const long steps = std::max(1L, static_cast<long>(std::ceil(T / time_step_s)));
    const double h = T / static_cast<double>(steps);
    double acc = 0.0;
    for (long j = 0; j < steps; ++j) {
        const double t = (static_cast<double>(j) + 0.5) * h;
        double max_inv = 0.0;
        for (const auto& u : users) {
            if (t < u.t_lo || t > u.t_hi) continue;
            const double r = (u.pos + u.vel * t).norm();
            if (r > cell.radius_m) continue;
            max_inv = std::max(max_inv, pathloss_inv_radial(cell.pathloss, r));
        }
        acc += max_inv * h;
    }
    return beta_b * acc;
}

double mobile_user_ja(const CellConfig& cell, const Vec2& pos, const Vec2& vel,
                      const TrafficTrajectory& traj, double t_lo, double t_hi,
                      double time_step_s) {
    double acc = 0.0;
    for_each_on_interval(traj, cell.horizon_s, [&](double a, double b) {
        const double lo = std::max(a, t_lo);
        const double hi = std::min(b, t_hi);
        if (hi > lo) {
            acc += attenuation_line_integral(cell.pathloss, pos, vel, lo, hi,
                                             time_step_s);
        }
    });
    return acc;
}

/// One replication, streaming over users. Marks are drawn from per-user
/// streams keyed by (master_seed, replication, user index), in the same
/// order as attach_marks draws them (motion first, traffic second), so a
/// streamed replication and an explicitly materialized configuration with
/// equal lineage produce identical energies.
RepValues simulate_replication(const CellConfig& cell, const TrafficModel& traffic,
                               const MobilityModel& mobility,
                               const SimulationPlan& plan, const Window& window,
                               long rep, bool refine_pass, RepScratch& scratch) {
    RepValues out;
    const Betas betas = cell.betas();
    const double T = cell.horizon_s;
    const bool want_ja = plan.outputs.ja || plan.outputs.jtotal;
    const bool want_jb_pc = plan.outputs.jb_power_control;
    const bool mobile = mobility.kind == MobilityKind::ConstantVelocity;

    const SeedLineage lineage{plan.master_seed, static_cast<std::uint64_t>(rep), 0};
    RngStream pos_rng = replication_stream(lineage);
    const long count = poisson_draw(pos_rng, cell.density_per_m2 * window.area());

    double max_inv_static = 0.0;
    scratch.crossing.clear();

    for (long i = 0; i < count; ++i) {
        const Vec2 pos = sample_point_in_window(window, pos_rng);

        if (!mobile) {
            const double r = pos.norm();
            if (r > cell.radius_m) continue;
            const double inv = pathloss_inv_radial(cell.pathloss, r);
            if (want_jb_pc) max_inv_static = std::max(max_inv_static, inv);
            if (want_ja) {
                RngStream mark =
                    user_mark_stream(lineage, static_cast<std::uint64_t>(i));
                // Motionless motion consumes no draws; activity total is exact.
                out.ja += betas.additive * inv *
                          sample_activity_integral(traffic, T, mark);
            }
            continue;
        }

        if (!want_ja && !want_jb_pc) continue;
        RngStream mark = user_mark_stream(lineage, static_cast<std::uint64_t>(i));
        const MotionPath motion = sample_motion(mobility, mark);
        const auto crossing = disk_crossing(pos, motion.velocity_eff, cell.radius_m);
        const double lo = std::max(0.0, crossing.t_enter);
        const double hi = std::min(T, crossing.t_exit);
        if (!crossing.hits || !(hi > lo)) continue;

        if (want_jb_pc) scratch.crossing.push_back({pos, motion.velocity_eff, lo, hi});
        if (want_ja) {
            const TrafficTrajectory traj = sample_trajectory(traffic, T, mark);
            const double contribution = betas.additive *
                                        mobile_user_ja(cell, pos, motion.velocity_eff,
                                                       traj, lo, hi, plan.time_step_s);
            out.ja += contribution;
            if (refine_pass) {
                out.ja_refined += betas.additive *
                                  mobile_user_ja(cell, pos, motion.velocity_eff, traj,
                                                 lo, hi, 0.5 * plan.time_step_s);
            }
        }
    }
    out.refined = refine_pass && want_ja && mobile;

    if (want_jb_pc) {
        if (!mobile) {
            out.jb_power = betas.broadcast * T * max_inv_static;
        } else {
            out.jb_power = jb_power_time_integral(cell, scratch.crossing,
                                                  betas.broadcast, plan.time_step_s);
        }
    }
    return out;
}

StatSummary summarize(const std::string& name, std::span<const double> values) {
    return {name, SampleMoments::from(values)};
}

} // namespace

const StatSummary* EstimateReport::find(const std::string& name) const {
    for (const auto& s : stats) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

SimulationResult run_simulation(const CellConfig& cell, const TrafficModel& traffic,
                                const MobilityModel& mobility,
                                const SimulationPlan& plan, int workers) {
    cell.validate();
    traffic.validate();
    mobility.validate();
    plan.validate();

    const auto t_start = std::chrono::steady_clock::now();
    const double margin =
        (plan.margin.speed_cap ? mobility.effective_speed_cap_mps() * cell.horizon_s
                               : 0.0) +
        plan.margin.extra_m;
    const Window window = Window::disk(cell.radius_m + margin);
    const long reps = plan.replications;
    const bool mobile = mobility.kind == MobilityKind::ConstantVelocity;
    const bool want_ja = plan.outputs.ja || plan.outputs.jtotal;

    SimulationResult result;
    if (want_ja) result.ja.assign(static_cast<std::size_t>(reps), 0.0);
    if (plan.outputs.jb_power_control) {
        result.jb_power_control.assign(static_cast<std::size_t>(reps), 0.0);
    }

    // One refinement slot per 100 replications estimates the quadrature
    // error of the mobility time integration by step halving.
    const long refine_slots = mobile && want_ja ? (reps + 99) / 100 : 0;
    std::vector<double> refine_delta(static_cast<std::size_t>(refine_slots), 0.0);
    std::vector<double> refine_base(static_cast<std::size_t>(refine_slots), 0.0);

    {
        parallel_for(reps, workers, [&](long rep) {
            // Per-thread scratch, recycled across the replications a worker
            // runs; declared here so each worker owns its instance.
            static thread_local RepScratch scratch;
            const bool refine = refine_slots > 0 && rep % 100 == 0;
            const RepValues values = simulate_replication(cell, traffic, mobility, plan,
                                                          window, rep, refine, scratch);
            if (want_ja) result.ja[static_cast<std::size_t>(rep)] = values.ja;
            if (plan.outputs.jb_power_control) {
                result.jb_power_control[static_cast<std::size_t>(rep)] = values.jb_power;
            }
            if (values.refined) {
                refine_delta[static_cast<std::size_t>(rep / 100)] =
                    std::abs(values.ja_refined - values.ja);
                refine_base[static_cast<std::size_t>(rep / 100)] = values.ja_refined;
            }
        });
    }

    const double jb0 = jb_no_power_control(cell);
    if (plan.outputs.jb_fixed || plan.outputs.jtotal) {
        result.jb_fixed.assign(static_cast<std::size_t>(reps), jb0);
    }
    if (plan.outputs.jtotal) {
        result.jtotal.resize(static_cast<std::size_t>(reps));
        for (long i = 0; i < reps; ++i) {
            result.jtotal[static_cast<std::size_t>(i)] =
                result.ja[static_cast<std::size_t>(i)] + jb0;
        }
    }

    EstimateReport& report = result.report;
    report.replications = reps;
    report.master_seed = plan.master_seed;
    report.time_step_s = plan.time_step_s;
    if (plan.outputs.ja) report.stats.push_back(summarize("JA", result.ja));
    if (plan.outputs.jb_power_control) {
        report.stats.push_back(summarize("JB_power_control", result.jb_power_control));
    }
    if (plan.outputs.jb_fixed) {
        report.stats.push_back(summarize("JB_fixed", result.jb_fixed));
    }
    if (plan.outputs.jtotal) report.stats.push_back(summarize("JTotal", result.jtotal));

    if (refine_slots > 0) {
        const double delta = static_cast<double>(pairwise_sum(refine_delta));
        const double base = static_cast<double>(pairwise_sum(refine_base));
        if (base > 0.0 && delta / base > 0.01) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "time_step too coarse: step-halving changed J_A by %.2f%% "
                          "on the checked subsample",
                          100.0 * delta / base);
            report.warnings.emplace_back(buf);
        }
    }

    report.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return result;
}

EstimateReport simulate_ja(const CellConfig& cell, const TrafficModel& traffic,
                           const MobilityModel& mobility, const SimulationPlan& plan,
                           int workers) {
    SimulationPlan p = plan;
    p.outputs = {true, false, false, false};
    return run_simulation(cell, traffic, mobility, p, workers).report;
}

EstimateReport simulate_jb(const CellConfig& cell, const MobilityModel& mobility,
                           const SimulationPlan& plan, BeaconMode mode, int workers) {
    SimulationPlan p = plan;
    if (mode == BeaconMode::Fixed) {
        p.outputs = {false, false, true, false};
    } else {
        p.outputs = {false, true, false, false};
    }
    // The broadcast part never looks at traffic marks.
    const TrafficModel always_on{TrafficKind::AlwaysOn, 0.0, 0.0};
    return run_simulation(cell, always_on, mobility, p, workers).report;
}

double ja_of_configuration(const CellConfig& cell, const MarkedConfiguration& cfg,
                           double time_step_s) {
    cell.validate();
    const Betas betas = cell.betas();
    const double T = cfg.horizon_s;
    double ja = 0.0;
    for (const auto& user : cfg.users) {
        if (!user.motion.moving()) {
            const double r = user.position0.norm();
            if (r > cell.radius_m) continue;
            ja += betas.additive * pathloss_inv_radial(cell.pathloss, r) *
                  integrate_activity(user.traffic, T);
            continue;
        }
        const auto crossing =
            disk_crossing(user.position0, user.motion.velocity_eff, cell.radius_m);
        const double lo = std::max(0.0, crossing.t_enter);
        const double hi = std::min(T, crossing.t_exit);
        if (!crossing.hits || !(hi > lo)) continue;
        ja += betas.additive * mobile_user_ja(cell, user.position0,
                                              user.motion.velocity_eff, user.traffic,
                                              lo, hi, time_step_s);
    }
    return ja;
}

double jb_of_configuration(const CellConfig& cell, const MarkedConfiguration& cfg,
                           BeaconMode mode, double time_step_s) {
    cell.validate();
    if (mode == BeaconMode::Fixed) return jb_no_power_control(cell);

    const Betas betas = cell.betas();
    bool any_moving = false;
    for (const auto& user : cfg.users) {
        if (user.motion.moving()) {
            any_moving = true;
            break;
        }
    }
    if (!any_moving) {
        double max_inv = 0.0;
        for (const auto& user : cfg.users) {
            const double r = user.position0.norm();
            if (r <= cell.radius_m) {
                max_inv = std::max(max_inv, pathloss_inv_radial(cell.pathloss, r));
            }
        }
        return betas.broadcast * cfg.horizon_s * max_inv;
    }

    std::vector<CrossingUser> crossing;
    for (const auto& user : cfg.users) {
        const auto c =
            disk_crossing(user.position0, user.motion.velocity_eff, cell.radius_m);
        const double lo = std::max(0.0, c.t_enter);
        const double hi = std::min(cfg.horizon_s, c.t_exit);
        if (c.hits && hi > lo) {
            crossing.push_back({user.position0, user.motion.velocity_eff, lo, hi});
        }
    }
    return jb_power_time_integral(cell, crossing, betas.broadcast, time_step_s);
}

VarianceTable variance_vs_epsilon(const CellConfig& cell, const TrafficModel& traffic,
                                  const MobilityModel& base_mobility,
                                  const std::vector<double>& epsilons,
                                  const SimulationPlan& plan, int workers) {
    if (!base_mobility.property_t()) {
        throw std::invalid_argument(
            "variance_vs_epsilon: base mobility must satisfy property T "
            "(motionless models never do)");
    }
    VarianceTable table;
    for (double eps : epsilons) {
        // Same master seed across epsilons: common random numbers sharpen
        // the trend comparison.
        const EstimateReport report =
            simulate_ja(cell, traffic, base_mobility.accelerated(eps), plan, workers);
        const auto& m = report.stats.front().moments;
        table.rows.push_back(
            {eps, m.variance(), m.ci95_variance_halfwidth(), m.mean});
    }
    table.non_increasing_within_ci = true;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const auto& prev = table.rows[i - 1];
        const auto& cur = table.rows[i];
        if (cur.variance - cur.ci95_halfwidth >
            prev.variance + prev.ci95_halfwidth) {
            table.non_increasing_within_ci = false;
        }
    }
    return table;
}

TailEstimate empirical_tail(const CellConfig& cell, const TrafficModel& traffic,
                            const SimulationPlan& plan, double threshold_mws,
                            int workers) {
    SimulationPlan p = plan;
    p.outputs = {true, false, true, true};
    const MobilityModel motionless; // the dimensioning argument is motionless
    const SimulationResult sim = run_simulation(cell, traffic, motionless, p, workers);
    long exceed = 0;
    for (double v : sim.jtotal) {
        if (v > threshold_mws) ++exceed;
    }
    TailEstimate tail;
    tail.exceed_count = exceed;
    tail.replications = plan.replications;
    tail.probability =
        static_cast<double>(exceed) / static_cast<double>(plan.replications);
    tail.wilson_ci95 = wilson_interval(exceed, plan.replications);
    return tail;
}

nlohmann::json to_json(const EstimateReport& report, bool include_timing) {
    nlohmann::json j;
    j["replications"] = report.replications;
    j["master_seed"] = report.master_seed;
    j["time_step_s"] = report.time_step_s;
    if (include_timing) j["elapsed_s"] = report.elapsed_s;
    j["warnings"] = report.warnings;
    auto stats = nlohmann::json::array();
    for (const auto& s : report.stats) {
        nlohmann::json js;
        js["name"] = s.name;
        js["count"] = s.moments.count;
        js["mean"] = s.moments.mean;
        js["variance"] = s.moments.variance();
        js["skewness"] = s.moments.skewness();
        js["raw_moments"] = {s.moments.raw1, s.moments.raw2, s.moments.raw3,
                             s.moments.raw4};
        js["ci95_mean"] = s.moments.ci95_mean_halfwidth();
        js["ci95_variance"] = s.moments.ci95_variance_halfwidth();
        stats.push_back(std::move(js));
    }
    j["stats"] = std::move(stats);
    return j;
}

void write_csv(std::ostream& os, const EstimateReport& report) {
    os << "statistic,count,mean,variance,skewness,m1,m2,m3,m4,ci95_mean,ci95_variance\n";
    char line[400];
    for (const auto& s : report.stats) {
        std::snprintf(line, sizeof(line),
                      "%s,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      s.name.c_str(), s.moments.count, s.moments.mean,
                      s.moments.variance(), s.moments.skewness(), s.moments.raw1,
                      s.moments.raw2, s.moments.raw3, s.moments.raw4,
                      s.moments.ci95_mean_halfwidth(),
                      s.moments.ci95_variance_halfwidth());
        os << line;
    }
}

} // namespace mc
} // namespace cellergy
