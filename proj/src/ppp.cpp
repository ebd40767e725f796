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

#include "cellergy/ppp.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace cellergy {

namespace {
// Stream purpose tags; part of the persisted seeding scheme, do not renumber.
constexpr std::uint64_t kTagPositions = 0x01;
constexpr std::uint64_t kTagMarks = 0x02;
} // namespace

double Window::area() const {
    return std::numbers::pi * (r_outer_m * r_outer_m - r_inner_m * r_inner_m);
}

bool Window::contains(const Vec2& x) const {
    const double r2 = (x - center).squaredNorm();
    return r2 >= r_inner_m * r_inner_m && r2 <= r_outer_m * r_outer_m;
}

RngStream replication_stream(const SeedLineage& lineage) {
    return RngStream(derive_key(lineage.master_seed, lineage.replication, kTagPositions));
}

RngStream user_mark_stream(const SeedLineage& lineage, std::uint64_t user_index) {
    return RngStream(
        derive_key(lineage.master_seed, lineage.replication, kTagMarks, user_index));
}

Vec2 sample_point_in_window(const Window& window, RngStream& rng) {
    for (;;) {
        const double u = rng.uniform01();
        const double r = std::sqrt(window.r_inner_m * window.r_inner_m +
                                   u * (window.r_outer_m * window.r_outer_m -
                                        window.r_inner_m * window.r_inner_m));
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        if (r == 0.0) continue; // singular path-loss pole
        return window.center + Vec2(r * std::cos(theta), r * std::sin(theta));
    }
}

MarkedConfiguration sample_ppp(double density_per_m2, const Window& window,
                               const SeedLineage& lineage) {
    window.validate();
    if (!(density_per_m2 > 0.0)) {
        throw ConfigError("sample_ppp: density must be > 0");
    }
    MarkedConfiguration cfg;
    cfg.window = window;
    cfg.lineage = lineage;
    RngStream rng = replication_stream(lineage);
    const long count = poisson_draw(rng, density_per_m2 * window.area());
    cfg.users.resize(static_cast<std::size_t>(count));
    for (auto& user : cfg.users) {
        user.position0 = sample_point_in_window(window, rng);
    }
    cfg.lineage.draw_count = rng.draw_count();
    return cfg;
}

void attach_marks(MarkedConfiguration& cfg, const TrafficModel& traffic,
                  const MobilityModel& mobility, double horizon_s) {
    traffic.validate();
    mobility.validate();
    if (!(horizon_s > 0.0)) throw ConfigError("attach_marks: horizon must be > 0");
    cfg.horizon_s = horizon_s;
    for (std::size_t i = 0; i < cfg.users.size(); ++i) {
        RngStream rng = user_mark_stream(cfg.lineage, static_cast<std::uint64_t>(i));
        cfg.users[i].motion = sample_motion(mobility, rng);
        cfg.users[i].traffic = sample_trajectory(traffic, horizon_s, rng);
    }
}

std::vector<Vec2> displace(const MarkedConfiguration& cfg, double t) {
    std::vector<Vec2> out;
    out.reserve(cfg.users.size());
    for (const auto& user : cfg.users) {
        out.push_back(user.position0 + user.motion.at(t));
    }
    return out;
}

void write_configuration_csv(std::ostream& os, const MarkedConfiguration& cfg) {
    os << "user_id,x_m,y_m,on_at_0,vx_mps,vy_mps\n";
    char line[160];
    for (std::size_t i = 0; i < cfg.users.size(); ++i) {
        const auto& u = cfg.users[i];
        std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%d,%.17g,%.17g\n", i,
                      u.position0.x(), u.position0.y(), u.traffic.initial_on ? 1 : 0,
                      u.motion.velocity_eff.x(), u.motion.velocity_eff.y());
        os << line;
    }
}

} // namespace cellergy
