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
#include <vector>

#include "cellergy/mobility.hpp"
#include "cellergy/rng.hpp"
#include "cellergy/traffic.hpp"
#include "cellergy/types.hpp"

namespace cellergy {

/// Centered disk or annulus sampling region.
struct Window {
    Vec2 center = Vec2::Zero();
    double r_inner_m = 0.0;
    double r_outer_m = 0.0;

    double area() const;
    bool contains(const Vec2& x) const;

    static Window disk(double radius_m) { return {Vec2::Zero(), 0.0, radius_m}; }
    static Window annulus(double r_inner_m, double r_outer_m) {
        return {Vec2::Zero(), r_inner_m, r_outer_m};
    }

    void validate() const {
        if (!(r_outer_m > r_inner_m) || !(r_inner_m >= 0.0)) {
            throw ConfigError("window: need 0 <= r_inner < r_outer");
        }
    }
};

struct MarkedUser {
    Vec2 position0 = Vec2::Zero();
    MotionPath motion;
    TrafficTrajectory traffic;
};

/// A finite realization of the marked point process: user positions plus
/// independent identically distributed mobility and traffic marks. The
/// lineage record pins every draw, so equal lineages reproduce the
/// configuration bit for bit.
struct MarkedConfiguration {
    Window window;
    SeedLineage lineage;
    double horizon_s = 0.0;
    std::vector<MarkedUser> users;
};

/// Stream used for the user count and the user positions of a replication.
RngStream replication_stream(const SeedLineage& lineage);

/// Independent stream for the marks of one user. Keyed by user index so
/// that marks are exchangeable and independent of how many users exist.
RngStream user_mark_stream(const SeedLineage& lineage, std::uint64_t user_index);

/// Uniform point on the window; rejects the exact center (a probability
/// zero draw that would hit the singular path-loss pole).
Vec2 sample_point_in_window(const Window& window, RngStream& rng);

/// Homogeneous Poisson sample on the window: count ~ Poisson(density * area),
/// positions i.i.d. uniform. Marks are left empty.
MarkedConfiguration sample_ppp(double density_per_m2, const Window& window,
                               const SeedLineage& lineage);

/// Attaches an i.i.d. (motion, traffic) mark pair to every user. Per user,
/// the motion is drawn before the trajectory; both come from the user's own
/// mark stream, so the marks of different users never interact.
void attach_marks(MarkedConfiguration& cfg, const TrafficModel& traffic,
                  const MobilityModel& mobility, double horizon_s);

/// Positions displaced to time t: {x + M_x(t)}.
std::vector<Vec2> displace(const MarkedConfiguration& cfg, double t);

/// CSV dump: user_id, x_m, y_m, on_at_0, vx_mps, vy_mps.
void write_configuration_csv(std::ostream& os, const MarkedConfiguration& cfg);

} // namespace cellergy
