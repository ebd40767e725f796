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

#include <cmath>

#include "cellergy/rng.hpp"
#include "cellergy/types.hpp"

namespace cellergy {

enum class MobilityKind { Motionless, ConstantVelocity };
enum class SpeedDistKind { Fixed, Uniform };

/// Speed magnitude distribution with a hard cap. Every mobility model must
/// expose a finite cap: the simulation window grows by cap * horizon so that
/// users starting outside the cell and moving into it are captured.
struct SpeedDist {
    SpeedDistKind kind = SpeedDistKind::Fixed;
    double lo_mps = 0.0;  // Fixed: the speed; Uniform: lower bound
    double hi_mps = 0.0;  // Uniform: upper bound

    double cap_mps() const { return kind == SpeedDistKind::Fixed ? lo_mps : hi_mps; }

    double sample(RngStream& rng) const {
        return kind == SpeedDistKind::Fixed ? lo_mps : rng.uniform(lo_mps, hi_mps);
    }

    /// True when the law has no atom at speed zero.
    bool zero_speed_impossible() const {
        if (kind == SpeedDistKind::Fixed) return lo_mps > 0.0;
        return hi_mps > 0.0; // uniform over an interval: P(v = 0) = 0
    }
};

/// Distribution over motion paths started at the origin.
///
/// ConstantVelocity draws a speed and an independent uniform direction;
/// epsilon < 1 is the accelerated version, whose path is the base path run
/// at time t / epsilon. For constant velocity this coincides with dividing
/// the displacement by epsilon.
struct MobilityModel {
    MobilityKind kind = MobilityKind::Motionless;
    SpeedDist speed;
    double epsilon = 1.0; // time-scaling factor in (0, 1]; 1 = no acceleration

    void validate() const {
        if (!(epsilon > 0.0 && epsilon <= 1.0)) {
            throw ConfigError("mobility: epsilon must lie in (0, 1]");
        }
        if (kind == MobilityKind::ConstantVelocity) {
            if (!(speed.cap_mps() >= 0.0) || !std::isfinite(speed.cap_mps())) {
                throw ConfigError("mobility: speed cap must be finite");
            }
            if (speed.kind == SpeedDistKind::Uniform &&
                !(speed.lo_mps >= 0.0 && speed.hi_mps >= speed.lo_mps)) {
                throw ConfigError("mobility: uniform speed needs 0 <= lo <= hi");
            }
        }
    }

    /// Property T: P(M(s) = M(t)) = 0 for s != t. Holds for constant
    /// velocity whenever zero speed has probability zero; never for the
    /// motionless model.
    bool property_t() const {
        return kind == MobilityKind::ConstantVelocity && speed.zero_speed_impossible();
    }

    /// Largest displacement rate after acceleration, cap / epsilon.
    double effective_speed_cap_mps() const {
        return kind == MobilityKind::Motionless ? 0.0 : speed.cap_mps() / epsilon;
    }

    MobilityModel accelerated(double eps) const {
        MobilityModel m = *this;
        m.epsilon = eps;
        m.validate();
        return m;
    }
};

/// One sampled motion path. Constant-velocity paths are linear, so the
/// effective (already epsilon-scaled) velocity fully determines them;
/// the pre-scaling speed and direction are kept as metadata.
struct MotionPath {
    Vec2 velocity_eff = Vec2::Zero(); // displacement per second, v / epsilon
    double speed_mps = 0.0;           // base speed before acceleration
    double direction_rad = 0.0;
    double epsilon = 1.0;

    Vec2 at(double t) const { return velocity_eff * t; }
    bool moving() const { return velocity_eff.squaredNorm() > 0.0; }
};

MotionPath sample_motion(const MobilityModel& model, RngStream& rng);

} // namespace cellergy
