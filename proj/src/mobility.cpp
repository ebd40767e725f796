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

#include "cellergy/mobility.hpp"

#include <numbers>

namespace cellergy {

MotionPath sample_motion(const MobilityModel& model, RngStream& rng) {
    model.validate();
    MotionPath path;
    path.epsilon = model.epsilon;
    if (model.kind == MobilityKind::Motionless) return path;

    path.speed_mps = model.speed.sample(rng);
    path.direction_rad = rng.uniform(0.0, 2.0 * std::numbers::pi);
    path.velocity_eff =
        Vec2(std::cos(path.direction_rad), std::sin(path.direction_rad)) *
        (path.speed_mps / model.epsilon);
    return path;
}

} // namespace cellergy
