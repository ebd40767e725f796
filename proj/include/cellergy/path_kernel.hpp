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

#include <algorithm>
#include <cmath>

#include "cellergy/pathloss.hpp"
#include "cellergy/quadrature.hpp"
#include "cellergy/types.hpp"

namespace cellergy {

/// Time interval during which the linear path x0 + v t stays inside the
/// centered disk of radius R. Constant-velocity cell membership is a single
/// interval, the root interval of |x0 + v t|^2 = R^2, exact to machine
/// precision (no stepping or bisection needed for this motion family).
struct DiskCrossing {
    bool hits = false;
    double t_enter = 0.0;
    double t_exit = 0.0;
};

inline DiskCrossing disk_crossing(const Vec2& x0, const Vec2& v, double radius_m) {
    const double a = v.squaredNorm();
    const double c = x0.squaredNorm() - radius_m * radius_m;
    if (a == 0.0) {
        if (c <= 0.0)

            return {true, -std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
        return {};
    }
    const double b = 2.0 * x0.dot(v);
    const double disc = b * b - 4.0 * a * c;
    if (disc <= 0.0) return {};
    const double sq = std::sqrt(disc);
    return {true, (-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)};
}

/// Integral of l^(-1)(x0 + v t) over [a, b] by composite 4-point
/// Gauss-Legendre with panel length at most `time_step`, capped at
/// `max_panels` panels. The integrand vanishes toward the disk center for
/// the singular model, so panel-level error stays benign even when the
/// path grazes the origin.
inline double attenuation_line_integral(const PathLoss& pl, const Vec2& x0,
                                        const Vec2& v, double a, double b,
                                        double time_step, int max_panels = 64) {
    if (!(b > a)) return 0.0;
    const int panels = static_cast<int>(std::clamp(
        std::ceil((b - a) / time_step), 1.0, static_cast<double>(max_panels)));
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        acc += gauss4(
            [&](double t) {
                const double r2 = (x0 + v * t).squaredNorm();
                return pathloss_inv_radial(pl, std::sqrt(r2));
            },
            lo, lo + h);
    }
    return acc;
}

} // namespace cellergy
