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
#include <string>

#include "cellergy/types.hpp"

namespace cellergy {

/// Isotropic path-loss families. l depends on position only through its
/// norm, so every function here has a radial twin taking r = |x|.
///
///   Singular: l(x) = |x|^(-gamma)
///   Clipped:  l(x) = max(r0, |x|)^(-gamma)
///   Smooth:   l(x) = (1 + |x|^gamma)^(-1)
///
/// All are strictly positive for |x| > 0 and non-increasing in |x|.
enum class PathLossKind { Singular, Clipped, Smooth };

struct PathLoss {
    PathLossKind kind = PathLossKind::Singular;
    double gamma = 3.0;   // dimensionless exponent, > 0
    double r0_m = 0.0;    // clip radius, Clipped only, > 0

    void validate() const {
        if (!(gamma > 0.0)) throw ConfigError("pathloss: gamma must be > 0");
        if (kind == PathLossKind::Clipped && !(r0_m > 0.0)) {
            throw ConfigError("pathloss: Clipped kind needs r0_m > 0");
        }
    }
};

/// Radial attenuation inverse L^(-1)(r) = 1 / L(r); the power scale needed
/// to reach a receiver at distance r. Singular kind is undefined at r = 0.
inline double pathloss_inv_radial(const PathLoss& pl, double r) {
    switch (pl.kind) {
    case PathLossKind::Singular:
        if (r <= 0.0) {
            throw std::domain_error("pathloss_inv: singular model at the origin");
        }
        return std::pow(r, pl.gamma);
    case PathLossKind::Clipped:
        return std::pow(std::max(pl.r0_m, r), pl.gamma);
    case PathLossKind::Smooth:
        return 1.0 + std::pow(r, pl.gamma);
    }
    return 0.0; // unreachable
}

inline double pathloss_inv(const PathLoss& pl, const Vec2& x) {
    return pathloss_inv_radial(pl, x.norm());
}

/// Closed form of the disk integral over a cell of radius R:
///   integral_{|x| <= R} (l^(-1)(x))^k dx,  k >= 1.
/// Finite for every kind on a bounded disk.
double radial_inv_power_integral(const PathLoss& pl, double radius_m, int k);

inline std::string to_string(PathLossKind kind) {
    switch (kind) {
    case PathLossKind::Singular: return "singular";
    case PathLossKind::Clipped: return "clipped";
    case PathLossKind::Smooth: return "smooth";
    }
    return "?";
}

} // namespace cellergy
