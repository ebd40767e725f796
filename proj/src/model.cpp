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

#include "cellergy/model.hpp"

#include <numbers>

namespace cellergy {

double radial_inv_power_integral(const PathLoss& pl, double radius_m, int k) {
    pl.validate();
    if (!(radius_m > 0.0)) {
        throw std::invalid_argument("radial_inv_power_integral: radius must be > 0");
    }
    if (k < 1) throw std::invalid_argument("radial_inv_power_integral: k must be >= 1");

    const double two_pi = 2.0 * std::numbers::pi;
    const double g = pl.gamma;
    const double R = radius_m;

    switch (pl.kind) {
    case PathLossKind::Singular:
        // integral of |x|^(gamma k) over the disk
        return two_pi * std::pow(R, g * k + 2.0) / (g * k + 2.0);
    case PathLossKind::Clipped: {
        const double r0 = pl.r0_m;
        if (R <= r0) {
            return std::numbers::pi * R * R * std::pow(r0, g * k);
        }
        const double inner = std::numbers::pi * r0 * r0 * std::pow(r0, g * k);
        const double outer = two_pi *
                             (std::pow(R, g * k + 2.0) - std::pow(r0, g * k + 2.0)) /
                             (g * k + 2.0);
        return inner + outer;
    }
    case PathLossKind::Smooth: {
        // (1 + u^gamma)^k expands to a finite binomial sum with exact
        // radial antiderivatives.
        double acc = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            acc += binom * std::pow(R, g * j + 2.0) / (g * j + 2.0);
            binom *= static_cast<double>(k - j) / static_cast<double>(j + 1);
        }
        return two_pi * acc;
    }
    }
    return 0.0; // unreachable
}

} // namespace cellergy
