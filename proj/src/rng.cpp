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

#include "cellergy/rng.hpp"

#include <stdexcept>

namespace cellergy {

namespace {

// Inversion by products of uniforms (Knuth). Fine up to the ~700 range where
// exp(-mean) underflows; we switch to PTRS well before that.
long poisson_knuth(RngStream& rng, double mean) {
    const double limit = std::exp(-mean);
    long k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform01_open();
    } while (p > limit);
    return k - 1;
}

// Hormann's PTRS transformed rejection, valid for mean >= 10. Exact.
long poisson_ptrs(RngStream& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform01() - 0.5;
        const double v = rng.uniform01_open();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double k = kf;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            k * loglam - mean - std::lgamma(k + 1.0)) {
            return static_cast<long>(kf);
        }
    }
}

} // namespace

long poisson_draw(RngStream& rng, double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson_draw: mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean < 30.0) return poisson_knuth(rng, mean);
    return poisson_ptrs(rng, mean);
}

} // namespace cellergy
