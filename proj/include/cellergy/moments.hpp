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

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cellergy/types.hpp"

namespace cellergy {

enum class Provenance { Analytic, MonteCarlo };

/// Ordered raw moments E[X^k] of an energy functional, with the derived
/// mean/variance/skewness and the formula trail that produced them.
struct MomentReport {
    std::vector<int> orders;       // ascending, starting at 1
    std::vector<double> values;    // E[X^k], units (mW s)^k
    std::vector<double> std_errors; // zero for analytic entries
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;         // NaN when order 3 is unavailable
    Provenance provenance = Provenance::Analytic;
    std::vector<std::string> formula_refs;

    void validate() const;
};

nlohmann::json to_json(const MomentReport& report);

/// Moments of a Poisson functional F = sum_points f from the integrals
/// I_k = integral of f^k against the intensity measure (the cumulants of F):
/// E[F^n] = B_n(I_1, ..., I_n), E[F] = I_1, Var[F] = I_2.
MomentReport campbell_moments(std::span<const double> f_power_integrals);

} // namespace cellergy
