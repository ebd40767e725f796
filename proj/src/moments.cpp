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

#include "cellergy/moments.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "cellergy/bell.hpp"

namespace cellergy {

void MomentReport::validate() const {
    if (orders.size() != values.size()) {
        throw NumericError("MomentReport: orders/values size mismatch");
    }
    for (std::size_t i = 1; i < orders.size(); ++i) {
        if (orders[i] <= orders[i - 1]) {
            throw NumericError("MomentReport: orders must be ascending");
        }
    }
    if (variance < 0.0) throw NumericError("MomentReport: negative variance");
    for (double v : values) {
        if (!std::isfinite(v)) throw NumericError("MomentReport: non-finite moment");
    }
}

nlohmann::json to_json(const MomentReport& report) {
    nlohmann::json j;
    j["orders"] = report.orders;
    j["values"] = report.values;
    if (!report.std_errors.empty()) j["std_errors"] = report.std_errors;
    j["mean"] = report.mean;
    j["variance"] = report.variance;
    if (std::isfinite(report.skewness)) {
        j["skewness"] = report.skewness;
    } else {
        j["skewness"] = nullptr;
    }
    j["provenance"] =
        report.provenance == Provenance::Analytic ? "analytic" : "monte_carlo";
    j["formula_refs"] = report.formula_refs;
    return j;
}

MomentReport campbell_moments(std::span<const double> f_power_integrals) {
    MomentReport report;
    const int n = static_cast<int>(f_power_integrals.size());
    if (n < 1) throw NumericError("campbell_moments: need at least one integral");
    for (double v : f_power_integrals) {
        if (!std::isfinite(v)) {
            throw NumericError("campbell_moments: kernel power integral not finite");
        }
    }
    report.values = bell_sequence(f_power_integrals);
    report.orders.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) report.orders[static_cast<std::size_t>(k)] = k + 1;
    report.mean = f_power_integrals[0];
    report.variance = n >= 2 ? f_power_integrals[1] : 0.0;
    // Cumulants of a Poisson functional are the kernel power integrals, so
    // the skewness needs no raw-moment cancellation.
    report.skewness = n >= 3 && report.variance > 0.0
                          ? f_power_integrals[2] / std::pow(report.variance, 1.5)
                          : std::numeric_limits<double>::quiet_NaN();
    report.provenance = Provenance::Analytic;
    report.formula_refs = {"bell_moment_recurrence", "poisson_cumulants_kernel_powers"};
    return report;
}

} // namespace cellergy
