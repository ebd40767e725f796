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

#include "cellergy/stats.hpp"

#include <stdexcept>

namespace cellergy {

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("inverse_normal_cdf: p must lie in (0, 1)");
    }

    // Acklam's coefficients.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley refinement against the exact CDF.
    const double e = normal_cdf(x) - p;
    const double u = e / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

Interval wilson_interval(long successes, long trials, double z) {
    if (trials <= 0) throw std::invalid_argument("wilson_interval: trials must be > 0");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

double chi_square_critical(int dof, double alpha) {
    if (dof < 1) throw std::invalid_argument("chi_square_critical: dof must be >= 1");
    const double z = inverse_normal_cdf(1.0 - alpha);
    const double k = static_cast<double>(dof);
    const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * t * t * t;
}

long double pairwise_sum(std::span<const double> values) {
    return detail::pairwise_accumulate(values, [](double x) { return x; });
}

SampleMoments SampleMoments::from(std::span<const double> values) {
    SampleMoments m;
    m.count = static_cast<long long>(values.size());
    if (values.empty()) return m;
    const long double n = static_cast<long double>(values.size());
    m.raw1 = static_cast<double>(pairwise_sum(values) / n);
    m.raw2 =
        static_cast<double>(detail::pairwise_accumulate(values, [](double x) { return x * x; }) / n);
    m.raw3 = static_cast<double>(
        detail::pairwise_accumulate(values, [](double x) { return x * x * x; }) / n);
    m.raw4 = static_cast<double>(
        detail::pairwise_accumulate(values, [](double x) { return x * x * x * x; }) / n);
    m.mean = m.raw1;
    // Central moments around the sample mean, computed in a second pairwise
    // pass for accuracy (raw-moment expansion cancels badly when mean >> sd).
    const double mu = m.mean;
    m.central2 = static_cast<double>(
        detail::pairwise_accumulate(values, [mu](double x) { return (x - mu) * (x - mu); }) / n);
    m.central3 = static_cast<double>(detail::pairwise_accumulate(values, [mu](double x) {
                                         const double d = x - mu;
                                         return d * d * d;
                                     }) /
                                     n);
    m.central4 = static_cast<double>(detail::pairwise_accumulate(values, [mu](double x) {
                                         const double d = x - mu;
                                         return (d * d) * (d * d);
                                     }) /
                                     n);
    return m;
}

double SampleMoments::std_error_variance() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double s2 = variance();
    // Var(S^2) = (mu4 - sigma^4 (n-3)/(n-1)) / n
    const double v = (central4 - s2 * s2 * (n - 3.0) / (n - 1.0)) / n;
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

} // namespace cellergy
