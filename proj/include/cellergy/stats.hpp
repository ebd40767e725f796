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
#include <cstddef>
#include <span>

namespace cellergy {

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) * 0.3989422804014326779; // 1/sqrt(2 pi)
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

/// Upper tail Q(x) = P(Z > x) for standard normal Z.
inline double normal_upper_tail(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

/// Inverse standard normal CDF (Acklam's rational approximation refined by
/// one Halley step on erfc). Accurate to ~1e-15 over (0, 1).
double inverse_normal_cdf(double p);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for a binomial proportion at normal quantile z.
Interval wilson_interval(long successes, long trials, double z = 1.959963984540054);

/// Upper critical value of the chi-square distribution (Wilson-Hilferty).
double chi_square_critical(int dof, double alpha);

/// Asymptotic Kolmogorov-Smirnov critical value for sample size n.
inline double ks_critical(std::size_t n, double alpha) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

/// Deterministic pairwise sum in extended precision. The reduction order
/// depends only on the array length, never on thread scheduling.
long double pairwise_sum(std::span<const double> values);

namespace detail {
template <class F>
long double pairwise_accumulate(std::span<const double> v, F&& f) {
    if (v.size() <= 64) {
        long double acc = 0.0L;
        for (double x : v) acc += static_cast<long double>(f(x));
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_accumulate(v.first(half), f) +
           pairwise_accumulate(v.subspan(half), f);
}
} // namespace detail

/// Raw and central sample moments up to order 4, accumulated pairwise.
struct SampleMoments {
    long long count = 0;
    double raw1 = 0.0, raw2 = 0.0, raw3 = 0.0, raw4 = 0.0; // mean of x^k
    double mean = 0.0;
    double central2 = 0.0, central3 = 0.0, central4 = 0.0;

    static SampleMoments from(std::span<const double> values);

    /// Unbiased sample variance.
    double variance() const {
        return count > 1 ? central2 * static_cast<double>(count) /
                               static_cast<double>(count - 1)
                         : 0.0;
    }
    double std_error_mean() const {
        return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
    }
    /// Standard error of the sample variance, from the fourth central moment.
    double std_error_variance() const;
    double skewness() const {
        return central2 > 0.0 ? central3 / std::pow(central2, 1.5) : 0.0;
    }
    double ci95_mean_halfwidth() const { return 1.959963984540054 * std_error_mean(); }
    double ci95_variance_halfwidth() const {
        return 1.959963984540054 * std_error_variance();
    }
};

} // namespace cellergy
