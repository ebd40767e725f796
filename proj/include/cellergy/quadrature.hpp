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

#include <functional>
#include <vector>

#include "cellergy/types.hpp"

namespace cellergy {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    long max_intervals = 4096;
    // When true, failure to converge throws NumericError instead of
    // returning a flagged result.
    bool throw_on_failure = true;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
/// Splits the worst interval first until the summed error estimate falls
/// below max(abs_tol, rel_tol * |value|) or the interval budget runs out.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadOptions& options = {});

/// Gauss-Legendre rule of order n on [-1, 1]; nodes ascending.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached Gauss-Legendre nodes/weights (Newton iteration on P_n).
const GaussLegendre& gauss_legendre(int n);

/// Fixed 4-point Gauss-Legendre panel, inlined for simulation hot loops.
template <class F>
double gauss4(F&& f, double a, double b) {
    static constexpr double x0 = 0.3399810435848562648;
    static constexpr double x1 = 0.8611363115940525752;
    static constexpr double w0 = 0.6521451548625461426;
    static constexpr double w1 = 0.3478548451374538574;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    return h * (w0 * (f(c - h * x0) + f(c + h * x0)) +
                w1 * (f(c - h * x1) + f(c + h * x1)));
}

} // namespace cellergy
