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
#include <vector>

namespace cellergy {

/// Complete Bell polynomials B_1..B_n evaluated at (a_1, ..., a_n), via the
/// recurrence B_{m+1} = sum_{i=0..m} C(m, i) B_{m-i} a_{i+1} with B_0 = 1.
///
/// B_n converts the cumulant sequence of a Poisson functional into its raw
/// moments: with a_k = integral of f^k against the intensity measure,
/// B_n(a_1..a_n) is the n-th moment of sum_{points} f.
std::vector<double> bell_sequence(std::span<const double> a);

/// B_n(a_1..a_n) for a single order n >= 1; `a` must supply n values.
double bell_polynomial(int n, std::span<const double> a);

/// Binomial coefficient table rows 0..n (Pascal's triangle, exact in double
/// for the orders used here).
std::vector<std::vector<double>> binomial_table(int n);

} // namespace cellergy
