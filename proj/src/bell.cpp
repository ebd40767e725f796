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

#include "cellergy/bell.hpp"

#include <stdexcept>

namespace cellergy {

std::vector<std::vector<double>> binomial_table(int n) {
    std::vector<std::vector<double>> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        c[i].resize(i + 1);
        c[i][0] = c[i][i] = 1.0;
        for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

std::vector<double> bell_sequence(std::span<const double> a) {
    const int n = static_cast<int>(a.size());
    if (n < 1) throw std::invalid_argument("bell_sequence: need at least one argument");
    const auto c = binomial_table(n);
    std::vector<double> b(n + 1);
    b[0] = 1.0;
    for (int m = 0; m < n; ++m) {
        double acc = 0.0;
        for (int i = 0; i <= m; ++i) acc += c[m][i] * b[m - i] * a[i];
        b[m + 1] = acc;
    }
    return {b.begin() + 1, b.end()};
}

double bell_polynomial(int n, std::span<const double> a) {
    if (n < 1) throw std::invalid_argument("bell_polynomial: order must be >= 1");
    if (static_cast<int>(a.size()) < n) {
        throw std::invalid_argument("bell_polynomial: need n arguments");
    }
    return bell_sequence(a.first(n)).back();
}

} // namespace cellergy
