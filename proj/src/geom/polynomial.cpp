/*
 * Copyright 2026 The shadowlab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "shadowlab/geom/polynomial.hpp"

namespace shadowlab::geom {

double sphere_monomial_integral(int d, const Monomial& m) {
    for (int i = d; i < kMaxVars; ++i)
        if (m.e[static_cast<std::size_t>(i)] != 0)
            throw InvalidInputError("sphere_monomial_integral: monomial uses variables beyond dimension");
    double log_num = 0.0;
    int total = 0;
    for (int i = 0; i < d; ++i) {
        const int a = m.e[static_cast<std::size_t>(i)];
        if (a % 2 == 1) return 0.0;
        total += a;
        log_num += std::lgamma((a + 1) / 2.0);
    }
    return 2.0 * std::exp(log_num - std::lgamma((total + d) / 2.0));
}

double sphere_integral(const Poly& p, int d) {
    double s = 0.0;
    for (const auto& [m, c] : p.terms()) s += c * sphere_monomial_integral(d, m);
    return s;
}

} // namespace shadowlab::geom
