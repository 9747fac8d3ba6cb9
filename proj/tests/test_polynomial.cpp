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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "shadowlab/core/rng.hpp"
#include "shadowlab/geom/polynomial.hpp"

using namespace shadowlab;
using namespace shadowlab::geom;

namespace {

Poly mono(int nvars, std::initializer_list<int> exps, double coeff) {
    Monomial m;
    int i = 0;
    for (int e : exps) m.e[static_cast<std::size_t>(i++)] = static_cast<std::uint8_t>(e);
    Poly p(nvars);
    p.add_term(m, coeff);
    return p;
}

} // namespace

TEST_CASE("arithmetic, evaluation, derivatives") {
    // p = 2 x^2 y - 3 y + 1
    Poly p = mono(2, {2, 1}, 2.0) + mono(2, {0, 1}, -3.0) + Poly::constant(2, 1.0);
    std::vector<double> at = {1.5, -2.0};
    CHECK(p.eval(at) == doctest::Approx(2 * 2.25 * -2.0 + 6.0 + 1.0));

    Poly px = p.derivative(0); // 4 x y
    CHECK(px.eval(at) == doctest::Approx(4 * 1.5 * -2.0));
    Poly py = p.derivative(1); // 2 x^2 - 3
    CHECK(py.eval(at) == doctest::Approx(2 * 2.25 - 3.0));

    Poly q = p * p;
    CHECK(q.eval(at) == doctest::Approx(p.eval(at) * p.eval(at)));
    CHECK(q.total_degree() == 6);
}

TEST_CASE("shift_scale agrees with direct evaluation") {
    SplitMix64 rng(19);
    Poly p = mono(3, {3, 0, 0}, 0.7) + mono(3, {1, 1, 1}, -0.2) + mono(3, {0, 2, 0}, 1.1);
    std::vector<double> shift = {0.3, -0.5, 0.25};
    const double scale = 0.6;
    Poly shifted = p.shift_scale(shift, scale);
    for (int s = 0; s < 30; ++s) {
        std::vector<double> x = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        std::vector<double> moved = {shift[0] + scale * x[0], shift[1] + scale * x[1],
                                     shift[2] + scale * x[2]};
        CHECK(shifted.eval(x) == doctest::Approx(p.eval(moved)).epsilon(1e-12));
    }
}

TEST_CASE("substitute handles general linear forms including complex") {
    // real -> complex pair substitution x = (z + zbar)/2, y = (z - zbar)/(2i)
    using C = std::complex<double>;
    Poly p = mono(2, {2, 0}, 1.0) + mono(2, {0, 2}, 1.0); // x^2 + y^2 = |z|^2 on pairs
    CPoly cp(2);
    for (const auto& [m, c] : p.terms()) cp.add_term(m, C(c, 0.0));

    std::vector<CPoly> forms;
    CPoly zf = CPoly::variable(2, 0) * C(0.5, 0.0) + CPoly::variable(2, 1) * C(0.5, 0.0);
    CPoly yf = CPoly::variable(2, 0) * C(0.0, -0.5) + CPoly::variable(2, 1) * C(0.0, 0.5);
    forms.push_back(zf);
    forms.push_back(yf);
    CPoly sub = cp.substitute(forms); // should be z * zbar
    CHECK(sub.term_count() == 1);
    for (const auto& [m, c] : sub.terms()) {
        CHECK(m.e[0] == 1);
        CHECK(m.e[1] == 1);
        CHECK(c.real() == doctest::Approx(1.0));
        CHECK(c.imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("homogeneous parts partition the polynomial") {
    Poly p = mono(2, {3, 0}, 1.0) + mono(2, {1, 1}, 2.0) + Poly::constant(2, -4.0);
    Poly sum(2);
    for (int d = 0; d <= p.total_degree(); ++d) sum += p.homogeneous_part(d);
    CHECK((sum - p).coefficient_norm() == doctest::Approx(0.0));
}

TEST_CASE("exact sphere moments") {
    const double pi = std::numbers::pi;
    // surface areas
    CHECK(sphere_integral(Poly::constant(2, 1.0), 2) == doctest::Approx(2 * pi));
    CHECK(sphere_integral(Poly::constant(4, 1.0), 4) == doctest::Approx(2 * pi * pi));

    // x1^2 over S^3 = surface / 4 by symmetry
    CHECK(sphere_integral(mono(4, {2, 0, 0, 0}, 1.0), 4) == doctest::Approx(pi * pi / 2));

    // odd moments vanish
    CHECK(sphere_integral(mono(4, {1, 0, 0, 0}, 1.0), 4) == doctest::Approx(0.0));
    CHECK(sphere_integral(mono(4, {1, 2, 0, 0}, 1.0), 4) == doctest::Approx(0.0));

    // |z1|^2 = x1^2 + y1^2 over S^3: mean is 1/2 of surface
    Poly z1sq = mono(4, {2, 0, 0, 0}, 1.0) + mono(4, {0, 2, 0, 0}, 1.0);
    CHECK(sphere_integral(z1sq, 4) == doctest::Approx(pi * pi));

    // quadrature cross-check: random degree-4 polynomial vs Monte Carlo
    SplitMix64 rng(77);
    Poly p(4);
    for (int t = 0; t < 8; ++t) {
        Monomial m;
        int total = 0;
        for (int i = 0; i < 4; ++i) {
            const int e = static_cast<int>(rng.next_u64() % 3);
            m.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
            total += e;
        }
        if (total <= 4) p.add_term(m, rng.uniform(-1, 1));
    }
    double mc = 0.0;
    const int samples = 400000;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> x = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        const double norm = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        for (auto& xi : x) xi /= norm;
        mc += p.eval(x);
    }
    mc *= 2 * pi * pi / samples;
    CHECK(sphere_integral(p, 4) == doctest::Approx(mc).epsilon(0.02));
}
