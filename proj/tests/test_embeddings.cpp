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

#include "shadowlab/embed/composition.hpp"
#include "shadowlab/embed/path.hpp"

using namespace shadowlab;
using namespace shadowlab::embed;
using core::Mat;
using shadowlab::SplitMix64;
using core::Vec;
using geom::Poly;

namespace {

Vec vec4(double a, double b, double c, double d) {
    Vec v(4);
    v << a, b, c, d;
    return v;
}

Poly monomial(int nvars, std::initializer_list<int> exps, double coeff) {
    geom::Monomial m;
    int i = 0;
    for (int e : exps) m.e[static_cast<std::size_t>(i++)] = static_cast<std::uint8_t>(e);
    Poly p(nvars);
    p.add_term(m, coeff);
    return p;
}

EmbeddingComposition cubic_test_map(int two_n) {
    const int n = two_n / 2;
    SplitMix64 rng(31);
    std::vector<PrimitiveMap> factors;
    factors.push_back(PrimitiveMap::linear(core::random_symplectic(two_n, rng, 4)));
    Poly g = monomial(n, {3}, 0.21) + monomial(n, {1, 2}, -0.13);
    factors.push_back(PrimitiveMap::shear_positions(two_n, g));
    Poly h = monomial(n, {0, 3}, 0.17) + monomial(n, {2, 1}, 0.09);
    factors.push_back(PrimitiveMap::shear_momenta(two_n, h));
    Vec t = Vec::Zero(two_n);
    t[1] = 0.4;
    factors.push_back(PrimitiveMap::translation(t));
    return EmbeddingComposition(std::move(factors), 2.0);
}

} // namespace

TEST_CASE("primitive eval: frozen examples") {
    auto id = EmbeddingComposition::identity(4);
    Vec e1 = vec4(1, 0, 0, 0);
    CHECK((id.eval(e1) - e1).norm() == doctest::Approx(0.0));

    // shear_positions with g(x) = x1^2 at (1,0,0,0) -> (1,2,0,0)
    auto shear = PrimitiveMap::shear_positions(4, monomial(2, {2}, 1.0));
    CHECK((shear.eval(e1) - vec4(1, 2, 0, 0)).norm() == doctest::Approx(0.0));

    // translation
    Vec v = vec4(0.3, -0.1, 0.2, 0.5);
    auto tr = PrimitiveMap::translation(v);
    CHECK((tr.eval(e1) - (e1 + v)).norm() == doctest::Approx(0.0));
}

TEST_CASE("jacobian: frozen examples and unit determinant") {
    // shear g = x1^2: Jacobian adds 2 in the (y1, x1) slot
    auto shear = PrimitiveMap::shear_positions(4, monomial(2, {2}, 1.0));
    Mat d = shear.jacobian(vec4(0.7, 0.0, -0.3, 0.0));
    Mat expected = Mat::Identity(4, 4);
    expected(1, 0) = 2.0;
    CHECK((d - expected).norm() == doctest::Approx(0.0));

    auto phi = cubic_test_map(6);
    SplitMix64 rng(5);
    for (int s = 0; s < 20; ++s) {
        Vec x = core::random_unit_vector(6, rng) * rng.uniform(0, 1.5);
        CHECK(phi.jacobian(x).determinant() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("eval/jacobian finite-difference consistency with Richardson ratio") {
    auto phi = cubic_test_map(4);
    SplitMix64 rng(17);

    auto fd_error = [&](const Vec& x, double h) {
        const Mat d = phi.jacobian(x);
        double worst = 0.0;
        for (int j = 0; j < 4; ++j) {
            Vec e = Vec::Zero(4);
            e[j] = h;
            const Vec col = (phi.eval(x + e) - phi.eval(x - e)) / (2 * h);
            worst = std::max(worst, (col - d.col(j)).norm());
        }
        return worst;
    };

    for (int s = 0; s < 5; ++s) {
        const Vec x = core::random_unit_vector(4, rng) * 0.8;
        const double e4 = fd_error(x, 1e-4);
        const double e5 = fd_error(x, 1e-5);
        CHECK(e4 < 1e-6);
        if (e5 > 1e-12) { // ratio is meaningful above round-off
            CHECK(e4 / e5 > 30.0);
            CHECK(e4 / e5 < 300.0);
        }
    }
}

TEST_CASE("adjoint_inverse_apply matches dense solve and round-trips") {
    SplitMix64 rng(23);
    auto id = EmbeddingComposition::identity(6);
    Vec w = core::random_unit_vector(6, rng);
    CHECK((id.adjoint_inverse_apply(Vec::Zero(6), w) - w).norm() < 1e-14);

    // linear factor: compare against a dense solve of L^T v = w
    auto l = core::random_symplectic(6, rng, 5);
    std::vector<PrimitiveMap> f;
    f.push_back(PrimitiveMap::linear(l));
    EmbeddingComposition lin(std::move(f), 2.0);
    Vec x = core::random_unit_vector(6, rng) * 0.5;
    Vec dense = l.matrix().transpose().partialPivLu().solve(w);
    CHECK((lin.adjoint_inverse_apply(x, w) - dense).norm() < 1e-12);

    // composition: Dphi(x)^* applied to the result returns w
    auto phi = cubic_test_map(6);
    for (int s = 0; s < 10; ++s) {
        Vec z = core::random_unit_vector(6, rng) * rng.uniform(0, 1.2);
        Vec ww = core::random_unit_vector(6, rng);
        Vec v = phi.adjoint_inverse_apply(z, ww);
        CHECK((phi.jacobian(z).transpose() * v - ww).norm() < 1e-10);
    }
}

TEST_CASE("symplecticity residual: honest maps pass, corrupted factor fails") {
    SplitMix64 rng(41);
    auto phi = cubic_test_map(6);
    CHECK(phi.symplecticity_residual(100, rng) < 1e-9);

    // corrupt a linear factor by 1e-3 and watch the residual blow past 1e-3
    Mat bad = Mat::Identity(6, 6);
    bad(0, 2) = 1e-3;
    std::vector<PrimitiveMap> f;
    f.push_back(PrimitiveMap::linear_unchecked(bad));
    EmbeddingComposition corrupted(std::move(f), 2.0);
    CHECK(corrupted.symplecticity_residual(50, rng) > 1e-3 * 0.5);
}

TEST_CASE("analytic path: evaluation, t = 0 linearity, symplecticity sweep") {
    const int two_n = 4;
    SplitMix64 rng(3);
    auto l0 = core::random_symplectic(two_n, rng, 4);

    std::vector<Poly> coeffs;
    coeffs.push_back(Poly(2));                     // zero at t = 0
    coeffs.push_back(monomial(2, {3}, 0.4));       // t * g
    std::vector<PathFactor> pf;
    pf.push_back(PathFactor::fixed_linear(l0));
    pf.push_back(PathFactor::shear_positions(two_n, coeffs));
    AnalyticPath path(std::move(pf), 2.0);

    // t = 0 reduces to the linear start
    auto phi0 = path.at(0.0);
    SplitMix64 rng2(4);
    for (int s = 0; s < 10; ++s) {
        Vec x = core::random_unit_vector(two_n, rng2);
        CHECK((phi0.eval(x) - l0.matrix() * x).norm() < 1e-12);
    }

    // t = 0.5 halves the shear potential; the shear acts on the linear image
    auto phi_half = path.at(0.5);
    Vec probe = vec4(0.8, 0.1, -0.2, 0.3);
    Vec expect = l0.matrix() * probe;
    expect[1] += 0.5 * 0.4 * 3.0 * expect[0] * expect[0];
    CHECK((phi_half.eval(probe) - expect).norm() < 1e-12);

    for (double t : {0.0, 0.2, 0.5, 0.8, 1.0}) {
        auto phi_t = path.at(t);
        CHECK(phi_t.symplecticity_residual(40, rng2) < 1e-9);
    }
}

TEST_CASE("rescaled family: frozen examples and exactness") {
    const int two_n = 4;
    SplitMix64 rng(8);

    // linear phi: family is L for every x and r
    auto l = core::random_symplectic(two_n, rng, 5);
    std::vector<PrimitiveMap> lf;
    lf.push_back(PrimitiveMap::linear(l));
    EmbeddingComposition lin(std::move(lf), 3.0);
    Vec x = vec4(0.2, -0.1, 0.3, 0.05);
    for (double r : {0.0, 0.1, 0.5}) {
        auto fam = rescaled_family(lin, x, r);
        Vec y = core::random_unit_vector(two_n, rng);
        CHECK((fam.eval(y) - l.matrix() * y).norm() < 1e-12);
    }

    // cubic shear g = x1^3 at x = 0: rescaled potential is r * u1^3
    std::vector<PrimitiveMap> cf;
    cf.push_back(PrimitiveMap::shear_positions(two_n, monomial(2, {3}, 1.0)));
    EmbeddingComposition cubic(std::move(cf), 3.0);
    auto fam = rescaled_family(cubic, Vec::Zero(two_n), 0.25);
    Vec y = vec4(0.6, 0.2, -0.4, 0.1);
    Vec expect = y;
    expect[1] += 0.25 * 3.0 * y[0] * y[0]; // grad of r u1^3
    CHECK((fam.eval(y) - expect).norm() < 1e-13);

    // r -> 0 limit is the identity here (Hessian of x1^3 vanishes at 0)
    auto fam0 = rescaled_family(cubic, Vec::Zero(two_n), 0.0);
    CHECK((fam0.eval(y) - y).norm() < 1e-14);

    // generic composition: direct quotient oracle at r > 0
    auto phi = cubic_test_map(4);
    Vec c = vec4(0.15, -0.2, 0.1, 0.3);
    const double r = 0.2;
    auto fam2 = rescaled_family(phi, c, r);
    for (int s = 0; s < 10; ++s) {
        Vec yy = core::random_unit_vector(two_n, rng) * rng.uniform(0, 1);
        Vec direct = (phi.eval(c + r * yy) - phi.eval(c)) / r;
        CHECK((fam2.eval(yy) - direct).norm() < 1e-12);
    }

    // r = 0 gives the linearization Dphi(c)
    auto fam3 = rescaled_family(phi, c, 0.0);
    Mat d = phi.jacobian(c);
    for (int s = 0; s < 5; ++s) {
        Vec yy = core::random_unit_vector(two_n, rng);
        CHECK((fam3.eval(yy) - d * yy).norm() < 1e-12);
    }

    CHECK_THROWS_AS(rescaled_family(phi, c, 5.0), InvalidInputError);
}

TEST_CASE("rescaled path agrees with rescaled_family") {
    auto phi = cubic_test_map(4);
    Vec x = vec4(0.15, -0.1, 0.2, 0.0);
    auto path = rescaled_path(phi, x);
    SplitMix64 rng(91);
    for (double r : {0.0, 0.1, 0.3}) {
        auto via_path = path.at(r);
        auto via_family = rescaled_family(phi, x, r);
        for (int s = 0; s < 5; ++s) {
            Vec y = core::random_unit_vector(4, rng) * 0.9;
            CHECK((via_path.eval(y) - via_family.eval(y)).norm() < 1e-12);
        }
    }
}

TEST_CASE("rescaled of rescaled composes at r * r' for linear maps") {
    SplitMix64 rng(12);
    auto l = core::random_symplectic(4, rng, 6);
    std::vector<PrimitiveMap> lf;
    lf.push_back(PrimitiveMap::linear(l));
    EmbeddingComposition lin(std::move(lf), 4.0);
    Vec x = vec4(0.1, 0.2, -0.1, 0.0);
    auto once = rescaled_family(lin, x, 0.3);
    auto twice = rescaled_family(once, Vec::Zero(4), 0.5);
    auto direct = rescaled_family(lin, x, 0.15);
    Vec y = core::random_unit_vector(4, rng);
    CHECK((twice.eval(y) - direct.eval(y)).norm() < 1e-13);
}

TEST_CASE("unitary rotation path factors are exactly symplectic and J-commuting") {
    std::vector<PathFactor::RotationOp> ops;
    ops.push_back({false, 0, 0, 0.9, 0.0});
    ops.push_back({true, 0, 1, 0.6, 0.35});
    auto rot = PathFactor::rotation(4, ops);
    const Mat j = core::complex_structure(4);
    for (double t : {0.0, 0.3, 0.7, 1.0}) {
        auto prim = rot.at(t);
        const Mat m = prim.linear_matrix();
        CHECK(core::SymplecticMatrix::defect(m) < 1e-12);
        CHECK((m * m.transpose() - Mat::Identity(4, 4)).norm() < 1e-12);
        CHECK((m * j - j * m).norm() < 1e-12);
    }
    CHECK((rot.at(0.0).linear_matrix() - Mat::Identity(4, 4)).norm() < 1e-15);
}

TEST_CASE("injectivity radius certificate") {
    SplitMix64 rng(55);
    auto id_factors = std::vector<PrimitiveMap>{
        PrimitiveMap::linear(core::SymplecticMatrix(Mat::Identity(4, 4)))};
    CHECK(EmbeddingComposition::certify_injectivity_radius(id_factors, 2.0, rng) ==
          doctest::Approx(2.0));

    // strong cubic shear: certificate radius must shrink below the cap
    std::vector<PrimitiveMap> strong;
    strong.push_back(PrimitiveMap::shear_positions(4, monomial(2, {3}, 4.0)));
    const double r = EmbeddingComposition::certify_injectivity_radius(strong, 2.0, rng);
    CHECK(r < 2.0);
    CHECK(r > 0.0);
}

TEST_CASE("domain radius is enforced") {
    auto phi = cubic_test_map(4);
    Vec far = vec4(3.0, 0, 0, 0);
    CHECK_THROWS_AS(phi.eval(far), InvalidInputError);
    CHECK_THROWS_AS(phi.jacobian(far), InvalidInputError);
}
