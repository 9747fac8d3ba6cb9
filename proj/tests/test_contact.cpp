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

#include "shadowlab/contact/averaging.hpp"
#include "shadowlab/contact/comparison.hpp"
#include "shadowlab/contact/normal_form.hpp"

using namespace shadowlab;
using namespace shadowlab::contact;
using geom::Poly;
using shadowlab::SplitMix64;

namespace {

const double kPi = std::numbers::pi;

Poly mono(int nvars, std::initializer_list<int> exps, double coeff) {
    geom::Monomial m;
    int i = 0;
    for (int e : exps) m.e[static_cast<std::size_t>(i++)] = static_cast<std::uint8_t>(e);
    Poly p(nvars);
    p.add_term(m, coeff);
    return p;
}

// |z1|^2 = x1^2 + y1^2 on S^3 (coordinates x1, y1, x2, y2)
SphereFunction z1_squared() {
    return SphereFunction(4, mono(4, {2, 0, 0, 0}, 1.0) + mono(4, {0, 2, 0, 0}, 1.0));
}

SphereFunction re_z1_squared() {
    return SphereFunction(4, mono(4, {2, 0, 0, 0}, 1.0) + mono(4, {0, 2, 0, 0}, -1.0));
}

SearchOptions fast_search() {
    SearchOptions s;
    s.random_seeds = 6;
    s.max_time = 25.0;
    return s;
}

} // namespace

TEST_CASE("reeb averaging: frozen examples and properties") {
    // constants are fixed
    auto one = SphereFunction::constant(4, 1.0);
    CHECK((reeb_average(one) - one).sup_norm(512) < 1e-14);

    // Re(z1) has zero average
    auto re_z1 = SphereFunction(4, mono(4, {1, 0, 0, 0}, 1.0));
    CHECK(reeb_average(re_z1).sup_norm(512) < 1e-14);

    // |z1|^2 is already invariant
    auto inv = z1_squared();
    CHECK((reeb_average(inv) - inv).sup_norm(512) < 1e-12);

    // mean preservation, idempotence, fiber invariance on a generic example
    SplitMix64 rng(4);
    Poly p(4);
    for (int trial = 0; trial < 12; ++trial) {
        geom::Monomial m;
        int deg = 0;
        for (int v = 0; v < 4; ++v) {
            const int e = static_cast<int>(rng.next_u64() % 3);
            m.e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(e);
            deg += e;
        }
        if (deg <= 5) p.add_term(m, rng.uniform(-1, 1));
    }
    SphereFunction rho(4, p);
    SphereFunction avg = reeb_average(rho);
    CHECK(avg.integral() == doctest::Approx(rho.integral()).epsilon(1e-10));
    CHECK((reeb_average(avg) - avg).sup_norm(1024) < 1e-10);

    // invariance along the circles: avg(e^{i theta} x) = avg(x)
    for (int s = 0; s < 50; ++s) {
        Eigen::VectorXd x = core::random_unit_vector(4, rng);
        const double th = rng.uniform(0, 6.28);
        Eigen::VectorXd rot(4);
        rot << std::cos(th) * x[0] - std::sin(th) * x[1], std::sin(th) * x[0] + std::cos(th) * x[1],
            std::cos(th) * x[2] - std::sin(th) * x[3], std::sin(th) * x[2] + std::cos(th) * x[3];
        CHECK(avg.eval(rot) == doctest::Approx(avg.eval(x)).epsilon(1e-10));
    }
}

TEST_CASE("cohomological solve: frozen example and gauge") {
    // invariant input -> zero
    CHECK(cohomological_solve(z1_squared()).sup_norm(512) < 1e-13);

    // rho = Re(z1^2): h = -(1/2) Im(z1^2) = -x1 y1
    auto h = cohomological_solve(re_z1_squared());
    auto expected = SphereFunction(4, mono(4, {1, 1, 0, 0}, -1.0));
    CHECK((h - expected).sup_norm(1024) < 1e-12);

    // numerical check: d/dtheta h(e^{i theta} x) = rho_bar - rho
    SplitMix64 rng(9);
    auto rho = re_z1_squared();
    auto target = reeb_average(rho) - rho;
    const double dth = 1e-6;
    for (int s = 0; s < 30; ++s) {
        Eigen::VectorXd x = core::random_unit_vector(4, rng);
        auto rotate = [&](double th) {
            Eigen::VectorXd r(4);
            r << std::cos(th) * x[0] - std::sin(th) * x[1], std::sin(th) * x[0] + std::cos(th) * x[1],
                std::cos(th) * x[2] - std::sin(th) * x[3], std::sin(th) * x[2] + std::cos(th) * x[3];
            return r;
        };
        const double fd = (h.eval(rotate(dth)) - h.eval(rotate(-dth))) / (2 * dth);
        CHECK(fd == doctest::Approx(target.eval(x)).epsilon(1e-6));
    }

    // gauge: the returned h has zero fiber average
    CHECK(reeb_average(h).sup_norm(512) < 1e-12);
}

TEST_CASE("contact volume and normalizers") {
    // Vol(S^3, lambda-bar) = pi^2; unit normalizer 1/pi, constant in t
    std::vector<SphereFunction> trivial = {SphereFunction::zero(4)};
    ContactMultiplier family(4, trivial, 0.2);
    CHECK(contact_volume(family, 0.0) == doctest::Approx(kPi * kPi).epsilon(1e-12));
    for (double t : {0.0, 0.1, 0.2})
        CHECK(constant_volume_normalizer(family, t) == doctest::Approx(1.0 / kPi).epsilon(1e-12));

    // constant multiplier c: normalizer proportional to 1/c
    std::vector<SphereFunction> scaled = {SphereFunction::constant(4, 0.5)};
    ContactMultiplier cf(4, scaled, 0.2);
    const double t = 0.2; // rho_t = 1.1
    CHECK(constant_volume_normalizer(cf, t) == doctest::Approx(1.0 / (1.1 * kPi)).epsilon(1e-12));

    // generic family: series-normalized volume constant at sampled t
    std::vector<SphereFunction> generic = {z1_squared() - SphereFunction::constant(4, 0.5),
                                           re_z1_squared() * 0.3};
    ContactMultiplier gf(4, generic, 0.2);
    auto normalized = volume_normalized(gf);
    const double v0 = contact_volume(normalized, 0.0);
    for (double tt : {0.05, 0.1, 0.15, 0.2})
        CHECK(contact_volume(normalized, tt) == doctest::Approx(v0).epsilon(1e-5));
    // exact relative normalizer gives machine-level constancy
    for (double tt : {0.05, 0.1, 0.15, 0.2}) {
        const double c = relative_volume_normalizer(gf, tt);
        CHECK(contact_volume(gf.at(tt) * c) == doctest::Approx(contact_volume(gf, 0.0)).epsilon(1e-9));
    }
}

TEST_CASE("characteristic flow: sphere circle, drift, ellipsoid period") {
    BallBody ball(4, 1.0);
    GaugeCharacteristicFlow flow(ball);
    Eigen::VectorXd x0(4);
    x0 << 1, 0, 0, 0;

    // the orbit is x(t) = e^{2Jt} x0 with period pi
    auto traj = integrate_flow(flow, x0, kPi);
    CHECK((traj.states.back() - x0).norm() < 1e-9);
    CHECK(traj.max_drift < 1e-9);

    // drift gate over T = 50
    auto long_traj = integrate_flow(flow, x0, 50.0);
    CHECK(long_traj.max_drift < 1e-9);

    // ellipsoid (1, 2): the planar (x1, y1) characteristic has period pi
    EllipsoidBody ell({1.0, 2.0});
    GaugeCharacteristicFlow eflow(ell);
    auto ret = flow_to(eflow, x0, kPi);
    CHECK((ret - x0).norm() < 1e-9);
}

TEST_CASE("capacity anchors: balls and the (1,2) ellipsoid") {
    auto opts = fast_search();
    for (double delta : {0.7, 1.0, 1.3}) {
        BallBody ball(4, delta);
        auto est = a_min_estimate(ball, opts);
        CHECK(est.value == doctest::Approx(delta * delta * kPi).epsilon(1e-4 / kPi));
        CHECK(est.witness.closure_residual <= 1e-8);
        CHECK(est.value == doctest::Approx(est.witness.action).epsilon(1e-12));
    }

    EllipsoidBody ell({1.0, 2.0});
    auto est = a_min_estimate(ell, opts);
    CHECK(est.value == doctest::Approx(kPi).epsilon(1e-3 / kPi));
}

TEST_CASE("multiplier route and radial lift agree (strict contactomorphism)") {
    const double s = 0.1;
    SphereFunction rho =
        SphereFunction::constant(4, 1.0) + (z1_squared() - SphereFunction::constant(4, 0.5)) * s;

    auto opts = fast_search();
    RadialBody lift(rho - SphereFunction::constant(4, 1.0));
    const double via_lift = a_min_estimate(lift, opts).value;
    const double via_reeb = a_min_estimate_multiplier(rho, opts).value;

    CHECK(via_lift == doctest::Approx((1.0 - s / 2) * kPi).epsilon(1e-6));
    CHECK(via_reeb == doctest::Approx(via_lift).epsilon(1e-6));
}

TEST_CASE("amin upper bound (Prop3)") {
    // rho = 1: bound is the base action
    CHECK(amin_upper_bound(SphereFunction::constant(4, 1.0), kPi) == doctest::Approx(kPi));

    // rho = 1 + 0.1 (|z1|^2 - 1/2): min at |z1| = 0 gives 0.95 pi
    const double s = 0.1;
    SphereFunction rho =
        SphereFunction::constant(4, 1.0) + (z1_squared() - SphereFunction::constant(4, 0.5)) * s;
    const double bound = amin_upper_bound(rho, kPi);
    CHECK(bound == doctest::Approx(0.95 * kPi).epsilon(1e-9));

    auto est = a_min_estimate_multiplier(rho, fast_search());
    CHECK(est.value <= bound + 1e-3);
    CHECK(bound >= est.value - 1e-3);

    // non-invariant multipliers are rejected
    SphereFunction bad = SphereFunction::constant(4, 1.0) + re_z1_squared() * 0.05;
    CHECK_THROWS_AS(amin_upper_bound(bad, kPi), InvalidInputError);
}

TEST_CASE("normal form reduction") {
    // invariant order-1 family is untouched
    std::vector<SphereFunction> inv = {z1_squared()};
    ContactMultiplier f1(4, inv, 0.2);
    auto r1 = normal_form_reduce(f1, 1);
    CHECK((r1.coefficient(1) - f1.coefficient(1)).sup_norm(512) < 1e-12);

    // 1 + t Re(z1^2): order-1 average vanishes, content moves to order 2
    std::vector<SphereFunction> osc = {re_z1_squared() * 0.5, SphereFunction::zero(4)};
    ContactMultiplier f2(4, osc, 0.2);
    auto r2 = normal_form_reduce(f2, 1);
    CHECK(r2.coefficient(1).sup_norm(2048) < 1e-10);

    // contact volume is preserved by the isotopy pullback (checked at fixed t)
    for (double t : {0.05, 0.1, 0.15})
        CHECK(contact_volume(r2, t) == doctest::Approx(contact_volume(f2, t)).epsilon(1e-6));

    // invariance of A_min under the reduction step (isotopy invariance)
    auto opts = fast_search();
    const double t_probe = 0.1;
    RadialBody before(f2.at(t_probe) - SphereFunction::constant(4, 1.0));
    RadialBody after(r2.at(t_probe) - SphereFunction::constant(4, 1.0));
    const double a_before = a_min_estimate(before, opts).value;
    const double a_after = a_min_estimate(after, opts).value;
    CHECK(a_after == doctest::Approx(a_before).epsilon(2e-5));
}

TEST_CASE("formal triviality and opposite signs") {
    // the trivial family stays trivial through its order
    std::vector<SphereFunction> zero2 = {SphereFunction::zero(4), SphereFunction::zero(4)};
    ContactMultiplier trivial(4, zero2, 0.2);
    auto rep = formal_triviality_order(volume_normalized(trivial), 2);
    CHECK(rep.trivial);

    // 1 + t (|z1|^2 - 1/2): obstruction at order 1 with straddling extrema
    std::vector<SphereFunction> obst = {z1_squared() - SphereFunction::constant(4, 0.5)};
    ContactMultiplier fam(4, obst, 0.2);
    auto rep2 = formal_triviality_order(volume_normalized(fam), 1);
    CHECK(!rep2.trivial);
    CHECK(rep2.obstruction_order == 1);
    CHECK(rep2.min_average < 0.0);
    CHECK(rep2.max_average > 0.0);
    CHECK(rep2.min_average == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(rep2.max_average == doctest::Approx(0.5).epsilon(1e-6));

    // 1 + t Re(z1^2): no order-1 obstruction; order 2 resolved by reduction
    std::vector<SphereFunction> osc = {re_z1_squared() * 0.5, SphereFunction::zero(4)};
    ContactMultiplier fam2(4, osc, 0.2);
    auto rep3 = formal_triviality_order(volume_normalized(fam2), 2);
    if (!rep3.trivial) CHECK(rep3.obstruction_order == 2);
}

TEST_CASE("strict max profile for the invariant obstruction family") {
    std::vector<SphereFunction> obst = {z1_squared() - SphereFunction::constant(4, 0.5)};
    ContactMultiplier fam(4, obst, 0.15);
    auto report = strict_max_check(fam, {0.02, 0.05, 0.1}, fast_search());
    CHECK(report.decreasing);
    CHECK(report.strict_max_detected);
    for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
        CHECK(report.amin[i] < kPi);
        // Prop3 comparison within 1e-3
        CHECK(std::isfinite(report.prop3_bound[i]));
        CHECK(report.amin[i] <= report.prop3_bound[i] + 1e-3);
        CHECK(std::abs(report.amin[i] - report.prop3_bound[i]) < 1e-3);
    }
    CHECK(report.fitted_leading_order > 0.8);
}

TEST_CASE("projection monotonicity: ball and ellipsoid") {
    auto p = core::SymplecticProjector(core::SymplecticSubspace::coordinate(4, {0}));
    auto opts = fast_search();

    BallBody ball(4, 1.0);
    auto rep = projection_monotonicity(ball, p, opts);
    CHECK(rep.capacity_body == doctest::Approx(kPi).epsilon(1e-4));
    CHECK(rep.capacity_projection == doctest::Approx(kPi).epsilon(1e-4));
    CHECK(rep.margin > -1e-3);

    EllipsoidBody ell({1.0, 2.0});
    auto rep2 = projection_monotonicity(ell, p, opts);
    CHECK(rep2.capacity_projection == doctest::Approx(kPi).epsilon(1e-3));
    CHECK(rep2.margin > -1e-3);
}

TEST_CASE("hausdorff lipschitz probe: frozen ball pair") {
    BallBody b1(4, 1.0), b11(4, 1.1), same(4, 1.0);
    auto rep = hausdorff_lipschitz_probe(b1, b11, 0.5, 2.0, fast_search());
    CHECK(rep.bound_constant == doctest::Approx(48 * kPi).epsilon(1e-12));
    CHECK(rep.hausdorff == doctest::Approx(0.1).epsilon(1e-3));
    CHECK(rep.ratio == doctest::Approx(2.1 * kPi).epsilon(2e-2));
    CHECK(rep.within_bound);

    auto rep2 = hausdorff_lipschitz_probe(b1, same, 0.5, 2.0, fast_search());
    CHECK(rep2.ratio == 0.0);

    BallBody tiny(4, 0.2);
    CHECK_THROWS_AS(hausdorff_lipschitz_probe(b1, tiny, 0.5, 2.0, fast_search()), InvalidInputError);
}
