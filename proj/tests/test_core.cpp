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

#include "shadowlab/core/symplectic.hpp"

using namespace shadowlab;
using namespace shadowlab::core;

namespace {

Vec vec4(double a, double b, double c, double d) {
    Vec v(4);
    v << a, b, c, d;
    return v;
}

Vec unit(int dim, int i) {
    Vec v = Vec::Zero(dim);
    v[i] = 1.0;
    return v;
}

// Brute-force complement: solve omega(w, v_j) = 0 by dense null space.
Mat complement_by_nullspace(const SymplecticSubspace& v) {
    const Mat omega = omega_matrix(v.ambient_dim());
    const Mat cond = (omega * v.orthonormal_basis()).transpose(); // rows: omega(., v_j)
    Eigen::FullPivLU<Mat> lu(cond);
    lu.setThreshold(1e-12);
    return lu.kernel();
}

bool same_span(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) return false;
    Eigen::HouseholderQR<Mat> qa(a), qb(b);
    Mat ua = qa.householderQ() * Mat::Identity(a.rows(), a.cols());
    Mat ub = qb.householderQ() * Mat::Identity(b.rows(), b.cols());
    return (ua * ua.transpose() - ub * ub.transpose()).norm() < 1e-10;
}

} // namespace

TEST_CASE("omega_eval on frozen examples") {
    // n = 2: e_{x1} vs e_{y1}
    CHECK(omega_eval(unit(4, 0), unit(4, 1)) == doctest::Approx(1.0));
    // antisymmetry on equal vectors
    CHECK(omega_eval(unit(4, 0), unit(4, 0)) == doctest::Approx(0.0));
    // direct expansion: (1*1 - 2*0) + (3*0 - 4*1) = -3
    CHECK(omega_eval(vec4(1, 2, 3, 4), vec4(0, 1, 1, 0)) == doctest::Approx(-3.0));

    Vec bad(3);
    bad << 1, 2, 3;
    CHECK_THROWS_AS(omega_eval(bad, bad), InvalidInputError);
}

TEST_CASE("omega_eval bilinearity and antisymmetry on random triples") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const int two_n = (trial % 2 == 0) ? 4 : 6;
        Vec u(two_n), v(two_n), w(two_n);
        for (int i = 0; i < two_n; ++i) {
            u[i] = rng.normal();
            v[i] = rng.normal();
            w[i] = rng.normal();
        }
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        CHECK(omega_eval(u, v) == doctest::Approx(-omega_eval(v, u)).epsilon(1e-12));
        CHECK(omega_eval(a * u + b * v, w) ==
              doctest::Approx(a * omega_eval(u, w) + b * omega_eval(v, w)).epsilon(1e-12));
    }
}

TEST_CASE("complex structure and omega matrix are compatible") {
    for (int two_n : {4, 6, 8}) {
        const Mat j = complex_structure(two_n);
        const Mat omega = omega_matrix(two_n);
        CHECK((j * j + Mat::Identity(two_n, two_n)).norm() == doctest::Approx(0.0));
        // omega(u, v) = <J u, v>
        CHECK((j.transpose() - omega).norm() == doctest::Approx(0.0));
    }
}

TEST_CASE("symplectic complement: coordinate splitting and frozen example") {
    // V = span(e_x1, e_y1) in R^4 -> span(e_x2, e_y2)
    auto v = SymplecticSubspace::coordinate(4, {0});
    auto c = symplectic_complement(v);
    CHECK(c.dim() == 2);
    Mat expected(4, 2);
    expected << 0, 0, 0, 0, 1, 0, 0, 1;
    CHECK(same_span(c.orthonormal_basis(), expected));

    // V = span(e_x1, e_y1 + e_x2): complement span((1,0,0,1), (0,0,1,0))
    Mat basis(4, 2);
    basis << 1, 0, 0, 1, 0, 1, 0, 0;
    auto v2 = SymplecticSubspace(basis);
    auto c2 = symplectic_complement(v2);
    Mat expected2(4, 2);
    expected2 << 1, 0, 0, 0, 0, 1, 1, 0;
    CHECK(same_span(c2.orthonormal_basis(), expected2));
    CHECK(same_span(c2.orthonormal_basis(), complement_by_nullspace(v2)));

    // V = R^{2n} -> trivial complement
    auto full = SymplecticSubspace(Mat::Identity(4, 4));
    CHECK(symplectic_complement(full).dim() == 0);
}

TEST_CASE("symplectic complement is a direct summand on random subspaces") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int two_n = (trial % 2 == 0) ? 4 : 6;
        const int k = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(two_n / 2 - 1 + 1));
        if (2 * k >= two_n) continue;
        auto v = random_subspace(two_n, k, rng);
        auto c = symplectic_complement(v);
        CHECK(c.dim() == two_n - 2 * k);
        Mat joint(two_n, two_n);
        joint << v.orthonormal_basis(), c.orthonormal_basis();
        Eigen::FullPivLU<Mat> lu(joint);
        CHECK(lu.rank() == two_n);
        for (int i = 0; i < v.dim(); ++i)
            for (int j = 0; j < c.dim(); ++j)
                CHECK(std::abs(omega_eval(c.orthonormal_basis().col(j), v.orthonormal_basis().col(i))) < 1e-10);
    }
}

TEST_CASE("symplectic projector: frozen examples") {
    // standard coordinate plane: P = diag(1, 1, 0, 0)
    auto v = SymplecticSubspace::coordinate(4, {0});
    auto p = symplectic_projector(v);
    Mat expected = Mat::Zero(4, 4);
    expected(0, 0) = expected(1, 1) = 1.0;
    CHECK((p.matrix() - expected).norm() < 1e-12);

    // V = span(e_x1, e_y1 + e_x2): P z = (z1 - z4, z2, z2, 0)
    Mat basis(4, 2);
    basis << 1, 0, 0, 1, 0, 1, 0, 0;
    auto p2 = symplectic_projector(SymplecticSubspace(basis));
    Vec z = vec4(3.0, -1.5, 0.25, 2.0);
    Vec pz = p2.apply(z);
    CHECK(pz[0] == doctest::Approx(z[0] - z[3]).epsilon(1e-12));
    CHECK(pz[1] == doctest::Approx(z[1]).epsilon(1e-12));
    CHECK(pz[2] == doctest::Approx(z[1]).epsilon(1e-12));
    CHECK(pz[3] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("symplectic projector: idempotence, range, kernel on random inputs") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int two_n = (trial % 2 == 0) ? 4 : 6;
        const int k = 1 + static_cast<int>(rng.next_u64() % 2);
        if (2 * k >= two_n) continue;
        auto v = random_subspace(two_n, k, rng);
        auto p = symplectic_projector(v);
        const Mat& m = p.matrix();

        CHECK((m * m - m).norm() < 1e-10);
        // identity on V
        CHECK((m * v.orthonormal_basis() - v.orthonormal_basis()).norm() < 1e-10);
        // kernel is the symplectic complement
        const Mat c = symplectic_complement_basis(v);
        CHECK((m * c).norm() < 1e-10);
        // omega(z, v) = omega(Pz, v) for v in V
        for (int r = 0; r < 5; ++r) {
            Vec z(two_n);
            for (int i = 0; i < two_n; ++i) z[i] = rng.normal();
            for (int j = 0; j < v.dim(); ++j) {
                const Vec col = v.orthonormal_basis().col(j);
                CHECK(omega_eval(z, col) == doctest::Approx(omega_eval(m * z, col)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("pfaffian basics") {
    Mat a = Mat::Zero(2, 2);
    a(0, 1) = 3.5;
    a(1, 0) = -3.5;
    CHECK(pfaffian(a) == doctest::Approx(3.5));

    CHECK(pfaffian(omega_matrix(4)) == doctest::Approx(1.0));
    CHECK(pfaffian(omega_matrix(6)) == doctest::Approx(1.0));

    // Pf(A)^2 = det(A) on random skew matrices
    SplitMix64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + 2 * static_cast<int>(rng.next_u64() % 3);
        Mat s = Mat::Zero(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                s(i, j) = rng.normal();
                s(j, i) = -s(i, j);
            }
        CHECK(pfaffian(s) * pfaffian(s) == doctest::Approx(s.determinant()).epsilon(1e-8));
    }
}

TEST_CASE("omega_power frozen examples") {
    const int two_n = 4;
    std::vector<Vec> frame = {unit(two_n, 0), unit(two_n, 1), unit(two_n, 2), unit(two_n, 3)};
    CHECK(omega_power(frame) == doctest::Approx(2.0)); // omega^2 = 2 dx1 dy1 dx2 dy2

    // repeated vector -> 0 by alternation
    std::vector<Vec> degenerate = {unit(two_n, 0), unit(two_n, 1), unit(two_n, 0), unit(two_n, 3)};
    CHECK(omega_power(degenerate) == doctest::Approx(0.0));
}

TEST_CASE("Wirtinger bound on random frames (normalized wedge power)") {
    // |omega^k / k!| <= |u_1 ^ ... ^ u_{2k}|, with equality on J-complex frames.
    SplitMix64 rng(2026);
    const double kfact[3] = {1.0, 1.0, 2.0};
    int checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = (trial % 2 == 0) ? 2 : 3;
        const int k = 1 + static_cast<int>(rng.next_u64() % 2);
        std::vector<Vec> frame;
        for (int i = 0; i < 2 * k; ++i) {
            Vec u(2 * n);
            for (int j = 0; j < 2 * n; ++j) u[j] = rng.normal();
            frame.push_back(u);
        }
        const double lhs = std::abs(omega_power(frame)) / kfact[k];
        const double rhs = gram_volume(frame);
        CHECK(lhs <= rhs + 1e-10);
        ++checked;
    }
    CHECK(checked == 10000);

    // equality case: J-frame
    std::vector<Vec> jf = {unit(4, 0), unit(4, 1), unit(4, 2), unit(4, 3)};
    CHECK(std::abs(omega_power(jf)) / 2.0 == doctest::Approx(gram_volume(jf)).epsilon(1e-12));
}

TEST_CASE("linear shadow volume: frozen values") {
    const double pi = std::numbers::pi;

    // identity in R^6, V = first two pairs -> pi^2
    auto v6 = SymplecticSubspace::coordinate(6, {0, 1});
    SymplecticMatrix id6(Mat::Identity(6, 6));
    CHECK(linear_shadow_volume(id6, v6) == doctest::Approx(pi * pi).epsilon(1e-12));

    // n = 2, k = 1, L = diag(2, 1/2, 1, 1): ellipse with semi-axes 2, 1/2 -> pi
    Mat d = Mat::Identity(4, 4);
    d(0, 0) = 2.0;
    d(1, 1) = 0.5;
    auto v4 = SymplecticSubspace::coordinate(4, {0});
    CHECK(linear_shadow_volume(SymplecticMatrix(d), v4) == doctest::Approx(pi).epsilon(1e-12));
    CHECK(j_invariance_defect(SymplecticMatrix(d), v4) < 1e-12);

    // non-symplectic L rejected
    Mat bad = Mat::Identity(4, 4) * 1.1;
    CHECK_THROWS_AS(SymplecticMatrix{bad}, InvalidInputError);
}

TEST_CASE("linear shadow volume >= pi^k on random symplectic maps") {
    SplitMix64 rng(9);
    const double pi = std::numbers::pi;
    for (int trial = 0; trial < 300; ++trial) {
        const int two_n = (trial % 2 == 0) ? 4 : 6;
        const int k = (two_n == 6 && trial % 4 == 1) ? 2 : 1;
        auto v = random_subspace(two_n, k, rng);
        auto l = random_symplectic(two_n, rng, 5 + static_cast<int>(rng.next_u64() % 4));
        const double vol = linear_shadow_volume(l, v);
        CHECK(vol >= std::pow(pi, k) * (1.0 - 1e-9));
    }
}

TEST_CASE("teor6 equality case: J-invariant L^{-1} V gives pi^k and zero defect") {
    SplitMix64 rng(77);
    const double pi = std::numbers::pi;
    for (int trial = 0; trial < 50; ++trial) {
        const int two_n = 6, k = 2;
        auto w = random_j_invariant_subspace(two_n, k, rng); // will play L^{-1} V
        auto l = random_symplectic(two_n, rng, 5);
        auto v = SymplecticSubspace(l.matrix() * w.orthonormal_basis());
        CHECK(j_invariance_defect(l, v) < 1e-8);
        CHECK(linear_shadow_volume(l, v) == doctest::Approx(pi * pi).epsilon(1e-6));
    }
}

TEST_CASE("j_invariance_defect: frozen examples") {
    // pair swap: L (x1,y1,x2,y2) -> (x2,y2,x1,y1), V = first pair
    Mat swap = Mat::Zero(4, 4);
    swap(2, 0) = swap(3, 1) = swap(0, 2) = swap(1, 3) = 1.0;
    auto v = SymplecticSubspace::coordinate(4, {0});
    CHECK(j_invariance_defect(SymplecticMatrix(swap), v) < 1e-12);

    // shear (x1, y1+x2, x2, y2+x1): strictly positive defect
    Mat s(2, 2);
    s << 0, 1, 1, 0;
    auto shear = SymplecticMatrix(shear_positions_matrix(4, s));
    CHECK(j_invariance_defect(shear, v) > 1e-3);
    CHECK(linear_shadow_volume(shear, v) > std::numbers::pi + 1e-6);
}

TEST_CASE("linear shadow volume is independent of the orthonormal basis of V") {
    SplitMix64 rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        auto v = random_subspace(6, 2, rng);
        auto l = random_symplectic(6, rng, 6);
        const double base = linear_shadow_volume(l, v);

        // remix the basis by a random 4x4 orthogonal matrix
        Mat g(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g(i, j) = rng.normal();
        Eigen::HouseholderQR<Mat> qr(g);
        Mat q = qr.householderQ() * Mat::Identity(4, 4);
        auto v2 = SymplecticSubspace(v.orthonormal_basis() * q);
        CHECK(linear_shadow_volume(l, v2) == doctest::Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("random symplectic factories stay exactly symplectic") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto l = random_symplectic(6, rng, 8);
        CHECK(SymplecticMatrix::defect(l.matrix()) < 1e-11);
        const Mat u = random_unitary(6, rng);
        CHECK(SymplecticMatrix::defect(u) < 1e-12);
        CHECK((u * u.transpose() - Mat::Identity(6, 6)).norm() < 1e-12);
        const Mat j = complex_structure(6);
        CHECK((u * j - j * u).norm() < 1e-12); // commutes with J
    }
}

TEST_CASE("counter rng is reproducible and order independent") {
    SplitMix64 a(99), b(99);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.at(static_cast<std::uint64_t>(i)));
    SplitMix64 c = a.fork(4), d = b.fork(4);
    CHECK(c.next_u64() == d.next_u64());
}
