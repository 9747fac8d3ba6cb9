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

#include "shadowlab/core/symplectic.hpp"

#include <cmath>
#include <numbers>

namespace shadowlab::core {

namespace {

void require_even_dim(int two_n, const char* who) {
    if (two_n < 4 || two_n % 2 != 0)
        throw InvalidInputError(std::string(who) + ": ambient dimension must be even and >= 4");
}

/// Full orthonormal complement of the column span of A (2n x m, m possibly 0).
Mat orthogonal_complement(const Mat& a) {
    const int n = static_cast<int>(a.rows());
    const int m = static_cast<int>(a.cols());
    if (m == 0) return Mat::Identity(n, n);
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ() * Mat::Identity(n, n);
    return q.rightCols(n - m);
}

Mat orthonormalize(const Mat& a) {
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ() * Mat::Identity(a.rows(), a.cols());
    return q;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

Mat omega_matrix(int two_n) {
    require_even_dim(two_n, "omega_matrix");
    Mat o = Mat::Zero(two_n, two_n);
    for (int i = 0; i + 1 < two_n; i += 2) {
        o(i, i + 1) = 1.0;
        o(i + 1, i) = -1.0;
    }
    return o;
}

Mat complex_structure(int two_n) {
    require_even_dim(two_n, "complex_structure");
    Mat j = Mat::Zero(two_n, two_n);
    for (int i = 0; i + 1 < two_n; i += 2) {
        j(i + 1, i) = 1.0;  // J e_x = e_y
        j(i, i + 1) = -1.0; // J e_y = -e_x
    }
    return j;
}

double omega_eval(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) throw InvalidInputError("omega_eval: dimension mismatch");
    if (u.size() % 2 != 0) throw InvalidInputError("omega_eval: odd dimension");
    double s = 0.0;
    for (int i = 0; i + 1 < u.size(); i += 2) s += u[i] * v[i + 1] - u[i + 1] * v[i];
    return s;
}

double liouville_eval(const Vec& p, const Vec& v) {
    if (p.size() != v.size() || p.size() % 2 != 0)
        throw InvalidInputError("liouville_eval: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i + 1 < p.size(); i += 2) s += p[i] * v[i + 1];
    return s;
}

double radial_liouville_eval(const Vec& p, const Vec& v) { return 0.5 * omega_eval(p, v); }

double pfaffian(Mat a) {
    const int n = static_cast<int>(a.rows());
    if (n != a.cols()) throw InvalidInputError("pfaffian: matrix not square");
    if (n == 0) return 1.0;
    if (n % 2 == 1) return 0.0;

    // Parlett-Reid tridiagonalization with greedy pivoting.
    double result = 1.0;
    for (int k = 0; k + 1 < n; k += 2) {
        int kp = k + 1;
        for (int i = k + 2; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;

        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            result = -result;
        }

        const double pivot = a(k, k + 1);
        if (pivot == 0.0) return 0.0;
        result *= pivot;

        if (k + 2 < n) {
            Eigen::VectorXd tau = a.row(k).segment(k + 2, n - k - 2) / pivot;
            auto block = a.block(k + 2, k + 2, n - k - 2, n - k - 2);
            Eigen::VectorXd col = a.col(k + 1).segment(k + 2, n - k - 2);
            block += tau * col.transpose() - col * tau.transpose();
        }
    }
    return result;
}

double omega_power(const std::vector<Vec>& frame) {
    const int m = static_cast<int>(frame.size());
    if (m == 0 || m % 2 != 0) throw InvalidInputError("omega_power: need an even number of vectors");
    const auto dim = frame.front().size();
    Mat s(m, m);
    for (int i = 0; i < m; ++i) {
        if (frame[i].size() != dim) throw InvalidInputError("omega_power: dimension mismatch");
        s(i, i) = 0.0;
        for (int j = i + 1; j < m; ++j) {
            const double w = omega_eval(frame[i], frame[j]);
            s(i, j) = w;
            s(j, i) = -w;
        }
    }
    return factorial(m / 2) * pfaffian(s);
}

double gram_volume(const std::vector<Vec>& frame) {
    if (frame.empty()) return 1.0;
    Mat a(frame.front().size(), frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) a.col(static_cast<int>(i)) = frame[i];
    Eigen::JacobiSVD<Mat> svd(a);
    double vol = 1.0;
    for (int i = 0; i < svd.singularValues().size(); ++i) vol *= svd.singularValues()[i];
    return vol;
}

SymplecticMatrix::SymplecticMatrix(Mat entries, double tol) : m_(std::move(entries)) {
    require_even_dim(static_cast<int>(m_.rows()), "SymplecticMatrix");
    if (m_.rows() != m_.cols()) throw InvalidInputError("SymplecticMatrix: not square");
    const double d = defect(m_);
    if (!(d <= tol)) throw InvalidInputError("SymplecticMatrix: symplecticity defect " + std::to_string(d));
}

double SymplecticMatrix::defect(const Mat& m) {
    const Mat omega = omega_matrix(static_cast<int>(m.rows()));
    return (m.transpose() * omega * m - omega).norm() / omega.norm();
}

SymplecticSubspace::SymplecticSubspace(const Mat& basis, double tol) {
    const int two_n = static_cast<int>(basis.rows());
    require_even_dim(two_n, "SymplecticSubspace");
    const int d = static_cast<int>(basis.cols());
    if (d % 2 != 0) throw InvalidInputError("SymplecticSubspace: dimension must be even");
    if (d == 0) {
        basis_ = Mat::Zero(two_n, 0);
        gram_ = Mat::Zero(0, 0);
        pf_ = 1.0;
        return;
    }
    if (d > two_n) throw InvalidInputError("SymplecticSubspace: more basis vectors than ambient dimension");

    Eigen::ColPivHouseholderQR<Mat> rank_qr(basis);
    rank_qr.setThreshold(1e-12);
    if (rank_qr.rank() < d) throw InvalidInputError("SymplecticSubspace: basis is rank deficient");

    basis_ = orthonormalize(basis);
    const Mat omega = omega_matrix(two_n);
    gram_ = basis_.transpose() * omega * basis_;
    gram_ = 0.5 * (gram_ - gram_.transpose()).eval(); // exact skew symmetry
    pf_ = pfaffian(gram_);
    if (std::abs(pf_) <= tol)
        throw InvalidInputError("SymplecticSubspace: omega restricts degenerately (|Pf| = " +
                                std::to_string(std::abs(pf_)) + ")");
}

SymplecticSubspace SymplecticSubspace::coordinate(int two_n, const std::vector<int>& pairs) {
    require_even_dim(two_n, "SymplecticSubspace::coordinate");
    Mat basis = Mat::Zero(two_n, 2 * static_cast<int>(pairs.size()));
    int c = 0;
    for (int p : pairs) {
        if (p < 0 || 2 * p + 1 >= two_n)
            throw InvalidInputError("SymplecticSubspace::coordinate: pair index out of range");
        basis(2 * p, c++) = 1.0;
        basis(2 * p + 1, c++) = 1.0;
    }
    return SymplecticSubspace(basis);
}

SymplecticProjector::SymplecticProjector(const SymplecticSubspace& target) : target_(target) {
    const int two_n = target.ambient_dim();
    const Mat& b = target.orthonormal_basis();
    const Mat omega = omega_matrix(two_n);
    // P = B (B^T Omega B)^{-1} B^T Omega: range V, kernel V^omega, identity on V.
    Eigen::PartialPivLU<Mat> lu(target.gram_skew());
    p_ = b * lu.solve(b.transpose() * omega);
    adjoint_range_ = omega * b; // Omega is orthogonal, so this basis already is
    vperp_ = orthogonal_complement(b);
    residual_ = vperp_.transpose() * (Mat::Identity(two_n, two_n) - p_.transpose());
}

SymplecticSubspace symplectic_complement(const SymplecticSubspace& v) {
    if (v.dim() == v.ambient_dim()) {
        return SymplecticSubspace(Mat::Zero(v.ambient_dim(), 0));
    }
    return SymplecticSubspace(symplectic_complement_basis(v));
}

Mat symplectic_complement_basis(const SymplecticSubspace& v) {
    // V^omega = (Omega V)^perp in the Euclidean sense.
    const Mat omega = omega_matrix(v.ambient_dim());
    return orthogonal_complement(omega * v.orthonormal_basis());
}

SymplecticProjector symplectic_projector(const SymplecticSubspace& v) {
    return SymplecticProjector(v);
}

double linear_shadow_volume(const SymplecticMatrix& l, const SymplecticSubspace& v) {
    if (l.dim() != v.ambient_dim()) throw InvalidInputError("linear_shadow_volume: dimension mismatch");
    const SymplecticProjector p(v);
    const Mat m = v.orthonormal_basis().transpose() * (p.matrix() * l.matrix());
    Eigen::JacobiSVD<Mat> svd(m);
    double stretch = 1.0;
    for (int i = 0; i < svd.singularValues().size(); ++i) stretch *= svd.singularValues()[i];
    return std::pow(std::numbers::pi, v.k()) * std::abs(v.gram_pfaffian()) * stretch;
}

double j_invariance_defect(const SymplecticMatrix& l, const SymplecticSubspace& v) {
    if (l.dim() != v.ambient_dim()) throw InvalidInputError("j_invariance_defect: dimension mismatch");
    const int two_n = l.dim();
    Eigen::PartialPivLU<Mat> lu(l.matrix());
    const Mat w = orthonormalize(lu.solve(v.orthonormal_basis())); // basis of L^{-1} V
    const Mat q = w * w.transpose();
    const Mat j = complex_structure(two_n);
    const Mat defect = (Mat::Identity(two_n, two_n) - q) * j * q;
    Eigen::JacobiSVD<Mat> svd(defect);
    return svd.singularValues()[0];
}

Mat shear_positions_matrix(int two_n, const Mat& symmetric) {
    require_even_dim(two_n, "shear_positions_matrix");
    const int n = two_n / 2;
    if (symmetric.rows() != n || symmetric.cols() != n)
        throw InvalidInputError("shear_positions_matrix: potential Hessian must be n x n");
    Mat m = Mat::Identity(two_n, two_n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(2 * i + 1, 2 * j) = 0.5 * (symmetric(i, j) + symmetric(j, i));
    return m;
}

Mat shear_momenta_matrix(int two_n, const Mat& symmetric) {
    require_even_dim(two_n, "shear_momenta_matrix");
    const int n = two_n / 2;
    if (symmetric.rows() != n || symmetric.cols() != n)
        throw InvalidInputError("shear_momenta_matrix: potential Hessian must be n x n");
    Mat m = Mat::Identity(two_n, two_n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(2 * i, 2 * j + 1) = 0.5 * (symmetric(i, j) + symmetric(j, i));
    return m;
}

Mat pair_rotation_matrix(int two_n, int pair, double angle) {
    require_even_dim(two_n, "pair_rotation_matrix");
    Mat m = Mat::Identity(two_n, two_n);
    const double c = std::cos(angle), s = std::sin(angle);
    const int i = 2 * pair;
    m(i, i) = c;
    m(i, i + 1) = -s;
    m(i + 1, i) = s;
    m(i + 1, i + 1) = c;
    return m;
}

Mat pair_scaling_matrix(int two_n, int pair, double factor) {
    require_even_dim(two_n, "pair_scaling_matrix");
    if (factor == 0.0) throw InvalidInputError("pair_scaling_matrix: zero factor");
    Mat m = Mat::Identity(two_n, two_n);
    m(2 * pair, 2 * pair) = factor;
    m(2 * pair + 1, 2 * pair + 1) = 1.0 / factor;
    return m;
}

Mat pair_mixing_matrix(int two_n, int pair_i, int pair_j, double angle, double phase) {
    require_even_dim(two_n, "pair_mixing_matrix");
    if (pair_i == pair_j) throw InvalidInputError("pair_mixing_matrix: pairs must differ");
    // Complex Givens rotation acting C-linearly on (z_i, z_j); each complex
    // entry a + ib realifies to the 2x2 block [[a, -b], [b, a]].
    const double c = std::cos(angle), s = std::sin(angle);
    const double a = std::cos(phase), b = std::sin(phase);
    Mat m = Mat::Identity(two_n, two_n);
    const int i = 2 * pair_i, j = 2 * pair_j;
    m(i, i) = c;
    m(i + 1, i + 1) = c;
    m(j, j) = c;
    m(j + 1, j + 1) = c;
    // entry (i, j) = -s * conj(e^{i phase}), entry (j, i) = s * e^{i phase}
    m(i, j) = -s * a;
    m(i, j + 1) = -s * b;
    m(i + 1, j) = s * b;
    m(i + 1, j + 1) = -s * a;
    m(j, i) = s * a;
    m(j, i + 1) = -s * b;
    m(j + 1, i) = s * b;
    m(j + 1, i + 1) = s * a;
    return m;
}

SymplecticMatrix random_symplectic(int two_n, SplitMix64& rng, int factors) {
    require_even_dim(two_n, "random_symplectic");
    const int n = two_n / 2;
    Mat m = Mat::Identity(two_n, two_n);
    for (int f = 0; f < factors; ++f) {
        switch (rng.next_u64() % 4) {
        case 0: {
            Mat s(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) s(i, j) = s(j, i) = rng.uniform(-0.6, 0.6);
            m = shear_positions_matrix(two_n, s) * m;
            break;
        }
        case 1: {
            Mat s(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) s(i, j) = s(j, i) = rng.uniform(-0.6, 0.6);
            m = shear_momenta_matrix(two_n, s) * m;
            break;
        }
        case 2: {
            const int p = static_cast<int>(rng.next_u64() % n);
            m = pair_rotation_matrix(two_n, p, rng.uniform(0.0, 6.283185307179586)) * m;
            break;
        }
        default: {
            const int p = static_cast<int>(rng.next_u64() % n);
            m = pair_scaling_matrix(two_n, p, std::exp(rng.uniform(-0.4, 0.4))) * m;
            break;
        }
        }
    }
    return SymplecticMatrix(m);
}

Mat random_unitary(int two_n, SplitMix64& rng, int factors) {
    require_even_dim(two_n, "random_unitary");
    const int n = two_n / 2;
    Mat m = Mat::Identity(two_n, two_n);
    for (int f = 0; f < factors; ++f) {
        if (n >= 2 && rng.next_u64() % 2 == 0) {
            int i = static_cast<int>(rng.next_u64() % n);
            int j = static_cast<int>(rng.next_u64() % n);
            if (i == j) j = (j + 1) % n;
            m = pair_mixing_matrix(two_n, i, j, rng.uniform(0.0, 6.283185307179586),
                                   rng.uniform(0.0, 6.283185307179586)) *
                m;
        } else {
            const int p = static_cast<int>(rng.next_u64() % n);
            m = pair_rotation_matrix(two_n, p, rng.uniform(0.0, 6.283185307179586)) * m;
        }
    }
    return m;
}

SymplecticSubspace random_subspace(int two_n, int k, SplitMix64& rng) {
    if (k < 1 || 2 * k > two_n) throw InvalidInputError("random_subspace: invalid k");
    std::vector<int> pairs(k);
    for (int i = 0; i < k; ++i) pairs[i] = i;
    const SymplecticSubspace seed = SymplecticSubspace::coordinate(two_n, pairs);
    const SymplecticMatrix l = random_symplectic(two_n, rng);
    return SymplecticSubspace(l.matrix() * seed.orthonormal_basis());
}

SymplecticSubspace random_j_invariant_subspace(int two_n, int k, SplitMix64& rng) {
    if (k < 1 || 2 * k > two_n) throw InvalidInputError("random_j_invariant_subspace: invalid k");
    std::vector<int> pairs(k);
    for (int i = 0; i < k; ++i) pairs[i] = i;
    const SymplecticSubspace seed = SymplecticSubspace::coordinate(two_n, pairs);
    const Mat u = random_unitary(two_n, rng);
    return SymplecticSubspace(u * seed.orthonormal_basis());
}

Vec random_unit_vector(int dim, SplitMix64& rng) {
    Vec v(dim);
    for (;;) {
        for (int i = 0; i < dim; ++i) v[i] = rng.normal();
        const double norm = v.norm();
        if (norm > 1e-8) return v / norm;
    }
}

} // namespace shadowlab::core
