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

/**
 * Linear symplectic algebra on R^{2n} with interleaved coordinates
 * (x_1, y_1, ..., x_n, y_n):
 *
 *   omega(u, v) = sum_i (u_{x_i} v_{y_i} - u_{y_i} v_{x_i}) = u^T Omega v,
 *   J e_{x_i} = e_{y_i},  J e_{y_i} = -e_{x_i},  Omega = -J = J^T,
 *   lambda_0 = sum_i x_i dy_i (Liouville primitive of omega).
 *
 * Volume convention: Vol_{2k}(A, omega^k|_V) means the integral of the
 * literal wedge power omega^k, so a flat unit-ball section has volume pi^k.
 */

#pragma once

#include <Eigen/Dense>

#include "shadowlab/core/errors.hpp"
#include "shadowlab/core/rng.hpp"

namespace shadowlab::core {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kTolSymplectic = 1e-9; // relative Jacobian-defect gate
inline constexpr double kTolNondegenerate = 1e-9; // |Pf| gate for omega|_V

/// Matrix of omega_0, block-diagonal [[0,1],[-1,0]] per coordinate pair.
Mat omega_matrix(int two_n);

/// Standard complex structure J(x, y) = (-y, x) per pair; J^2 = -I, Omega = -J.
Mat complex_structure(int two_n);

/// omega_0(u, v). Throws InvalidInputError on dimension mismatch or odd size.
double omega_eval(const Vec& u, const Vec& v);

/// lambda_0 at base point p applied to v: sum_i p_{x_i} v_{y_i}.
double liouville_eval(const Vec& p, const Vec& v);

/// The rotation-invariant primitive (1/2) sum (x dy - y dx) at p applied to v,
/// equal to omega(p, v) / 2. Differs from lambda_0 by an exact form.
double radial_liouville_eval(const Vec& p, const Vec& v);

/// Pfaffian of an even-dimensional skew-symmetric matrix (Parlett-Reid with
/// pivoting; the input is copied). Returns 0 for odd sizes.
double pfaffian(Mat a);

/**
 * omega_0^k evaluated on 2k vectors: the literal wedge power, equal to
 * k! * Pf([omega(u_i, u_j)]). Alternating and multilinear.
 */
double omega_power(const std::vector<Vec>& frame);

/// |u_1 ^ ... ^ u_m| = sqrt(det Gram), the Euclidean m-volume of the frame.
double gram_volume(const std::vector<Vec>& frame);

/**
 * A linear symplectic isomorphism. Construction enforces
 * ||L^T Omega L - Omega||_F <= tol * ||Omega||_F.
 */
class SymplecticMatrix {
public:
    explicit SymplecticMatrix(Mat entries, double tol = kTolSymplectic);

    const Mat& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    /// Relative symplecticity defect of an arbitrary square matrix.
    static double defect(const Mat& m);

private:
    Mat m_;
};

/**
 * A 2k-dimensional subspace V on which omega_0 restricts nondegenerately.
 * Stores an orthonormalized basis; nondegeneracy is certified through the
 * Pfaffian of the skew Gram matrix Omega_B = B^T Omega B.
 */
class SymplecticSubspace {
public:
    /// Columns of `basis` span V. Throws if the span is rank-deficient, has
    /// odd dimension, or omega restricts degenerately (|Pf| <= tol).
    explicit SymplecticSubspace(const Mat& basis, double tol = kTolNondegenerate);

    int ambient_dim() const { return static_cast<int>(basis_.rows()); }
    int dim() const { return static_cast<int>(basis_.cols()); }
    int k() const { return dim() / 2; }

    /// Orthonormal basis of V (columns).
    const Mat& orthonormal_basis() const { return basis_; }

    /// Skew Gram matrix Omega_B = B^T Omega B in the orthonormal basis.
    const Mat& gram_skew() const { return gram_; }

    /// Pf(Omega_B); |pf| > 0 certifies nondegeneracy. The sign depends on the
    /// basis orientation, the absolute value does not.
    double gram_pfaffian() const { return pf_; }

    /// Euclidean-orthogonal projector B B^T onto V.
    Mat euclidean_projector() const { return basis_ * basis_.transpose(); }

    /// Standard coordinate subspace spanned by the given (x_i, y_i) pairs.
    static SymplecticSubspace coordinate(int two_n, const std::vector<int>& pairs);

private:
    Mat basis_;
    Mat gram_;
    double pf_;
};

/**
 * The projector P onto V along the symplectic orthogonal complement V^omega,
 * assembled in closed form as P = B (B^T Omega B)^{-1} B^T Omega.
 * Satisfies P^2 = P, range P = V, ker P = V^omega, and P|_V = id.
 */
class SymplecticProjector {
public:
    explicit SymplecticProjector(const SymplecticSubspace& target);

    const Mat& matrix() const { return p_; }
    const SymplecticSubspace& target() const { return target_; }
    int ambient_dim() const { return static_cast<int>(p_.rows()); }
    int k() const { return target_.k(); }

    /// Orthonormal basis of range(P^T) = Omega V. The adjoint projector P^T
    /// projects onto this subspace; it carries the shadow-boundary geometry.
    const Mat& adjoint_range_basis() const { return adjoint_range_; }

    /// Orthonormal basis of the Euclidean complement V^perp = ker(P^T).
    const Mat& vperp_basis() const { return vperp_; }

    /// Reduced residual matrix W^T (I - P^T) with W = vperp_basis(); maps
    /// z to coordinates measuring the deviation of z from range(P^T).
    const Mat& adjoint_residual_matrix() const { return residual_; }

    Vec apply(const Vec& z) const { return p_ * z; }

private:
    SymplecticSubspace target_;
    Mat p_;
    Mat adjoint_range_;
    Mat vperp_;
    Mat residual_;
};

/// V^omega = {w : omega(w, v) = 0 for all v in V}, of dimension 2n - 2k.
/// Throws InvalidInputError when V fills the whole space (complement {0}).
SymplecticSubspace symplectic_complement(const SymplecticSubspace& v);

/// Orthonormal basis of V^omega (also valid when the complement is trivial).
Mat symplectic_complement_basis(const SymplecticSubspace& v);

SymplecticProjector symplectic_projector(const SymplecticSubspace& v);

/**
 * Closed form for Vol_{2k}(P L(B_1), omega^k|_V): with M = B^T P L the matrix
 * of P L in an orthonormal basis B of V,
 *
 *   value = pi^k * |Pf(Omega_B)| * sqrt(det(M M^T)).
 *
 * Always >= pi^k for symplectic L, with equality iff L^{-1} V is J-invariant.
 */
double linear_shadow_volume(const SymplecticMatrix& l, const SymplecticSubspace& v);

/**
 * ||(I - Q) J Q||_2 with Q the Euclidean-orthogonal projector onto L^{-1} V;
 * zero exactly when L^{-1} V is J-invariant.
 */
double j_invariance_defect(const SymplecticMatrix& l, const SymplecticSubspace& v);

/// Elementary exactly-symplectic factors used to synthesize random matrices.
Mat shear_positions_matrix(int two_n, const Mat& symmetric);
Mat shear_momenta_matrix(int two_n, const Mat& symmetric);
Mat pair_rotation_matrix(int two_n, int pair, double angle);
Mat pair_scaling_matrix(int two_n, int pair, double factor);
/// Unitary mixing of pairs i and j (complex Givens rotation).
Mat pair_mixing_matrix(int two_n, int pair_i, int pair_j, double angle, double phase = 0.0);

/**
 * Random symplectic matrix as a product of `factors` random shears, pair
 * rotations and mild scalings; exactly symplectic by construction.
 */
SymplecticMatrix random_symplectic(int two_n, SplitMix64& rng, int factors = 6);

/// Random unitary (symplectic + orthogonal) matrix from pair rotations/mixings.
Mat random_unitary(int two_n, SplitMix64& rng, int factors = 8);

/// Random symplectic subspace of dimension 2k (image of a coordinate subspace
/// under a random symplectic matrix).
SymplecticSubspace random_subspace(int two_n, int k, SplitMix64& rng);

/// Random J-invariant symplectic subspace (unitary image of a coordinate one).
SymplecticSubspace random_j_invariant_subspace(int two_n, int k, SplitMix64& rng);

Vec random_unit_vector(int dim, SplitMix64& rng);

} // namespace shadowlab::core
