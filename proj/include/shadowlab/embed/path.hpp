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

#pragma once

#include "shadowlab/embed/composition.hpp"

namespace shadowlab::embed {

/**
 * One t-dependent factor of an analytic path of embeddings. Every kind is
 * exactly symplectic at every t:
 *
 *   linear       a fixed symplectic matrix
 *   rotation     a product of planar/pair-mixing rotations with angles
 *                linear in t (a one-parameter unitary family)
 *   shears       potential g_t = sum_j t^j g_j with polynomial g_j
 *   translation  offset v_t = sum_j t^j v_j
 *
 * At t = 0 rotations are the identity, shear potentials may carry at most a
 * homogeneous quadratic (a linear shear), and translations vanish, so the
 * whole composition evaluates to a linear map.
 */
class PathFactor {
public:
    enum class Kind { Linear, Rotation, PairScaling, ShearPositions, ShearMomenta, Translation };

    struct RotationOp {
        bool mixing = false; // false: rotation inside pair_i, true: mixing of pair_i, pair_j
        int pair_i = 0;
        int pair_j = 0;
        double rate = 0.0;  // angle(t) = rate * t
        double phase = 0.0; // mixing phase
    };

    static PathFactor fixed_linear(core::SymplecticMatrix l);
    static PathFactor rotation(int two_n, std::vector<RotationOp> ops);
    /// diag(1 + rate t, 1 / (1 + rate t)) on the given pair; rate > -1.
    static PathFactor pair_scaling(int two_n, int pair, double rate);
    /// coefficients[j] is the t^j coefficient of the potential.
    static PathFactor shear_positions(int two_n, std::vector<Poly> coefficients);
    static PathFactor shear_momenta(int two_n, std::vector<Poly> coefficients);
    static PathFactor translation(int two_n, std::vector<Vec> coefficients);

    Kind kind() const { return kind_; }
    int dim() const { return two_n_; }
    int t_degree() const;
    PrimitiveMap at(double t) const;

private:
    PathFactor() = default;

    Kind kind_ = Kind::Linear;
    int two_n_ = 0;
    Mat matrix_;
    std::vector<RotationOp> ops_;
    std::vector<Poly> poly_coeffs_;
    std::vector<Vec> vec_coeffs_;
    int pair_ = 0;
    double rate_ = 0.0;
};

/**
 * An analytic path t -> phi_t of symplectic embeddings with phi_0 linear.
 */
class AnalyticPath {
public:
    AnalyticPath(std::vector<PathFactor> factors, double domain_radius);

    static AnalyticPath constant_linear(core::SymplecticMatrix l, double domain_radius = 2.0);

    int dim() const { return two_n_; }
    double domain_radius() const { return domain_radius_; }
    const std::vector<PathFactor>& factors() const { return factors_; }
    int t_degree() const;

    /// The embedding at parameter t in [0, 1].
    EmbeddingComposition at(double t) const;

    /// The linear map phi_0 (the path's starting point).
    Mat linear_start() const;

    /// D phi_t(0): an exactly-symplectic linear map following the path; used
    /// as the reference skeleton for chart continuation.
    Mat linear_anchor_at(double t) const;

private:
    std::vector<PathFactor> factors_;
    int two_n_;
    double domain_radius_;
};

/**
 * The blow-up family r -> phi_{r,x} of a fixed embedding, expressed as an
 * analytic path in the parameter r (coefficients polynomial in r, exactly as
 * in rescaled_family). at(0) is the linearization Dphi(x).
 */
AnalyticPath rescaled_path(const EmbeddingComposition& phi, const Vec& x);

} // namespace shadowlab::embed
