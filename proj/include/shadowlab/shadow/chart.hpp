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

#include "shadowlab/embed/path.hpp"
#include "shadowlab/shadow/quadrature.hpp"

namespace shadowlab::shadow {

using core::Mat;
using core::SymplecticMatrix;
using core::SymplecticProjector;
using embed::AnalyticPath;
using embed::EmbeddingComposition;

/**
 * The singular residual F(x) = (I - P^*)(D phi(x)^*)^{-1}[x], expressed in an
 * orthonormal basis of V^perp (so the result has 2n - 2k entries). Its zero
 * set on the unit sphere is the preimage S of the shadow boundary: for
 * oblique symplectic projectors the critical set sits over range(P^*) =
 * Omega V, which reduces to the textbook orthogonal-projector formula when V
 * is a coordinate subspace.
 */
Eigen::VectorXd singular_residual(const EmbeddingComposition& phi, const SymplecticProjector& p,
                                  const Eigen::VectorXd& x);

/**
 * The reference parametrization sigma(theta) = normalize(A zeta(theta)) of a
 * linear shadow boundary, where A = L^T C and C is an orthonormal basis of
 * Omega V. Provides exact first and second derivatives for the continuation
 * slices and the seed tangent frames.
 */
class SeedFormula {
public:
    SeedFormula(const Mat& linear, const SymplecticProjector& p);

    int k() const { return k_; }
    Eigen::VectorXd sigma(const Vec& theta) const;
    /// sigma plus its first partials (columns of `jac`).
    void first(const Vec& theta, Eigen::VectorXd& sigma, Mat& jac) const;
    /// sigma, first partials, and second partials d2[i][j].
    void second(const Vec& theta, Eigen::VectorXd& sigma, Mat& jac,
                std::vector<std::vector<Eigen::VectorXd>>& d2) const;

private:
    Mat a_;
    int k_;
};

/// One corrected boundary point with its parametrization partials.
struct ChartNode {
    Eigen::VectorXd point;                 // c(theta) on the unit sphere
    std::vector<Eigen::VectorXd> tangents; // dc/dtheta_i, i < 2k-1
};

/**
 * A parametrized shadow-boundary chart S^{2k-1} -> S_t subset of the unit
 * sphere, stored as values and tangent frames at the quadrature nodes.
 */
class ShadowBoundaryChart {
public:
    ShadowBoundaryChart(QuadratureRule rule, std::vector<ChartNode> nodes, double t_value,
                        double residual_max, int max_newton_iters);

    const QuadratureRule& rule() const { return rule_; }
    const std::vector<ChartNode>& nodes() const { return nodes_; }
    double t_value() const { return t_value_; }
    double residual_max() const { return residual_max_; }
    int max_newton_iters() const { return max_newton_iters_; }

    /// Smallest Gram determinant of the normalized tangent frame over nodes.
    double min_frame_gram() const;

private:
    QuadratureRule rule_;
    std::vector<ChartNode> nodes_;
    double t_value_;
    double residual_max_;
    int max_newton_iters_;
};

struct TraceOptions {
    double tol_newton = 1e-10; // max-norm gate on the reduced residual
    int max_iterations = 40;
    double step_cap = 0.21;   // largest allowed t - t_prev
    double rank_tol = 1e-10;  // frame Gram determinant abort threshold
    double fd_step = 1e-6;    // residual-Jacobian finite-difference step
};

/**
 * Exact chart of a linear shadow boundary: c(theta) = normalize(L^T C zeta).
 * Residuals vanish to round-off by construction.
 */
ShadowBoundaryChart seed_chart(const SymplecticMatrix& l, const SymplecticProjector& p,
                               const QuadratureRule& rule);

/**
 * Newton continuation of `prev` to path parameter t. Every node is corrected
 * inside the slice anchored at the evolving linear skeleton D phi_t(0);
 * Newton divergence at any node aborts with the node index (the experiment
 * has left the local regime and must shrink its step or stop).
 */
ShadowBoundaryChart trace_chart(const AnalyticPath& path, const SymplecticProjector& p, double t,
                                const ShadowBoundaryChart& prev, const TraceOptions& opts = {});

} // namespace shadowlab::shadow
