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

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "shadowlab/core/errors.hpp"

namespace shadowlab::shadow {

using Vec = Eigen::VectorXd;

/// Gauss-Legendre nodes and weights on (0, 1) via Golub-Welsch.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/**
 * Chart coordinates on S^{2k-1} used by the quadrature grids.
 *
 *   k = 1: theta = (t), zeta = (cos t, sin t)
 *   k = 2: theta = (s, xi1, xi2) in Hopf form,
 *          zeta = (sqrt(1-s) cos xi1, sqrt(1-s) sin xi1,
 *                  sqrt(s)  cos xi2,  sqrt(s) sin xi2)
 *
 * with round surface measure d sigma = dt (k = 1) and
 * d sigma = (1/2) ds dxi1 dxi2 (k = 2).
 */
struct SphereParam {
    static Vec zeta(int k, const Vec& theta);
    static Vec dzeta(int k, const Vec& theta, int i);
    static Vec d2zeta(int k, const Vec& theta, int i, int j);
};

/**
 * Product quadrature on S^{2k-1}. `order` controls resolution: k = 1 uses
 * `order` equispaced circle nodes (spectral for periodic integrands); k = 2
 * uses order/2 Gauss-Legendre nodes in s and `order` uniform nodes in each
 * angle. Nodes carry both the round-measure weight (for surface integrals)
 * and the plain coordinate-cell weight (for pullback integrals over the
 * parameter cube).
 */
class QuadratureRule {
public:
    struct Node {
        Vec theta;           // chart coordinates (1 or 3 entries)
        Vec point;           // zeta(theta) in R^{2k}
        double weight_sigma; // round surface measure weight
        double weight_param; // coordinate measure weight
    };

    static QuadratureRule make(int k, int order);

    int k() const { return k_; }
    int order() const { return order_; }
    int param_dim() const { return 2 * k_ - 1; }
    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }

    /// Highest polynomial degree integrated exactly in the algebraic direction.
    int exactness_degree() const;

    QuadratureRule refined() const { return make(k_, 2 * order_); }
    QuadratureRule coarsened() const { return make(k_, order_ / 2); }

    /// Sum of round-measure weights; equals |S^{2k-1}| by construction.
    double surface_measure() const;

private:
    QuadratureRule() = default;
    int k_ = 1;
    int order_ = 0;
    std::vector<Node> nodes_;
};

} // namespace shadowlab::shadow
