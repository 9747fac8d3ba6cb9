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

#include "shadowlab/shadow/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace shadowlab::shadow {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw InvalidInputError("gauss_legendre_01: need at least one node");
    // Golub-Welsch: eigenvalues of the Jacobi matrix for Legendre polynomials.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double b = i / std::sqrt(4.0 * i * i - 1.0);
        jac(i, i - 1) = b;
        jac(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = es.eigenvalues()(i);          // node on (-1, 1)
        const double w = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        nodes[static_cast<std::size_t>(i)] = 0.5 * (x + 1.0);
        weights[static_cast<std::size_t>(i)] = 0.5 * w;
    }
}

Vec SphereParam::zeta(int k, const Vec& theta) {
    if (k == 1) {
        Vec z(2);
        z << std::cos(theta[0]), std::sin(theta[0]);
        return z;
    }
    if (k == 2) {
        const double s = theta[0], a = std::sqrt(1.0 - s), b = std::sqrt(s);
        Vec z(4);
        z << a * std::cos(theta[1]), a * std::sin(theta[1]), b * std::cos(theta[2]), b * std::sin(theta[2]);
        return z;
    }
    throw InvalidInputError("SphereParam: only k in {1, 2} is supported");
}

Vec SphereParam::dzeta(int k, const Vec& theta, int i) {
    if (k == 1) {
        Vec z(2);
        z << -std::sin(theta[0]), std::cos(theta[0]);
        return z;
    }
    if (k == 2) {
        const double s = theta[0], a = std::sqrt(1.0 - s), b = std::sqrt(s);
        const double c1 = std::cos(theta[1]), s1 = std::sin(theta[1]);
        const double c2 = std::cos(theta[2]), s2 = std::sin(theta[2]);
        Vec z = Vec::Zero(4);
        switch (i) {
        case 0:
            z << -c1 / (2 * a), -s1 / (2 * a), c2 / (2 * b), s2 / (2 * b);
            return z;
        case 1:
            z << -a * s1, a * c1, 0, 0;
            return z;
        case 2:
            z << 0, 0, -b * s2, b * c2;
            return z;
        }
    }
    throw InvalidInputError("SphereParam::dzeta: bad arguments");
}

Vec SphereParam::d2zeta(int k, const Vec& theta, int i, int j) {
    if (k == 1) {
        Vec z(2);
        z << -std::cos(theta[0]), -std::sin(theta[0]);
        return z;
    }
    if (k == 2) {
        const double s = theta[0], a = std::sqrt(1.0 - s), b = std::sqrt(s);
        const double c1 = std::cos(theta[1]), s1 = std::sin(theta[1]);
        const double c2 = std::cos(theta[2]), s2 = std::sin(theta[2]);
        Vec z = Vec::Zero(4);
        const int lo = std::min(i, j), hi = std::max(i, j);
        if (lo == 0 && hi == 0) {
            z << -c1 / (4 * a * a * a), -s1 / (4 * a * a * a), -c2 / (4 * b * b * b), -s2 / (4 * b * b * b);
        } else if (lo == 0 && hi == 1) {
            z << s1 / (2 * a), -c1 / (2 * a), 0, 0;
        } else if (lo == 0 && hi == 2) {
            z << 0, 0, -s2 / (2 * b), c2 / (2 * b);
        } else if (lo == 1 && hi == 1) {
            z << -a * c1, -a * s1, 0, 0;
        } else if (lo == 2 && hi == 2) {
            z << 0, 0, -b * c2, -b * s2;
        } // mixed angles: zero
        return z;
    }
    throw InvalidInputError("SphereParam::d2zeta: bad arguments");
}

QuadratureRule QuadratureRule::make(int k, int order) {
    if (k != 1 && k != 2) throw InvalidInputError("QuadratureRule: only k in {1, 2} is supported");
    if (order < 4) throw InvalidInputError("QuadratureRule: order too small");
    const double two_pi = 2.0 * std::numbers::pi;

    QuadratureRule rule;
    rule.k_ = k;
    rule.order_ = order;

    if (k == 1) {
        rule.nodes_.reserve(static_cast<std::size_t>(order));
        const double w = two_pi / order;
        for (int j = 0; j < order; ++j) {
            Node n;
            n.theta = Vec::Constant(1, w * j);
            n.point = SphereParam::zeta(1, n.theta);
            n.weight_sigma = w;
            n.weight_param = w;
            rule.nodes_.push_back(std::move(n));
        }
        return rule;
    }

    const int ns = std::max(2, order / 2);
    std::vector<double> snodes, sweights;
    gauss_legendre_01(ns, snodes, sweights);
    const double wa = two_pi / order;
    rule.nodes_.reserve(static_cast<std::size_t>(ns) * order * order);
    for (int is = 0; is < ns; ++is)
        for (int i1 = 0; i1 < order; ++i1)
            for (int i2 = 0; i2 < order; ++i2) {
                Node n;
                n.theta = Vec(3);
                n.theta << snodes[static_cast<std::size_t>(is)], wa * i1, wa * i2;
                n.point = SphereParam::zeta(2, n.theta);
                n.weight_param = sweights[static_cast<std::size_t>(is)] * wa * wa;
                n.weight_sigma = 0.5 * n.weight_param;
                rule.nodes_.push_back(std::move(n));
            }
    return rule;
}

int QuadratureRule::exactness_degree() const { return k_ == 1 ? order_ - 1 : order_ - 1; }

double QuadratureRule::surface_measure() const {
    double s = 0.0;
    for (const auto& n : nodes_) s += n.weight_sigma;
    return s;
}

} // namespace shadowlab::shadow
