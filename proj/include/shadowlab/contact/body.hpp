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

#include "shadowlab/contact/sphere_function.hpp"
#include "shadowlab/embed/composition.hpp"

namespace shadowlab::contact {

/**
 * A smooth convex bounded domain given through the square of its gauge
 * function, H = G^2 (2-homogeneous, H = 1 on the boundary). Characteristics
 * of the boundary are orbits of J grad H on the unit level; in this
 * parametrization the action of a closed characteristic equals its period.
 */
class ConvexBody {
public:
    virtual ~ConvexBody() = default;
    virtual int dim() const = 0;
    virtual double gauge2(const Vec& z) const = 0;
    virtual Vec gauge2_gradient(const Vec& z) const = 0;

    /// z scaled onto the boundary: z / G(z).
    Vec to_boundary(const Vec& z) const;

    /// Radial function r(u) = 1 / G(u) for |u| = 1.
    double radial(const Vec& u) const;

    /// Support function h(u) = max_{x in body} <u, x>, by sampled ascent.
    double support(const Vec& u, int samples = 512, std::uint64_t seed = 3) const;
};

/// Ball of radius `radius`: H = |z|^2 / radius^2.
class BallBody final : public ConvexBody {
public:
    BallBody(int dim, double radius);
    int dim() const override { return dim_; }
    double gauge2(const Vec& z) const override { return z.squaredNorm() / (radius_ * radius_); }
    Vec gauge2_gradient(const Vec& z) const override { return 2.0 * z / (radius_ * radius_); }
    double radius() const { return radius_; }

private:
    int dim_;
    double radius_;
};

/// Ellipsoid sum (x_i^2 + y_i^2) / a_i^2 = 1 with per-pair semi-axes a_i.
class EllipsoidBody final : public ConvexBody {
public:
    EllipsoidBody(std::vector<double> semi_axes);
    int dim() const override { return 2 * static_cast<int>(axes_.size()); }
    double gauge2(const Vec& z) const override;
    Vec gauge2_gradient(const Vec& z) const override;
    const std::vector<double>& semi_axes() const { return axes_; }

private:
    std::vector<double> axes_;
};

/**
 * The radial hypersurface M_{sqrt(1+f)} = { sqrt(1 + f(u)) u : |u| = 1 }
 * bounding { z : |z|^2 <= (1 + f(z/|z|)) }; requires 1 + f > 0. Convexity
 * within the pinch is the caller's responsibility (see convexity_defect).
 */
class RadialBody final : public ConvexBody {
public:
    explicit RadialBody(SphereFunction f);
    int dim() const override { return f_.ambient_dim(); }
    double gauge2(const Vec& z) const override;
    Vec gauge2_gradient(const Vec& z) const override;
    const SphereFunction& f() const { return f_; }

private:
    SphereFunction f_;
};

/// Smallest sampled eigenvalue of the Hessian of G^2/2 on the boundary;
/// positive values certify (sampled) convexity.
double convexity_defect(const ConvexBody& body, int samples = 400, std::uint64_t seed = 5);

/// Verifies B_delta subset body subset B_Delta by radial sampling.
bool pinched(const ConvexBody& body, double delta, double Delta, int samples = 2048,
             std::uint64_t seed = 9);

/// Hausdorff distance via support functions, max over sampled directions
/// (exact for convex bodies as the grids refine).
double hausdorff_distance(const ConvexBody& a, const ConvexBody& b, int directions = 2048,
                          std::uint64_t seed = 13);

/**
 * The radial stretch w -> r(w/|w|) w mapping the closed unit ball onto the
 * body; feeds the projection machinery of the shadow oracle.
 */
class BodyStretchMap final : public embed::DifferentiableMap {
public:
    explicit BodyStretchMap(const ConvexBody& body) : body_(body) {}
    int dim() const override { return body_.dim(); }
    Vec eval(const Vec& w) const override;
    core::Mat jacobian(const Vec& w) const override;

private:
    const ConvexBody& body_;
};

} // namespace shadowlab::contact
