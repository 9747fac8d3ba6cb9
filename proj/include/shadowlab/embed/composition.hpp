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

#include "shadowlab/embed/primitive.hpp"

namespace shadowlab::embed {

/// Anything the shadow machinery can point at: a smooth map with a Jacobian.
class DifferentiableMap {
public:
    virtual ~DifferentiableMap() = default;
    virtual int dim() const = 0;
    virtual Vec eval(const Vec& x) const = 0;
    virtual Mat jacobian(const Vec& x) const = 0;
};

/**
 * An analytic symplectic embedding represented as an ordered composition of
 * exactly-symplectic primitive factors, applied first factor first.
 */
class EmbeddingComposition final : public DifferentiableMap {
public:
    EmbeddingComposition(std::vector<PrimitiveMap> factors, double domain_radius);

    static EmbeddingComposition identity(int two_n, double domain_radius = 2.0);

    int dim() const override { return two_n_; }
    double domain_radius() const { return domain_radius_; }
    const std::vector<PrimitiveMap>& factors() const { return factors_; }

    /// Throws InvalidInputError when |x| exceeds the certified domain radius.
    Vec eval(const Vec& x) const override;
    Mat jacobian(const Vec& x) const override;

    /// (D phi(x)^*)^{-1} w via factor-by-factor adjoint solves.
    Vec adjoint_inverse_apply(const Vec& x, const Vec& w) const;

    /// Max over random sample points in the domain of ||Dphi^T Omega Dphi - Omega||_F.
    double symplecticity_residual(int sample_count, SplitMix64& rng) const;

    /**
     * Largest radius R <= max_radius with the sampled ball-norm certificate
     * ||Dphi(x) - Dphi(0)|| <= sigma_min(Dphi(0)) / 2 for |x| <= R, which
     * guarantees injectivity on B_R.
     */
    static double certify_injectivity_radius(const std::vector<PrimitiveMap>& factors, double max_radius,
                                             SplitMix64& rng, int samples_per_radius = 160);

private:
    void check_domain(const Vec& x) const;

    std::vector<PrimitiveMap> factors_;
    int two_n_;
    double domain_radius_;
};

/**
 * The exact blow-up family phi_{r,x}(y) = (phi(x + r y) - phi(x)) / r for
 * r > 0 and Dphi(x) at r = 0, realized factor-by-factor by Taylor-shifting
 * each polynomial potential at the orbit of x and regrouping coefficients by
 * their homogeneity degree; there is no numerical division by r.
 * Throws when r >= domain_radius(phi) - |x|.
 */
EmbeddingComposition rescaled_family(const EmbeddingComposition& phi, const Vec& x, double r);

/// The window map y -> phi(x + r y) as a plain differentiable map (r > 0);
/// used by volume oracles to probe phi on the ball B_r(x) directly.
class AffineWindowMap final : public DifferentiableMap {
public:
    AffineWindowMap(const EmbeddingComposition& phi, Vec center, double r);
    int dim() const override { return phi_.dim(); }
    Vec eval(const Vec& y) const override { return phi_.eval(center_ + r_ * y); }
    Mat jacobian(const Vec& y) const override { return r_ * phi_.jacobian(center_ + r_ * y); }

private:
    const EmbeddingComposition& phi_;
    Vec center_;
    double r_;
};

} // namespace shadowlab::embed
