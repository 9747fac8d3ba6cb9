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

#include <Eigen/Dense>

#include "shadowlab/core/rng.hpp"
#include "shadowlab/geom/polynomial.hpp"

namespace shadowlab::contact {

using Vec = Eigen::VectorXd;
using geom::Poly;

/**
 * A real function on the round sphere S^{2m-1} subset of R^{2m}, stored as a
 * polynomial in the ambient coordinates (the representation is not unique on
 * the sphere; only restricted values matter).
 */
class SphereFunction {
public:
    SphereFunction() = default;
    SphereFunction(int ambient_dim, Poly p);

    static SphereFunction constant(int ambient_dim, double value);
    static SphereFunction zero(int ambient_dim) { return constant(ambient_dim, 0.0); }

    int ambient_dim() const { return dim_; }
    const Poly& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }

    double eval(const Vec& x) const;
    Vec ambient_gradient(const Vec& x) const;

    /// Exact integral over the round sphere (surface measure).
    double integral() const;
    double mean() const { return integral() / surface_measure(); }
    double surface_measure() const;

    /// Sampled extrema with projected-gradient polish; accuracy well below
    /// the 1e-3 comparisons these feed, deterministic in the seed.
    double sampled_min(int samples = 4096, std::uint64_t seed = 11) const;
    double sampled_max(int samples = 4096, std::uint64_t seed = 11) const;
    double sup_norm(int samples = 4096, std::uint64_t seed = 11) const;

    SphereFunction operator+(const SphereFunction& o) const;
    SphereFunction operator-(const SphereFunction& o) const;
    SphereFunction operator*(double s) const;
    SphereFunction operator*(const SphereFunction& o) const;

private:
    double polished_extremum(bool maximize, int samples, std::uint64_t seed) const;

    int dim_ = 0;
    Poly poly_;
    std::vector<Poly> grad_;
};

} // namespace shadowlab::contact
