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

#include "shadowlab/contact/sphere_function.hpp"

namespace shadowlab::contact {

/**
 * A polynomial family of contact multipliers rho_t = 1 + sum_i t^i rho^(i)
 * on S^{2m-1}, deforming the round contact form. Positivity over the stated
 * t-range is checked by sampling at construction.
 */
class ContactMultiplier {
public:
    ContactMultiplier(int ambient_dim, std::vector<SphereFunction> coefficients, double t_range = 0.25);

    int ambient_dim() const { return dim_; }
    int m() const { return dim_ / 2; } //!< sphere S^{2m-1}
    int order() const { return static_cast<int>(coeffs_.size()); }
    double t_range() const { return t_range_; }

    /// t^i coefficient, i in [1, order()].
    const SphereFunction& coefficient(int i) const;

    SphereFunction at(double t) const;
    double eval(double t, const Vec& x) const;

private:
    int dim_;
    std::vector<SphereFunction> coeffs_;
    double t_range_;
};

/// Contact volume Vol(S^{2m-1}, rho lambda-bar) = int rho^m lambda ^ (d lambda)^{m-1},
/// evaluated exactly on the polynomial representation.
double contact_volume(const SphereFunction& rho);
double contact_volume(const ContactMultiplier& family, double t);

/// Scalar rho(t) = Vol(t)^{-1/m} rescaling the multiplier form to unit volume.
double constant_volume_normalizer(const ContactMultiplier& family, double t);

/// Scalar making the volume at t equal to the volume at t = 0 (so the base
/// form stays the round one); exact at each t.
double relative_volume_normalizer(const ContactMultiplier& family, double t);

/**
 * The family rescaled order-by-order so its contact volume is constant in t
 * through order O(t^{order+1}); keeps the constant term equal to 1.
 */
ContactMultiplier volume_normalized(const ContactMultiplier& family);

} // namespace shadowlab::contact
