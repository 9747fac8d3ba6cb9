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

#include "shadowlab/contact/multiplier.hpp"
#include "shadowlab/contact/orbits.hpp"
#include "shadowlab/core/symplectic.hpp"

namespace shadowlab::contact {

/**
 * Upper bound (min rho) * A_min(base) for a fiber-invariant positive
 * multiplier rho: the base orbit through the argmin of rho stays a Reeb
 * orbit of rho alpha. Rejects non-invariant multipliers.
 */
double amin_upper_bound(const SphereFunction& rho, double base_amin);

struct StrictMaxReport {
    std::vector<double> t_grid;
    std::vector<double> amin;        // A_min of the volume-normalized family
    std::vector<double> prop3_bound; // NaN where the multiplier is not invariant
    double amin_base = 0.0;
    bool decreasing = true;          // strictly below the base value on the grid
    double fitted_leading_order = 0.0;
    bool strict_max_detected = false;
};

/**
 * Sweeps A_min along the constant-volume rescaled family (the relative
 * normalizer keeps Vol(t) = Vol(0), so the base value is pi on S^3). The
 * capacity is computed through the radial lift of the multiplier form.
 */
StrictMaxReport strict_max_check(const ContactMultiplier& family, const std::vector<double>& t_grid,
                                 const SearchOptions& search = {});

struct MonotonicityReport {
    double capacity_body = 0.0;
    double capacity_projection = 0.0;
    double margin = 0.0; // c(PC) - c(C), predicted >= 0
};

/**
 * c(PC) - c(C) for a convex body and a symplectic projector onto a plane
 * (k = 1): c(C) from closed-characteristic search, c(PC) as the omega-area
 * of the projected body computed with the radial membership oracle.
 */
MonotonicityReport projection_monotonicity(const ConvexBody& body, const core::SymplecticProjector& p,
                                           const SearchOptions& search = {});

struct LipschitzReport {
    double capacity_c = 0.0;
    double capacity_d = 0.0;
    double hausdorff = 0.0;
    double ratio = 0.0;          // |c(C) - c(D)| / d_H, 0/0 treated as 0
    double bound_constant = 0.0; // (2/delta + Delta/delta^2) Delta^2 pi
    bool within_bound = true;
};

/**
 * Lipschitz probe of the capacity on the (delta, Delta)-pinched class; the
 * bound constant is assembled from the monotonicity-conformality chain
 * c(C) - c(D) <= d (2/delta + d/delta^2) c(D) with c(D) <= Delta^2 pi, d <= Delta.
 * Throws when a body violates the pinch.
 */
LipschitzReport hausdorff_lipschitz_probe(const ConvexBody& c, const ConvexBody& d, double delta,
                                          double Delta, const SearchOptions& search = {});

} // namespace shadowlab::contact
