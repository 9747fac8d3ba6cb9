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

#include "shadowlab/contact/comparison.hpp"

#include <cmath>
#include <numbers>

#include "shadowlab/contact/averaging.hpp"
#include "shadowlab/shadow/oracle.hpp"

namespace shadowlab::contact {

double amin_upper_bound(const SphereFunction& rho, double base_amin) {
    if (invariance_defect(rho) > 1e-10)
        throw InvalidInputError("amin_upper_bound: multiplier is not invariant under the Reeb flow");
    const double rho_min = rho.sampled_min(8192);
    if (!(rho_min > 0)) throw InvalidInputError("amin_upper_bound: multiplier must be positive");
    return rho_min * base_amin;
}

StrictMaxReport strict_max_check(const ContactMultiplier& family, const std::vector<double>& t_grid,
                                 const SearchOptions& search) {
    const int dim = family.ambient_dim();
    const double pi = std::numbers::pi;

    StrictMaxReport report;
    report.amin_base = pi; // round sphere, constant-volume base point
    report.t_grid = t_grid;

    for (double t : t_grid) {
        const double c = relative_volume_normalizer(family, t);
        const SphereFunction rho_star = family.at(t) * c;
        const SphereFunction f = rho_star - SphereFunction::constant(dim, 1.0);
        const RadialBody lift{f};
        const CapacityEstimate est = a_min_estimate(lift, search);
        report.amin.push_back(est.value);

        // Prop3 comparison where the multiplier is fiber invariant
        if (invariance_defect(rho_star) <= 1e-8)
            report.prop3_bound.push_back(amin_upper_bound(rho_star, pi));
        else
            report.prop3_bound.push_back(std::numeric_limits<double>::quiet_NaN());
    }

    double max_decrement = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] <= 0) continue;
        const double dec = report.amin_base - report.amin[i];
        max_decrement = std::max(max_decrement, std::abs(dec));
        if (dec <= 1e-9) report.decreasing = false;
    }
    report.strict_max_detected = report.decreasing && max_decrement > 1e-6;

    // leading order from a log-log fit of the decrement over positive grid t
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double dec = report.amin_base - report.amin[i];
        if (t_grid[i] > 0 && dec > 1e-12) {
            xs.push_back(std::log(t_grid[i]));
            ys.push_back(std::log(dec));
        }
    }
    if (xs.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double n = static_cast<double>(xs.size());
        report.fitted_leading_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return report;
}

MonotonicityReport projection_monotonicity(const ConvexBody& body, const core::SymplecticProjector& p,
                                           const SearchOptions& search) {
    if (p.k() != 1)
        throw InvalidInputError("projection_monotonicity: implemented for plane projections (k = 1)");
    if (p.ambient_dim() != body.dim())
        throw InvalidInputError("projection_monotonicity: dimension mismatch");

    MonotonicityReport report;
    report.capacity_body = a_min_estimate(body, search).value;

    // c(PC) is the omega-area of the projected body: radial profile of the
    // projection of the radial stretch of the unit ball
    const BodyStretchMap stretch(body);
    shadow::OracleOptions opts;
    opts.order = 256;
    opts.seed = search.seed ^ 0xabcdULL;
    const auto rule = shadow::QuadratureRule::make(1, opts.order);
    const auto radii = shadow::radial_profile(stretch, p, rule, opts);
    double area = 0.0;
    for (std::size_t j = 0; j < radii.size(); ++j)
        area += rule.nodes()[j].weight_sigma * radii[j] * radii[j] / 2.0;
    report.capacity_projection = std::abs(p.target().gram_pfaffian()) * area;
    report.margin = report.capacity_projection - report.capacity_body;
    return report;
}

LipschitzReport hausdorff_lipschitz_probe(const ConvexBody& c, const ConvexBody& d, double delta,
                                          double Delta, const SearchOptions& search) {
    if (!(0 < delta && delta < Delta))
        throw InvalidInputError("hausdorff_lipschitz_probe: need 0 < delta < Delta");
    if (!pinched(c, delta, Delta) || !pinched(d, delta, Delta))
        throw InvalidInputError("hausdorff_lipschitz_probe: a body violates the pinching condition");

    const double pi = std::numbers::pi;
    LipschitzReport report;
    report.capacity_c = a_min_estimate(c, search).value;
    report.capacity_d = a_min_estimate(d, search).value;
    report.hausdorff = hausdorff_distance(c, d);
    report.bound_constant = (2.0 / delta + Delta / (delta * delta)) * Delta * Delta * pi;
    const double diff = std::abs(report.capacity_c - report.capacity_d);
    report.ratio = report.hausdorff < 1e-12 ? 0.0 : diff / report.hausdorff;
    report.within_bound = report.ratio <= report.bound_constant;
    return report;
}

} // namespace shadowlab::contact
