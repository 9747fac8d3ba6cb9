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

namespace shadowlab::contact {

struct NormalFormOptions {
    std::vector<double> t_stencil = {0.05, 0.1, 0.15, 0.2}; // pullback sampling in t
    int sample_points = 1500;                               // sphere sample count for the refit
    int fit_degree = 4;                                     // ambient-polynomial refit degree
    double invariance_tol = 1e-7;                           // gate on lower-order invariance
    double fit_tol = 5e-3;                                  // gate on the refit residual
    std::uint64_t seed = 21;
};

/**
 * One Dragt-Finn step: pulls the family back through the time-t^m flow of
 * the contact field generated by the cohomological correction of the order-m
 * coefficient, so the new order-m coefficient is the Reeb average (an
 * integral of motion of the round flow). The pullback is evaluated pointwise
 * (flow plus conformal factor integrated along the trajectory) and re-fit to
 * the polynomial basis by least squares; lower orders are untouched, the
 * order-m coefficient is set to its exact average, higher orders come from
 * the fit. Minimal action and contact volume are isotopy invariants of the
 * step (checked by the test suites, not here).
 */
ContactMultiplier normal_form_reduce(const ContactMultiplier& family, int m,
                                     const NormalFormOptions& opts = {});

struct TrivialityReport {
    bool trivial = true;
    int obstruction_order = 0; // first m with a nonvanishing averaged coefficient
    double min_average = 0.0;  // extrema of the averaged obstruction
    double max_average = 0.0;
    double sup_average = 0.0;
    std::vector<ContactMultiplier> stages; // family after each completed reduction
};

/**
 * Iterates the reduction on a constant-volume normalized family: returns the
 * first order whose averaged coefficient has sampled sup-norm above 1e-8
 * (with its extrema, which a constant-volume deformation forces to straddle
 * zero), or reports formal triviality through order M.
 */
TrivialityReport formal_triviality_order(const ContactMultiplier& family, int max_order,
                                         const NormalFormOptions& opts = {});

} // namespace shadowlab::contact
