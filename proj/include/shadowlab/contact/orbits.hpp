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

#include "shadowlab/contact/flow.hpp"

namespace shadowlab::contact {

/// A discretized closed characteristic.
struct ReebOrbit {
    Eigen::MatrixXd samples;     // dim x N loop samples, equispaced in time
    double action = 0.0;         // = period in the action parametrization
    double closure_residual = 0.0;
    double action_recompute_diff = 0.0; // |int lambda-bar - period| diagnostic
    int seed_index = -1;
    bool fourier_polished = false;
};

struct SearchOptions {
    int random_seeds = 16;
    double closure_tol = 1e-8;
    double max_time = 40.0;   // flow-time budget per seed
    int max_returns = 6;
    int newton_max = 16;
    int resample = 256;       // loop samples (also Fourier collocation count)
    int fourier_modes = 24;
    double near_return_gate = 0.08; // fallback trigger distance
    std::uint64_t seed = 7;
    std::vector<Vec> extra_seeds;
};

/**
 * Closed-orbit search: per seed, locate section returns of the flow, refine
 * by return-map Newton shooting, and fall back to Fourier-collocation loop
 * refinement when shooting stalls near a return. Orbits are deduplicated and
 * sorted by action, then seed index. Completeness is heuristic: the result
 * is an upper-bound device for the minimal action.
 */
std::vector<ReebOrbit> closed_characteristic_search(const FlowField& flow,
                                                    const std::vector<Vec>& seeds,
                                                    const SearchOptions& opts = {});

struct CapacityEstimate {
    double value = 0.0; // min action over found orbits; an upper bound of A_min
    ReebOrbit witness;
    int orbits_found = 0;
    int seeds_tried = 0;
    double max_closure_residual = 0.0;
};

/// Default seed set for a body: coordinate-plane points, random boundary
/// points, and (for radial bodies) extremal circles of the averaged multiplier.
std::vector<Vec> default_orbit_seeds(const ConvexBody& body, const SearchOptions& opts);

/**
 * Minimal action over found closed characteristics of the body boundary.
 * Throws NumericalError when no orbit is found (for convex bodies a closed
 * characteristic exists, so an empty search is a numerical failure).
 */
CapacityEstimate a_min_estimate(const ConvexBody& body, const SearchOptions& opts = {});

/// Direct route on the sphere: A_min of (S^{2m-1}, rho lambda-bar) through
/// the pointwise Reeb field of the multiplier form.
CapacityEstimate a_min_estimate_multiplier(const SphereFunction& rho, const SearchOptions& opts = {});

} // namespace shadowlab::contact
