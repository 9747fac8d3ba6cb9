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

#include "shadowlab/shadow/stokes.hpp"

namespace shadowlab::shadow {

struct OracleOptions {
    int order = 16;            // direction-grid resolution on S^{2k-1}
    double ray_tol = 2e-8;     // relative radial bisection tolerance
    double member_tol = 1e-8;  // membership distance gate
    int multistart = 8;        // minimization starts per first membership test
    bool convexity_check = true;
    std::uint64_t seed = 2026; // deterministic multistart stream
};

/**
 * Radial function of the shadow P m(B_1) about its center P m(0), sampled at
 * the direction-rule nodes (directions live in V through its orthonormal
 * basis). Membership along each ray is decided by multi-start projected
 * Levenberg-Marquardt minimization of |P m(x) - target|^2 over the closed
 * unit ball, and the boundary radius is bracketed and bisected to ray_tol.
 * With convexity_check on, refuses (throws NumericalError) when membership
 * is not monotone along sampled rays.
 */
std::vector<double> radial_profile(const embed::DifferentiableMap& m, const SymplecticProjector& p,
                                   const QuadratureRule& rule, const OracleOptions& opts);

/**
 * Independent shadow volume: Lebesgue volume of the radial profile,
 * int r(u)^{2k} / (2k) d sigma, converted to the omega^k measure by the
 * constant density k! |Pf(Omega_B)|. The error estimate compares the
 * direction grid with its coarsening and accounts for the ray tolerance.
 */
ShadowVolumeResult radial_oracle_volume(const embed::DifferentiableMap& m,
                                        const SymplecticProjector& p, const OracleOptions& opts = {});

} // namespace shadowlab::shadow
