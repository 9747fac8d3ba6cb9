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
 * Average along the characteristic circles x -> e^{i theta} x (the closed
 * Reeb orbits of the round contact sphere):
 *
 *   rho_bar(x) = (1 / 2 pi) int_0^{2 pi} rho(e^{i theta} x) d theta,
 *
 * computed exactly on the coefficient representation: in the z / z-bar
 * monomial basis the action multiplies a monomial by e^{i nu theta} with
 * nu = deg_z - deg_zbar, so averaging keeps exactly the nu = 0 terms.
 */
SphereFunction reeb_average(const SphereFunction& rho);

/**
 * Solves d/dtheta h(e^{i theta} x)|_0 = rho_bar(x) - rho(x) by dividing each
 * phase-Fourier coefficient by (i nu); the fiber mean of h is fixed to zero.
 */
SphereFunction cohomological_solve(const SphereFunction& rho);

/// Fiber-invariance defect sup_x |rho_bar(x) - rho(x)| (sampled).
double invariance_defect(const SphereFunction& rho, int samples = 2048);

} // namespace shadowlab::contact
