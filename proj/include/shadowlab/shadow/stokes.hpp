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

#include "shadowlab/shadow/chart.hpp"

namespace shadowlab::shadow {

struct ShadowVolumeResult {
    enum class Method { Stokes, RadialOracle };

    double value = 0.0;          // integral of omega^k over the shadow
    double error_estimate = 0.0; // nonnegative
    Method method = Method::Stokes;
    double margin = 0.0;         // value - pi^k
    double orientation = 1.0;    // parametrization sign used (Stokes only)
};

/**
 * The signed pullback integral int_{S^{2k-1}} G^* alpha with G = P phi c and
 * alpha = lambda_0|_V wedge (omega|_V)^{k-1}, so that d alpha = omega^k|_V.
 * The sign depends on the chart's parametrization orientation.
 */
double stokes_raw(const embed::DifferentiableMap& phi, const SymplecticProjector& p,
                  const ShadowBoundaryChart& chart);

/**
 * Shadow volume by Stokes' theorem with a refinement-based error estimate:
 * value from the primary chart, error |value(primary) - value(coarse)|.
 * An `orientation` of 0 derives the sign from the primary raw integral
 * (valid at linear seeds where the volume is known positive); pass the
 * returned orientation to later evaluations along a continuation.
 * Throws NumericalError when the two orders disagree by more than 10x the
 * coarse-pair estimate (under-resolved quadrature).
 */
ShadowVolumeResult stokes_volume(const embed::DifferentiableMap& phi, const SymplecticProjector& p,
                                 const ShadowBoundaryChart& primary, const ShadowBoundaryChart& coarse,
                                 double orientation = 0.0);

/// stokes_volume().margin convenience: value - pi^k.
double nonsqueezing_margin(const embed::DifferentiableMap& phi, const SymplecticProjector& p,
                           const ShadowBoundaryChart& primary, const ShadowBoundaryChart& coarse);

} // namespace shadowlab::shadow
