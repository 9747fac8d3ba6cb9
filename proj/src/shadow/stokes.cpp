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

#include "shadowlab/shadow/stokes.hpp"

#include <cmath>
#include <numbers>

#include "shadowlab/core/parallel.hpp"

namespace shadowlab::shadow {

using Eigen::VectorXd;

namespace {

/// alpha = lambda_0 wedge omega^{k-1} evaluated at p on 2k-1 tangent vectors.
double alpha_term(int k, const VectorXd& base, const std::vector<VectorXd>& v) {
    if (k == 1) return core::liouville_eval(base, v[0]);
    // k = 2 shuffle expansion of a 1-form wedged with a 2-form
    const double l1 = core::liouville_eval(base, v[0]);
    const double l2 = core::liouville_eval(base, v[1]);
    const double l3 = core::liouville_eval(base, v[2]);
    const double w23 = core::omega_eval(v[1], v[2]);
    const double w13 = core::omega_eval(v[0], v[2]);
    const double w12 = core::omega_eval(v[0], v[1]);
    return l1 * w23 - l2 * w13 + l3 * w12;
}

} // namespace

double stokes_raw(const embed::DifferentiableMap& phi, const SymplecticProjector& p,
                  const ShadowBoundaryChart& chart) {
    const int k = p.k();
    if (k != chart.rule().k()) throw InvalidInputError("stokes_raw: chart/projector k mismatch");
    if (k > 2) throw InvalidInputError("stokes_raw: only k in {1, 2} is supported");
    const int pd = chart.rule().param_dim();
    const auto& qnodes = chart.rule().nodes();
    const auto& cnodes = chart.nodes();
    const Mat& pm = p.matrix();

    std::vector<double> terms(qnodes.size(), 0.0);
    parallel_for(qnodes.size(), [&](std::size_t j) {
        const auto& node = cnodes[j];
        const VectorXd img = pm * phi.eval(node.point);
        const Mat d = phi.jacobian(node.point);
        std::vector<VectorXd> pushed(static_cast<std::size_t>(pd));
        for (int i = 0; i < pd; ++i) pushed[static_cast<std::size_t>(i)] = pm * (d * node.tangents[static_cast<std::size_t>(i)]);
        terms[j] = alpha_term(k, img, pushed) * qnodes[j].weight_param;
    });

    // deterministic compensated reduction in node order
    double sum = 0.0, comp = 0.0;
    for (double t : terms) {
        const double y = t - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

ShadowVolumeResult stokes_volume(const embed::DifferentiableMap& phi, const SymplecticProjector& p,
                                 const ShadowBoundaryChart& primary, const ShadowBoundaryChart& coarse,
                                 double orientation) {
    if (primary.residual_max() > 2e-10 || coarse.residual_max() > 2e-10)
        throw InvalidInputError("stokes_volume: chart residual exceeds the validity gate");

    const double raw_primary = stokes_raw(phi, p, primary);
    const double raw_coarse = stokes_raw(phi, p, coarse);

    double sign = orientation;
    if (sign == 0.0) sign = raw_primary >= 0.0 ? 1.0 : -1.0;

    ShadowVolumeResult r;
    r.method = ShadowVolumeResult::Method::Stokes;
    r.orientation = sign;
    r.value = sign * raw_primary;
    r.error_estimate = std::abs(raw_primary - raw_coarse);
    r.margin = r.value - std::pow(std::numbers::pi, p.k());
    return r;
}

double nonsqueezing_margin(const embed::DifferentiableMap& phi, const SymplecticProjector& p,
                           const ShadowBoundaryChart& primary, const ShadowBoundaryChart& coarse) {
    return stokes_volume(phi, p, primary, coarse).margin;
}

} // namespace shadowlab::shadow
