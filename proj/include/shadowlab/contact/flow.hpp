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

#include "shadowlab/contact/body.hpp"

namespace shadowlab::contact {

/**
 * An action-parametrized flow on a compact invariant hypersurface: the
 * contact/Liouville action accumulates at unit rate along trajectories, so
 * the action of a closed orbit equals its period.
 */
class FlowField {
public:
    virtual ~FlowField() = default;
    virtual int dim() const = 0;
    virtual Vec field(const Vec& x) const = 0;
    /// Projects a drifted state back onto the invariant hypersurface.
    virtual Vec project(const Vec& x) const = 0;
    virtual double level_drift(const Vec& x) const = 0;
};

/**
 * Characteristic flow x' = J grad H on { H = 1 } with H the squared gauge of
 * a convex body. Since H is 2-homogeneous, lambda-bar(J grad H) = H = 1 on
 * the level set: time is action.
 */
class GaugeCharacteristicFlow final : public FlowField {
public:
    explicit GaugeCharacteristicFlow(const ConvexBody& body);
    int dim() const override { return body_.dim(); }
    Vec field(const Vec& x) const override;
    Vec project(const Vec& x) const override { return body_.to_boundary(x); }
    double level_drift(const Vec& x) const override { return std::abs(body_.gauge2(x) - 1.0); }
    const ConvexBody& body() const { return body_; }

private:
    const ConvexBody& body_;
    core::Mat j_;
};

/**
 * Reeb field of the multiplier form rho lambda-bar on the unit sphere,
 * recovered pointwise from the defining equations rho lambda-bar(R) = 1 and
 * i_R d(rho lambda-bar) = 0 on the tangent space.
 */
class MultiplierReebFlow final : public FlowField {
public:
    explicit MultiplierReebFlow(SphereFunction rho);
    int dim() const override { return rho_.ambient_dim(); }
    Vec field(const Vec& x) const override;
    Vec project(const Vec& x) const override { return x / x.norm(); }
    double level_drift(const Vec& x) const override { return std::abs(x.norm() - 1.0); }

private:
    SphereFunction rho_;
};

struct FlowOptions {
    double tol = 1e-11;      // local error target per step
    double dt_init = 1e-3;
    double dt_max = 2e-2;
    double drift_gate = 1e-9; // abort when the level drifts past this before projection
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    double max_drift = 0.0; // level drift observed before per-step projection
};

/**
 * Adaptive RK4 (step-doubling error control) with per-step projection onto
 * the invariant hypersurface. Deterministic for fixed inputs.
 */
Trajectory integrate_flow(const FlowField& flow, const Vec& start, double total_time,
                          const FlowOptions& opts = {});

/// Single state integration without storing the path.
Vec flow_to(const FlowField& flow, const Vec& start, double total_time, const FlowOptions& opts = {});

} // namespace shadowlab::contact
