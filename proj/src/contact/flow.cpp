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

#include "shadowlab/contact/flow.hpp"

#include <cmath>

#include "shadowlab/core/symplectic.hpp"

namespace shadowlab::contact {

GaugeCharacteristicFlow::GaugeCharacteristicFlow(const ConvexBody& body)
    : body_(body), j_(core::complex_structure(body.dim())) {}

Vec GaugeCharacteristicFlow::field(const Vec& x) const { return j_ * body_.gauge2_gradient(x); }

MultiplierReebFlow::MultiplierReebFlow(SphereFunction rho) : rho_(std::move(rho)) {
    if (!(rho_.sampled_min(1024) > 0))
        throw InvalidInputError("MultiplierReebFlow: multiplier must be positive");
}

Vec MultiplierReebFlow::field(const Vec& x) const {
    const int d = rho_.ambient_dim();
    // tangent basis at x
    Eigen::HouseholderQR<core::Mat> qr(x);
    core::Mat q = qr.householderQ() * core::Mat::Identity(d, d);
    const core::Mat tan = q.rightCols(d - 1);

    const double rho = rho_.eval(x);
    const Vec grad = rho_.ambient_gradient(x);

    // R = T c with  rho lb(R) = 1  and  (drho ^ lb + rho w)(R, v_j) = 0.
    // lb(v) = omega(x, v) / 2.
    core::Mat a(d, d - 1);
    Vec rhs(d);
    Vec lb_t(d - 1), dr_t(d - 1);
    for (int j = 0; j < d - 1; ++j) {
        lb_t[j] = 0.5 * core::omega_eval(x, tan.col(j));
        dr_t[j] = grad.dot(tan.col(j));
    }
    for (int c = 0; c < d - 1; ++c) {
        const Vec tc = tan.col(c);
        const double lb_c = lb_t[c];
        const double dr_c = grad.dot(tc);
        for (int r = 0; r < d - 1; ++r) {
            // row r: dr(R) lb(v_r) - dr(v_r) lb(R) + rho w(R, v_r) = 0
            a(r, c) = dr_c * lb_t[r] - dr_t[r] * lb_c + rho * core::omega_eval(tc, tan.col(r));
        }
        a(d - 1, c) = rho * lb_c; // rho lb(R) = 1
        (void)dr_c;
    }
    rhs.setZero();
    rhs[d - 1] = 1.0;
    const Vec coef = a.colPivHouseholderQr().solve(rhs);
    const double residual = (a * coef - rhs).norm();
    if (residual > 1e-8)
        throw NumericalError("MultiplierReebFlow: pointwise Reeb solve failed (residual " +
                             std::to_string(residual) + ")");
    return tan * coef;
}

namespace {

Vec rk4_step(const FlowField& flow, const Vec& x, double dt) {
    const Vec k1 = flow.field(x);
    const Vec k2 = flow.field(x + 0.5 * dt * k1);
    const Vec k3 = flow.field(x + 0.5 * dt * k2);
    const Vec k4 = flow.field(x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

Trajectory integrate_flow(const FlowField& flow, const Vec& start, double total_time,
                          const FlowOptions& opts) {
    Trajectory traj;
    Vec x = flow.project(start);
    double t = 0.0;
    double dt = opts.dt_init;
    traj.times.push_back(0.0);
    traj.states.push_back(x);

    while (t < total_time) {
        dt = std::min(dt, total_time - t);
        if (dt < 1e-14) throw NumericalError("integrate_flow: step size underflow");

        // step doubling: accept when the Richardson error estimate meets tol
        const Vec full = rk4_step(flow, x, dt);
        const Vec half = rk4_step(flow, rk4_step(flow, x, 0.5 * dt), 0.5 * dt);
        const double err = (full - half).norm() / 15.0;
        if (err > opts.tol && dt > 1e-12) {
            dt *= std::max(0.25, 0.9 * std::pow(opts.tol / err, 0.2));
            continue;
        }

        Vec next = half + (half - full) / 15.0; // 5th-order extrapolation
        const double drift = flow.level_drift(next);
        traj.max_drift = std::max(traj.max_drift, drift);
        if (drift > opts.drift_gate * std::max(1.0, 1.0 + t))
            throw NumericalError("integrate_flow: level drift exceeded the gate");
        next = flow.project(next);

        t += dt;
        x = next;
        traj.times.push_back(t);
        traj.states.push_back(x);
        if (err > 0) dt = std::min(opts.dt_max, dt * std::min(2.0, 0.9 * std::pow(opts.tol / err, 0.2)));
        else dt = std::min(opts.dt_max, dt * 2.0);
    }
    return traj;
}

Vec flow_to(const FlowField& flow, const Vec& start, double total_time, const FlowOptions& opts) {
    Vec x = flow.project(start);
    double t = 0.0;
    double dt = opts.dt_init;
    while (t < total_time) {
        dt = std::min(dt, total_time - t);
        if (dt < 1e-14) throw NumericalError("flow_to: step size underflow");
        const Vec full = rk4_step(flow, x, dt);
        const Vec half = rk4_step(flow, rk4_step(flow, x, 0.5 * dt), 0.5 * dt);
        const double err = (full - half).norm() / 15.0;
        if (err > opts.tol && dt > 1e-12) {
            dt *= std::max(0.25, 0.9 * std::pow(opts.tol / err, 0.2));
            continue;
        }
        x = flow.project(half + (half - full) / 15.0);
        t += dt;
        if (err > 0) dt = std::min(opts.dt_max, dt * std::min(2.0, 0.9 * std::pow(opts.tol / err, 0.2)));
        else dt = std::min(opts.dt_max, dt * 2.0);
    }
    return x;
}

} // namespace shadowlab::contact
