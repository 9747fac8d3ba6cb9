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

#include "shadowlab/contact/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "shadowlab/contact/averaging.hpp"
#include "shadowlab/core/parallel.hpp"
#include "shadowlab/core/symplectic.hpp"

namespace shadowlab::contact {

namespace {

using core::Mat;

Vec rk4_step(const FlowField& flow, const Vec& x, double dt) {
    const Vec k1 = flow.field(x);
    const Vec k2 = flow.field(x + 0.5 * dt * k1);
    const Vec k3 = flow.field(x + 0.5 * dt * k2);
    const Vec k4 = flow.field(x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Crossing {
    Vec state;
    double time = 0.0;
};

/**
 * Finds upward crossings of the section plane {v0 . (x - x0) = 0} along the
 * flow, with hysteresis arming so the departure from the section does not
 * count. Returns up to max_count crossings within the time budget.
 */
std::vector<Crossing> find_crossings(const FlowField& flow, const Vec& start, const Vec& x0,
                                     const Vec& v0, int max_count, double budget) {
    const FlowOptions fo;
    std::vector<Crossing> out;
    Vec x = start;
    double t = 0.0;
    double dt = 5e-3;
    bool armed = false;
    double g_prev = v0.dot(x - x0);

    while (t < budget && static_cast<int>(out.size()) < max_count) {
        const double step_cap = std::min(fo.dt_max, budget - t);
        // adaptive step with Richardson control
        double used = std::min(dt, step_cap);
        Vec x_next;
        for (;;) {
            const Vec full = rk4_step(flow, x, used);
            const Vec half = rk4_step(flow, rk4_step(flow, x, 0.5 * used), 0.5 * used);
            const double err = (full - half).norm() / 15.0;
            if (err <= fo.tol || used <= 1e-12) {
                x_next = flow.project(half + (half - full) / 15.0);
                dt = std::min(fo.dt_max,
                              used * (err > 0 ? std::min(2.0, 0.9 * std::pow(fo.tol / err, 0.2)) : 2.0));
                break;
            }
            used *= std::max(0.25, 0.9 * std::pow(fo.tol / err, 0.2));
        }

        const double g_next = v0.dot(x_next - x0);
        if (!armed && g_prev < -1e-5) armed = true;
        if (armed && g_prev < 0.0 && g_next >= 0.0) {
            // bisect the crossing time inside [t, t + used]
            double lo = 0.0, hi = used;
            Vec x_lo = x;
            for (int b = 0; b < 60 && hi - lo > 1e-14; ++b) {
                const double mid = 0.5 * (lo + hi);
                const Vec x_mid = flow.project(rk4_step(flow, x, mid));
                if (v0.dot(x_mid - x0) < 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            const Vec x_cross = flow.project(rk4_step(flow, x, 0.5 * (lo + hi)));
            out.push_back({x_cross, t + 0.5 * (lo + hi)});
            armed = false;
        }
        x = x_next;
        t += used;
        g_prev = g_next;
    }
    return out;
}

/// Projects onto the intersection of the invariant surface and the section plane.
Vec project_to_section(const FlowField& flow, const Vec& x0, const Vec& v0, Vec x) {
    for (int it = 0; it < 4; ++it) {
        x = flow.project(x);
        x -= v0 * v0.dot(x - x0);
    }
    return flow.project(x);
}

struct ShootContext {
    const FlowField& flow;
    Vec x0;          // section anchor on the surface
    Vec v0;          // normalized flow direction at the anchor
    Mat section;     // dim x (dim - 2) orthonormal transverse coordinates
    double budget;
    int k = 1;       // which return is targeted
};

std::optional<Crossing> kth_return(const ShootContext& ctx, const Vec& from) {
    auto crossings = find_crossings(ctx.flow, from, ctx.x0, ctx.v0, ctx.k, ctx.budget);
    if (static_cast<int>(crossings.size()) < ctx.k) return std::nullopt;
    return crossings[static_cast<std::size_t>(ctx.k - 1)];
}

/// Newton iteration for a fixed point of the k-fold return map.
std::optional<Crossing> shoot_fixed_point(const ShootContext& ctx, int newton_max,
                                          double closure_tol) {
    const int m = static_cast<int>(ctx.section.cols());
    Vec u = Vec::Zero(m);

    auto eval = [&](const Vec& uu, Vec& start_out) -> std::optional<Vec> {
        const Vec start = project_to_section(ctx.flow, ctx.x0, ctx.v0, ctx.x0 + ctx.section * uu);
        start_out = start;
        auto ret = kth_return(ctx, start);
        if (!ret) return std::nullopt;
        return Vec(ctx.section.transpose() * (ret->state - start));
    };

    Vec start;
    auto f0 = eval(u, start);
    if (!f0) return std::nullopt;
    Vec f = *f0;

    for (int it = 0; it < newton_max; ++it) {
        if (f.norm() < 0.2 * closure_tol) break;
        // finite-difference Jacobian of the section displacement
        Mat jac(m, m);
        const double h = 1e-6;
        bool ok = true;
        for (int c = 0; c < m; ++c) {
            Vec up = u, um = u;
            up[c] += h;
            um[c] -= h;
            Vec s1, s2;
            auto fp = eval(up, s1);
            auto fm = eval(um, s2);
            if (!fp || !fm) {
                ok = false;
                break;
            }
            jac.col(c) = (*fp - *fm) / (2 * h);
        }
        if (!ok) return std::nullopt;
        const Vec step = jac.colPivHouseholderQr().solve(-f);
        if (!step.allFinite() || step.norm() > 0.6) return std::nullopt;
        double scale = 1.0;
        bool improved = false;
        for (int bt = 0; bt < 5; ++bt) {
            Vec s_ignore;
            auto trial = eval(u + scale * step, s_ignore);
            if (trial && trial->norm() < f.norm()) {
                u += scale * step;
                f = *trial;
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!improved) return std::nullopt;
    }

    const Vec x_star = project_to_section(ctx.flow, ctx.x0, ctx.v0, ctx.x0 + ctx.section * u);
    auto ret = kth_return(ctx, x_star);
    if (!ret) return std::nullopt;
    if ((ret->state - x_star).norm() > 10 * closure_tol && f.norm() > 0.2 * closure_tol)
        return std::nullopt;
    return Crossing{x_star, ret->time};
}

/// Equispaced loop samples of the orbit through x over one period.
Eigen::MatrixXd resample_orbit(const FlowField& flow, const Vec& x, double period, int n) {
    Eigen::MatrixXd samples(x.size(), n);
    Vec cur = x;
    samples.col(0) = cur;
    const double h = period / n;
    for (int j = 1; j < n; ++j) {
        cur = flow_to(flow, cur, h);
        samples.col(j) = cur;
    }
    return samples;
}

double action_recompute(const FlowField& flow, const Eigen::MatrixXd& samples, double period) {
    // spectral trapezoid of lambda-bar(gamma)[gamma-dot] over the closed loop
    const int n = static_cast<int>(samples.cols());
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        acc += core::radial_liouville_eval(samples.col(j), flow.field(samples.col(j)));
    return acc * period / n;
}

/**
 * Fourier-collocation loop refinement (harmonic balance): Gauss-Newton on
 * the collocation residual (2 pi / T) gamma'(tau) - X(gamma(tau)) over a
 * truncated Fourier loop, with a phase condition pinning the start point.
 */
std::optional<Crossing> fourier_refine(const FlowField& flow, const Eigen::MatrixXd& init,
                                       double period, const Vec& x0, const Vec& v0, int modes,
                                       double closure_tol) {
    const int d = static_cast<int>(init.rows());
    const int n = static_cast<int>(init.cols());
    const int nb = 2 * modes + 1;
    const double two_pi = 2.0 * std::numbers::pi;

    // collocation basis and its tau-derivative at tau_j = 2 pi j / n
    Mat basis(n, nb), dbasis(n, nb);
    for (int j = 0; j < n; ++j) {
        const double tau = two_pi * j / n;
        basis(j, 0) = 1.0;
        dbasis(j, 0) = 0.0;
        for (int m = 1; m <= modes; ++m) {
            basis(j, 2 * m - 1) = std::cos(m * tau);
            basis(j, 2 * m) = std::sin(m * tau);
            dbasis(j, 2 * m - 1) = -m * std::sin(m * tau);
            dbasis(j, 2 * m) = m * std::cos(m * tau);
        }
    }

    // least-squares Fourier fit of the initial loop
    Mat coeff = (basis.transpose() * basis).ldlt().solve(basis.transpose() * init.transpose());
    double t_cur = period;

    const int unknowns = d * nb + 1;
    const int equations = n * d + 1;
    Mat jac(equations, unknowns);
    Vec res(equations);

    for (int it = 0; it < 14; ++it) {
        jac.setZero();
        const double omega = two_pi / t_cur;
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            const Vec gamma = coeff.transpose() * basis.row(j).transpose();
            const Vec dgamma = coeff.transpose() * dbasis.row(j).transpose();
            const Vec x_field = flow.field(gamma);
            const Vec r = omega * dgamma - x_field;
            res.segment(j * d, d) = r;
            worst = std::max(worst, r.norm());

            // d field / d gamma by finite differences
            Mat dfield(d, d);
            const double h = 1e-6;
            for (int c = 0; c < d; ++c) {
                Vec gp = gamma, gm = gamma;
                gp[c] += h;
                gm[c] -= h;
                dfield.col(c) = (flow.field(gp) - flow.field(gm)) / (2 * h);
            }
            for (int b = 0; b < nb; ++b)
                for (int r_c = 0; r_c < d; ++r_c) {
                    // residual row (j, r_c), unknown (r_c', b)
                    for (int c_c = 0; c_c < d; ++c_c)
                        jac(j * d + r_c, c_c * nb + b) = -dfield(r_c, c_c) * basis(j, b);
                    jac(j * d + r_c, r_c * nb + b) += omega * dbasis(j, b);
                }
            for (int r_c = 0; r_c < d; ++r_c)
                jac(j * d + r_c, unknowns - 1) = -omega / t_cur * dgamma[r_c];
        }
        // phase condition: v0 . (gamma(0) - x0) = 0
        {
            const Vec gamma0 = coeff.transpose() * basis.row(0).transpose();
            res[equations - 1] = v0.dot(gamma0 - x0);
            for (int b = 0; b < nb; ++b)
                for (int c_c = 0; c_c < d; ++c_c) jac(equations - 1, c_c * nb + b) = v0[c_c] * basis(0, b);
        }

        if (worst < 1e-12) break;
        const Vec delta = jac.colPivHouseholderQr().solve(-res);
        if (!delta.allFinite()) return std::nullopt;
        for (int c_c = 0; c_c < d; ++c_c) coeff.col(c_c) += delta.segment(c_c * nb, nb);
        t_cur += delta[unknowns - 1];
        if (!(t_cur > 1e-6) || t_cur > 1e4) return std::nullopt;
        if (delta.norm() < 1e-13) break;
    }

    // verify by integrating one period from the refined start point
    const Vec start = flow.project(coeff.transpose() * basis.row(0).transpose());
    const Vec back = flow_to(flow, start, t_cur);
    if ((back - start).norm() > 100 * closure_tol) return std::nullopt;
    return Crossing{start, t_cur};
}

std::optional<ReebOrbit> orbit_from_seed(const FlowField& flow, const Vec& seed, int seed_index,
                                         const SearchOptions& opts) {
    const Vec x0 = flow.project(seed);
    Vec v0 = flow.field(x0);
    const double speed = v0.norm();
    if (speed < 1e-12) return std::nullopt;
    v0 /= speed;

    // transverse section coordinates: orthogonal to the flow direction and
    // the surface normal (finite-difference of the projection map)
    const int d = static_cast<int>(x0.size());
    Vec normal;
    {
        const double h = 1e-6;
        Vec off = x0 * (1.0 + h);
        normal = (off - flow.project(off));
        if (normal.norm() < 1e-12) normal = x0;
        normal /= normal.norm();
    }
    Mat frame(d, 2);
    frame.col(0) = v0;
    frame.col(1) = (normal - v0 * v0.dot(normal)).normalized();
    Eigen::HouseholderQR<Mat> qr(frame);
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    ShootContext ctx{flow, x0, v0, q.rightCols(d - 2), opts.max_time, 1};

    // scan the first few returns and pick the best near-closure
    auto crossings = find_crossings(flow, x0, x0, v0, opts.max_returns, opts.max_time);
    if (crossings.empty()) return std::nullopt;
    int best_k = 0;
    double best_dist = 1e300;
    for (std::size_t c = 0; c < crossings.size(); ++c) {
        const double dist = (crossings[c].state - x0).norm();
        if (dist < best_dist) {
            best_dist = dist;
            best_k = static_cast<int>(c) + 1;
        }
    }

    std::optional<Crossing> found;
    bool polished = false;
    if (best_dist <= opts.closure_tol) {
        found = Crossing{x0, crossings[static_cast<std::size_t>(best_k - 1)].time};
    } else {
        ctx.k = best_k;
        found = shoot_fixed_point(ctx, opts.newton_max, opts.closure_tol);
        if (!found && best_dist <= opts.near_return_gate) {
            // Fourier-collocation fallback from the best near-return loop
            const double t_near = crossings[static_cast<std::size_t>(best_k - 1)].time;
            const Eigen::MatrixXd loop = resample_orbit(flow, x0, t_near, opts.resample);
            found = fourier_refine(flow, loop, t_near, x0, v0, opts.fourier_modes, opts.closure_tol);
            polished = found.has_value();
        }
    }
    if (!found) return std::nullopt;

    const Vec start = found->state;
    const double period = found->time;
    const Vec back = flow_to(flow, start, period);
    const double closure = (back - start).norm();
    if (closure > opts.closure_tol) return std::nullopt;

    ReebOrbit orbit;
    orbit.samples = resample_orbit(flow, start, period, opts.resample);
    orbit.action = period;
    orbit.closure_residual = closure;
    orbit.action_recompute_diff = std::abs(action_recompute(flow, orbit.samples, period) - period);
    orbit.seed_index = seed_index;
    orbit.fourier_polished = polished;
    return orbit;
}

bool same_orbit(const ReebOrbit& a, const ReebOrbit& b) {
    if (std::abs(a.action - b.action) > 1e-5 * std::max(1.0, a.action)) return false;
    // does a's start point lie on b's sample loop?
    const Vec start = a.samples.col(0);
    double dist = 1e300;
    for (int j = 0; j < b.samples.cols(); ++j) dist = std::min(dist, (b.samples.col(j) - start).norm());
    return dist < 5e-3;
}

} // namespace

std::vector<ReebOrbit> closed_characteristic_search(const FlowField& flow,
                                                    const std::vector<Vec>& seeds,
                                                    const SearchOptions& opts) {
    std::vector<std::optional<ReebOrbit>> found(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        try {
            found[i] = orbit_from_seed(flow, seeds[i], static_cast<int>(i), opts);
        } catch (const NumericalError&) {
            found[i] = std::nullopt; // a diverged seed is simply not a witness
        }
    });

    std::vector<ReebOrbit> orbits;
    for (auto& f : found) {
        if (!f) continue;
        bool duplicate = false;
        for (const auto& o : orbits)
            if (same_orbit(*f, o)) {
                duplicate = true;
                break;
            }
        if (!duplicate) orbits.push_back(std::move(*f));
    }
    std::sort(orbits.begin(), orbits.end(), [](const ReebOrbit& a, const ReebOrbit& b) {
        if (a.action != b.action) return a.action < b.action;
        return a.seed_index < b.seed_index;
    });
    return orbits;
}

std::vector<Vec> default_orbit_seeds(const ConvexBody& body, const SearchOptions& opts) {
    const int d = body.dim();
    std::vector<Vec> seeds;
    for (int i = 0; i < d / 2; ++i) {
        Vec u = Vec::Zero(d);
        u[2 * i] = 1.0;
        seeds.push_back(body.to_boundary(u));
    }
    // extremal circles of the averaged multiplier survive small deformations;
    // seed there first when the body is radial
    if (const auto* radial = dynamic_cast<const RadialBody*>(&body)) {
        const SphereFunction rho_bar =
            reeb_average(radial->f() + SphereFunction::constant(d, 1.0));
        SplitMix64 scan(opts.seed ^ 0x9e37ULL);
        std::vector<std::pair<double, Vec>> ranked;
        for (int s = 0; s < 400; ++s) {
            const Vec u = core::random_unit_vector(d, scan);
            ranked.emplace_back(rho_bar.eval(u), u);
        }
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (int i = 0; i < 4 && i < static_cast<int>(ranked.size()); ++i)
            seeds.push_back(body.to_boundary(ranked[static_cast<std::size_t>(i)].second));
        for (int i = 0; i < 2; ++i)
            seeds.push_back(body.to_boundary(ranked[ranked.size() - 1 - static_cast<std::size_t>(i)].second));
    }
    SplitMix64 rng(opts.seed);
    for (int s = 0; s < opts.random_seeds; ++s)
        seeds.push_back(body.to_boundary(core::random_unit_vector(d, rng)));
    for (const auto& e : opts.extra_seeds) seeds.push_back(body.to_boundary(e));
    return seeds;
}

namespace {

CapacityEstimate estimate_from(const FlowField& flow, const std::vector<Vec>& seeds,
                               const SearchOptions& opts, const char* who) {
    auto orbits = closed_characteristic_search(flow, seeds, opts);
    if (orbits.empty())
        throw NumericalError(std::string(who) +
                             ": no closed characteristic found from any seed; for convex bodies "
                             "this contradicts existence and is treated as a numerical failure "
                             "(seeds tried: " +
                             std::to_string(seeds.size()) + ")");
    CapacityEstimate est;
    est.value = orbits.front().action;
    est.witness = orbits.front();
    est.orbits_found = static_cast<int>(orbits.size());
    est.seeds_tried = static_cast<int>(seeds.size());
    for (const auto& o : orbits) est.max_closure_residual = std::max(est.max_closure_residual, o.closure_residual);
    return est;
}

} // namespace

CapacityEstimate a_min_estimate(const ConvexBody& body, const SearchOptions& opts) {
    const GaugeCharacteristicFlow flow(body);
    return estimate_from(flow, default_orbit_seeds(body, opts), opts, "a_min_estimate");
}

CapacityEstimate a_min_estimate_multiplier(const SphereFunction& rho, const SearchOptions& opts) {
    const MultiplierReebFlow flow(rho);
    const int d = rho.ambient_dim();
    std::vector<Vec> seeds;
    for (int i = 0; i < d / 2; ++i) {
        Vec u = Vec::Zero(d);
        u[2 * i] = 1.0;
        seeds.push_back(u);
    }
    const SphereFunction rho_bar = reeb_average(rho);
    SplitMix64 scan(opts.seed ^ 0x517cc1ULL);
    std::vector<std::pair<double, Vec>> ranked;
    for (int s = 0; s < 400; ++s) {
        const Vec u = core::random_unit_vector(d, scan);
        ranked.emplace_back(rho_bar.eval(u), u);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int i = 0; i < 4; ++i) seeds.push_back(ranked[static_cast<std::size_t>(i)].second);
    SplitMix64 rng(opts.seed);
    for (int s = 0; s < opts.random_seeds; ++s) seeds.push_back(core::random_unit_vector(d, rng));
    for (const auto& e : opts.extra_seeds) seeds.push_back(e / e.norm());
    return estimate_from(flow, seeds, opts, "a_min_estimate_multiplier");
}

} // namespace shadowlab::contact
