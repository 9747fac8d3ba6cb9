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

#include "shadowlab/contact/body.hpp"

#include <cmath>

#include "shadowlab/core/symplectic.hpp"

namespace shadowlab::contact {

Vec ConvexBody::to_boundary(const Vec& z) const {
    const double h = gauge2(z);
    if (!(h > 0)) throw InvalidInputError("ConvexBody::to_boundary: zero vector");
    return z / std::sqrt(h);
}

double ConvexBody::radial(const Vec& u) const {
    const double h = gauge2(u);
    if (!(h > 0)) throw InvalidInputError("ConvexBody::radial: zero direction");
    return u.norm() / std::sqrt(h);
}

double ConvexBody::support(const Vec& u, int samples, std::uint64_t seed) const {
    SplitMix64 rng(seed);
    double best = -1e300;
    Vec best_v;
    for (int s = 0; s < samples; ++s) {
        const Vec v = core::random_unit_vector(dim(), rng);
        const double val = radial(v) * u.dot(v);
        if (val > best) {
            best = val;
            best_v = v;
        }
    }
    // polish: ascent of g(v) = r(v) <u, v> over the sphere by finite-difference
    // tangential gradient (r is smooth; the maximizer is unique for convex bodies)
    Vec v = best_v;
    double fv = best;
    double step = 0.05;
    const double h = 1e-6;
    for (int it = 0; it < 120 && step > 1e-12; ++it) {
        Vec grad = Vec::Zero(dim());
        for (int i = 0; i < dim(); ++i) {
            Vec vp = v, vm = v;
            vp[i] += h;
            vm[i] -= h;
            vp /= vp.norm();
            vm /= vm.norm();
            grad[i] = (radial(vp) * u.dot(vp) - radial(vm) * u.dot(vm)) / (2 * h);
        }
        grad -= v * grad.dot(v);
        Vec trial = v + step * grad;
        trial /= trial.norm();
        const double ft = radial(trial) * u.dot(trial);
        if (ft > fv) {
            v = trial;
            fv = ft;
            step *= 1.3;
        } else {
            step *= 0.5;
        }
    }
    return fv;
}

BallBody::BallBody(int dim, double radius) : dim_(dim), radius_(radius) {
    if (dim < 4 || dim % 2 != 0) throw InvalidInputError("BallBody: invalid dimension");
    if (!(radius > 0)) throw InvalidInputError("BallBody: radius must be positive");
}

EllipsoidBody::EllipsoidBody(std::vector<double> semi_axes) : axes_(std::move(semi_axes)) {
    if (axes_.size() < 2) throw InvalidInputError("EllipsoidBody: need at least two pairs");
    for (double a : axes_)
        if (!(a > 0)) throw InvalidInputError("EllipsoidBody: semi-axes must be positive");
}

double EllipsoidBody::gauge2(const Vec& z) const {
    double h = 0.0;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        const double a2 = axes_[i] * axes_[i];
        h += (z[2 * static_cast<int>(i)] * z[2 * static_cast<int>(i)] +
              z[2 * static_cast<int>(i) + 1] * z[2 * static_cast<int>(i) + 1]) /
             a2;
    }
    return h;
}

Vec EllipsoidBody::gauge2_gradient(const Vec& z) const {
    Vec g(dim());
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        const double a2 = axes_[i] * axes_[i];
        g[2 * static_cast<int>(i)] = 2.0 * z[2 * static_cast<int>(i)] / a2;
        g[2 * static_cast<int>(i) + 1] = 2.0 * z[2 * static_cast<int>(i) + 1] / a2;
    }
    return g;
}

RadialBody::RadialBody(SphereFunction f) : f_(std::move(f)) {
    const double fmin = f_.sampled_min();
    if (!(1.0 + fmin > 1e-6))
        throw InvalidInputError("RadialBody: 1 + f must stay positive on the sphere");
}

double RadialBody::gauge2(const Vec& z) const {
    const double n2 = z.squaredNorm();
    if (n2 == 0.0) return 0.0;
    const Vec u = z / std::sqrt(n2);
    return n2 / (1.0 + f_.eval(u));
}

Vec RadialBody::gauge2_gradient(const Vec& z) const {
    const double norm = z.norm();
    const Vec u = z / norm;
    const double rho = 1.0 + f_.eval(u);
    Vec g = f_.ambient_gradient(u);
    g = (g - u * u.dot(g)) / norm; // gradient of f(z/|z|)
    return 2.0 * z / rho - z.squaredNorm() / (rho * rho) * g;
}

double convexity_defect(const ConvexBody& body, int samples, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const int d = body.dim();
    const double h = 1e-5;
    double worst = 1e300;
    for (int s = 0; s < samples; ++s) {
        const Vec x = body.to_boundary(core::random_unit_vector(d, rng));
        core::Mat hess(d, d);
        for (int j = 0; j < d; ++j) {
            Vec xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            hess.col(j) = (body.gauge2_gradient(xp) - body.gauge2_gradient(xm)) / (2 * h);
        }
        const core::Mat sym = 0.5 * (hess + hess.transpose());
        Eigen::SelfAdjointEigenSolver<core::Mat> es(sym);
        worst = std::min(worst, es.eigenvalues()(0));
    }
    return worst;
}

bool pinched(const ConvexBody& body, double delta, double Delta, int samples, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        const double r = body.radial(core::random_unit_vector(body.dim(), rng));
        if (r < delta || r > Delta) return false;
    }
    return true;
}

double hausdorff_distance(const ConvexBody& a, const ConvexBody& b, int directions,
                          std::uint64_t seed) {
    SplitMix64 rng(seed);
    double d = 0.0;
    for (int s = 0; s < directions; ++s) {
        const Vec u = core::random_unit_vector(a.dim(), rng);
        d = std::max(d, std::abs(a.support(u, 128, rng.next_u64()) - b.support(u, 128, rng.next_u64())));
    }
    return d;
}

Vec BodyStretchMap::eval(const Vec& w) const {
    const double n = w.norm();
    if (n < 1e-12) return Vec::Zero(dim());
    // r(w/|w|) w = |w| w / sqrt(H(w)) by 2-homogeneity of H
    return w * (n / std::sqrt(body_.gauge2(w)));
}

core::Mat BodyStretchMap::jacobian(const Vec& w) const {
    const int d = dim();
    const double n = w.norm();
    if (n < 1e-9) {
        Vec e1 = Vec::Zero(d);
        e1[0] = 1.0;
        return body_.radial(e1) * core::Mat::Identity(d, d);
    }
    const double h = body_.gauge2(w);
    const Vec g = body_.gauge2_gradient(w);
    const double s = std::sqrt(h);
    // D [ |w| w / sqrt(H) ] = (|w|/s) I + w (w/(|w| s) - |w| g / (2 s^3))^T
    return (n / s) * core::Mat::Identity(d, d) +
           w * (w.transpose() / (n * s) - (n / (2.0 * s * s * s)) * g.transpose());
}

} // namespace shadowlab::contact
