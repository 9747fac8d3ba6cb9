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

#include "shadowlab/contact/sphere_function.hpp"

#include <cmath>

#include "shadowlab/core/symplectic.hpp"

namespace shadowlab::contact {

SphereFunction::SphereFunction(int ambient_dim, Poly p) : dim_(ambient_dim), poly_(std::move(p)) {
    if (dim_ < 4 || dim_ % 2 != 0)
        throw InvalidInputError("SphereFunction: ambient dimension must be even and >= 4");
    if (poly_.nvars() != dim_)
        throw InvalidInputError("SphereFunction: polynomial variable count must match the ambient dimension");
    grad_ = poly_.gradient();
}

SphereFunction SphereFunction::constant(int ambient_dim, double value) {
    return SphereFunction(ambient_dim, Poly::constant(ambient_dim, value));
}

double SphereFunction::eval(const Vec& x) const {
    if (x.size() != dim_) throw InvalidInputError("SphereFunction::eval: dimension mismatch");
    return poly_.eval(x);
}

Vec SphereFunction::ambient_gradient(const Vec& x) const {
    Vec g(dim_);
    for (int i = 0; i < dim_; ++i) g[i] = grad_[static_cast<std::size_t>(i)].eval(x);
    return g;
}

double SphereFunction::integral() const { return geom::sphere_integral(poly_, dim_); }

double SphereFunction::surface_measure() const {
    return geom::sphere_integral(Poly::constant(dim_, 1.0), dim_);
}

double SphereFunction::polished_extremum(bool maximize, int samples, std::uint64_t seed) const {
    SplitMix64 rng(seed);
    const double flip = maximize ? 1.0 : -1.0;
    double best = -1e300;
    Vec best_x;
    for (int s = 0; s < samples; ++s) {
        Vec x = core::random_unit_vector(dim_, rng);
        const double v = flip * eval(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    // projected gradient ascent with a simple backtracking line search
    Vec x = best_x;
    double fx = best;
    double step = 0.1;
    for (int it = 0; it < 200 && step > 1e-14; ++it) {
        Vec g = flip * ambient_gradient(x);
        g -= x * g.dot(x); // tangential component
        if (g.norm() < 1e-14) break;
        Vec trial = x + step * g;
        trial /= trial.norm();
        const double ft = flip * eval(trial);
        if (ft > fx) {
            x = trial;
            fx = ft;
            step *= 1.4;
        } else {
            step *= 0.5;
        }
    }
    return flip * fx;
}

double SphereFunction::sampled_min(int samples, std::uint64_t seed) const {
    return polished_extremum(false, samples, seed);
}

double SphereFunction::sampled_max(int samples, std::uint64_t seed) const {
    return polished_extremum(true, samples, seed);
}

double SphereFunction::sup_norm(int samples, std::uint64_t seed) const {
    return std::max(std::abs(sampled_min(samples, seed)), std::abs(sampled_max(samples, seed)));
}

SphereFunction SphereFunction::operator+(const SphereFunction& o) const {
    return SphereFunction(dim_, poly_ + o.poly_);
}
SphereFunction SphereFunction::operator-(const SphereFunction& o) const {
    return SphereFunction(dim_, poly_ - o.poly_);
}
SphereFunction SphereFunction::operator*(double s) const { return SphereFunction(dim_, poly_ * s); }
SphereFunction SphereFunction::operator*(const SphereFunction& o) const {
    return SphereFunction(dim_, poly_ * o.poly_);
}

} // namespace shadowlab::contact
