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

#include "shadowlab/contact/multiplier.hpp"

#include <cmath>

namespace shadowlab::contact {

ContactMultiplier::ContactMultiplier(int ambient_dim, std::vector<SphereFunction> coefficients,
                                     double t_range)
    : dim_(ambient_dim), coeffs_(std::move(coefficients)), t_range_(t_range) {
    if (dim_ < 4 || dim_ % 2 != 0)
        throw InvalidInputError("ContactMultiplier: ambient dimension must be even and >= 4");
    if (coeffs_.empty() || coeffs_.size() > 3)
        throw InvalidInputError("ContactMultiplier: expansion order must be within 1..3");
    for (const auto& c : coeffs_)
        if (c.ambient_dim() != dim_) throw InvalidInputError("ContactMultiplier: coefficient dimension mismatch");
    if (!(t_range_ > 0)) throw InvalidInputError("ContactMultiplier: t range must be positive");
    for (double t : {0.25 * t_range_, 0.5 * t_range_, t_range_})
        if (!(at(t).sampled_min(1024) > 0))
            throw InvalidInputError("ContactMultiplier: multiplier must stay positive on the t range");
}

const SphereFunction& ContactMultiplier::coefficient(int i) const {
    if (i < 1 || i > order()) throw InvalidInputError("ContactMultiplier::coefficient: order out of range");
    return coeffs_[static_cast<std::size_t>(i - 1)];
}

SphereFunction ContactMultiplier::at(double t) const {
    SphereFunction rho = SphereFunction::constant(dim_, 1.0);
    double tp = 1.0;
    for (const auto& c : coeffs_) {
        tp *= t;
        rho = rho + c * tp;
    }
    return rho;
}

double ContactMultiplier::eval(double t, const Vec& x) const {
    double v = 1.0, tp = 1.0;
    for (const auto& c : coeffs_) {
        tp *= t;
        v += tp * c.eval(x);
    }
    return v;
}

double contact_volume(const SphereFunction& rho) {
    const int m = rho.ambient_dim() / 2;
    double density = 0.5; // lambda ^ (d lambda)^{m-1} = ((m-1)!/2) d sigma
    for (int i = 2; i < m; ++i) density *= i;
    SphereFunction power = rho;
    for (int i = 1; i < m; ++i) power = power * rho;
    return density * power.integral();
}

double contact_volume(const ContactMultiplier& family, double t) { return contact_volume(family.at(t)); }

double constant_volume_normalizer(const ContactMultiplier& family, double t) {
    const double vol = contact_volume(family, t);
    if (!(vol > 0)) throw NumericalError("constant_volume_normalizer: non-positive volume");
    return std::pow(vol, -1.0 / family.m());
}

double relative_volume_normalizer(const ContactMultiplier& family, double t) {
    const double v0 = contact_volume(family, 0.0);
    const double vt = contact_volume(family, t);
    if (!(vt > 0)) throw NumericalError("relative_volume_normalizer: non-positive volume");
    return std::pow(v0 / vt, 1.0 / family.m());
}

ContactMultiplier volume_normalized(const ContactMultiplier& family) {
    const int dim = family.ambient_dim();
    const int m = family.m();
    const int order = family.order();

    // volume of rho_t^m as a polynomial in t, integrated coefficient-wise
    std::vector<SphereFunction> power = {SphereFunction::constant(dim, 1.0)};
    for (int rep = 0; rep < m; ++rep) {
        std::vector<SphereFunction> next(power.size() + static_cast<std::size_t>(order),
                                         SphereFunction::zero(dim));
        for (std::size_t i = 0; i < power.size(); ++i) {
            next[i] = next[i] + power[i];
            for (int j = 1; j <= order; ++j)
                next[i + static_cast<std::size_t>(j)] =
                    next[i + static_cast<std::size_t>(j)] + power[i] * family.coefficient(j);
        }
        power = std::move(next);
    }
    std::vector<double> v(power.size());
    for (std::size_t i = 0; i < power.size(); ++i) v[i] = power[i].integral();

    // c(t) = (v0 / v(t))^{1/m} as a series: solve c^m v / v0 = 1 order-by-order
    std::vector<double> r(static_cast<std::size_t>(order) + 1, 0.0);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(order) && i < v.size(); ++i) r[i] = v[i] / v[0];
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = 1.0;
    for (int i = 1; i <= order; ++i) {
        // t^i coefficient of c(t)^m r(t) must vanish; isolate m * c_i
        double acc = 0.0;
        // contribution of known orders: expand (sum c_j t^j)^m truncated
        std::vector<double> cm(static_cast<std::size_t>(i) + 1, 0.0);
        cm[0] = 1.0;
        for (int rep = 0; rep < m; ++rep) {
            std::vector<double> next(static_cast<std::size_t>(i) + 1, 0.0);
            for (int a = 0; a <= i; ++a)
                for (int b = 0; a + b <= i; ++b) {
                    const double cb = (b == i) ? 0.0 : c[static_cast<std::size_t>(b)]; // c_i unknown
                    next[static_cast<std::size_t>(a + b)] += cm[static_cast<std::size_t>(a)] * cb;
                }
            cm = std::move(next);
        }
        for (int j = 0; j <= i; ++j) acc += cm[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(i - j)];
        c[static_cast<std::size_t>(i)] = -acc / m;
    }

    // normalized coefficients: (c(t) rho_t - 1) collected by order
    std::vector<SphereFunction> out;
    for (int i = 1; i <= order; ++i) {
        SphereFunction ci = SphereFunction::constant(dim, c[static_cast<std::size_t>(i)]);
        for (int j = 1; j <= i; ++j)
            ci = ci + family.coefficient(j) * c[static_cast<std::size_t>(i - j)];
        out.push_back(ci);
    }
    return ContactMultiplier(dim, std::move(out), family.t_range());
}

} // namespace shadowlab::contact
