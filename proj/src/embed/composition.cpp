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

#include "shadowlab/embed/composition.hpp"

#include <cmath>

namespace shadowlab::embed {

namespace {

Vec positions_of(const Vec& z) {
    Vec p(z.size() / 2);
    for (int i = 0; i < p.size(); ++i) p[i] = z[2 * i];
    return p;
}

Vec momenta_of(const Vec& z) {
    Vec p(z.size() / 2);
    for (int i = 0; i < p.size(); ++i) p[i] = z[2 * i + 1];
    return p;
}

} // namespace

EmbeddingComposition::EmbeddingComposition(std::vector<PrimitiveMap> factors, double domain_radius)
    : factors_(std::move(factors)), domain_radius_(domain_radius) {
    if (factors_.empty()) throw InvalidInputError("EmbeddingComposition: no factors");
    two_n_ = factors_.front().dim();
    for (const auto& f : factors_)
        if (f.dim() != two_n_) throw InvalidInputError("EmbeddingComposition: factor dimension mismatch");
    if (!(domain_radius_ > 0)) throw InvalidInputError("EmbeddingComposition: domain radius must be positive");
}

EmbeddingComposition EmbeddingComposition::identity(int two_n, double domain_radius) {
    std::vector<PrimitiveMap> f;
    f.push_back(PrimitiveMap::linear(core::SymplecticMatrix(Mat::Identity(two_n, two_n))));
    return EmbeddingComposition(std::move(f), domain_radius);
}

void EmbeddingComposition::check_domain(const Vec& x) const {
    if (x.size() != two_n_) throw InvalidInputError("EmbeddingComposition: dimension mismatch");
    if (x.norm() > domain_radius_ * (1.0 + 1e-12))
        throw InvalidInputError("EmbeddingComposition: point outside certified domain");
}

Vec EmbeddingComposition::eval(const Vec& x) const {
    check_domain(x);
    Vec z = x;
    for (const auto& f : factors_) z = f.eval(z);
    return z;
}

Mat EmbeddingComposition::jacobian(const Vec& x) const {
    check_domain(x);
    Vec z = x;
    Mat d = Mat::Identity(two_n_, two_n_);
    for (const auto& f : factors_) {
        d = f.jacobian(z) * d;
        z = f.eval(z);
    }
    return d;
}

Vec EmbeddingComposition::adjoint_inverse_apply(const Vec& x, const Vec& w) const {
    check_domain(x);
    // (D phi^*)^{-1} = (D_m^*)^{-1} ... (D_1^*)^{-1}; the first factor's solve
    // is applied first, each at its own intermediate point.
    Vec z = x;
    Vec v = w;
    for (const auto& f : factors_) {
        v = f.adjoint_solve(z, v);
        z = f.eval(z);
    }
    return v;
}

double EmbeddingComposition::symplecticity_residual(int sample_count, SplitMix64& rng) const {
    const Mat omega = core::omega_matrix(two_n_);
    double worst = 0.0;
    for (int s = 0; s < sample_count; ++s) {
        Vec x = core::random_unit_vector(two_n_, rng) *
                (domain_radius_ * std::pow(rng.uniform(), 1.0 / two_n_));
        const Mat d = jacobian(x);
        worst = std::max(worst, (d.transpose() * omega * d - omega).norm());
    }
    return worst;
}

double EmbeddingComposition::certify_injectivity_radius(const std::vector<PrimitiveMap>& factors,
                                                        double max_radius, SplitMix64& rng,
                                                        int samples_per_radius) {
    EmbeddingComposition probe(factors, max_radius * (1.0 + 1e-9));
    const int two_n = probe.dim();
    const Mat d0 = probe.jacobian(Vec::Zero(two_n));
    Eigen::JacobiSVD<Mat> svd(d0);
    const double bound = 0.5 * svd.singularValues()(svd.singularValues().size() - 1);

    auto holds_at = [&](double radius) {
        SplitMix64 local = rng.fork(static_cast<std::uint64_t>(radius * 1e6));
        for (int s = 0; s < samples_per_radius; ++s) {
            const Vec x = core::random_unit_vector(two_n, local) * radius * std::sqrt(local.uniform());
            if ((probe.jacobian(x) - d0).norm() > bound) return false;
        }
        return true;
    };

    if (holds_at(max_radius)) return max_radius;
    double lo = 0.0, hi = max_radius;
    for (int it = 0; it < 24; ++it) {
        const double mid = 0.5 * (lo + hi);
        (holds_at(mid) ? lo : hi) = mid;
    }
    return lo;
}

EmbeddingComposition rescaled_family(const EmbeddingComposition& phi, const Vec& x, double r) {
    if (x.size() != phi.dim()) throw InvalidInputError("rescaled_family: dimension mismatch");
    const double reach = phi.domain_radius() - x.norm();
    if (!(r >= 0) || r >= reach)
        throw InvalidInputError("rescaled_family: r exceeds the certified window radius");

    const int two_n = phi.dim();
    std::vector<PrimitiveMap> out;
    Vec z = x; // orbit of the window center through the factors
    for (const auto& f : phi.factors()) {
        switch (f.kind()) {
        case PrimitiveMap::Kind::Linear:
            out.push_back(f);
            break;
        case PrimitiveMap::Kind::Translation:
            break; // conjugates to the identity
        case PrimitiveMap::Kind::ShearPositions:
        case PrimitiveMap::Kind::ShearMomenta: {
            const bool pos = f.kind() == PrimitiveMap::Kind::ShearPositions;
            const Vec base = pos ? positions_of(z) : momenta_of(z);
            std::vector<double> shift(base.data(), base.data() + base.size());
            // g(base + u) regrouped by homogeneity; degree-d parts pick up r^{d-2}.
            const Poly shifted = f.potential().shift_scale(shift, 1.0);
            Poly g(shifted.nvars());
            double rpow = 1.0;
            for (int d = 2; d <= shifted.total_degree(); ++d) {
                g += shifted.homogeneous_part(d) * rpow;
                rpow *= r;
            }
            out.push_back(pos ? PrimitiveMap::shear_positions(two_n, std::move(g))
                              : PrimitiveMap::shear_momenta(two_n, std::move(g)));
            break;
        }
        }
        z = f.eval(z);
    }
    const double new_radius = r > 0 ? reach / r : 1e6;
    return EmbeddingComposition(std::move(out), std::min(new_radius, 1e6));
}

AffineWindowMap::AffineWindowMap(const EmbeddingComposition& phi, Vec center, double r)
    : phi_(phi), center_(std::move(center)), r_(r) {
    if (!(r > 0)) throw InvalidInputError("AffineWindowMap: r must be positive");
    if (center_.norm() + r_ > phi.domain_radius() * (1.0 + 1e-12))
        throw InvalidInputError("AffineWindowMap: window leaves the certified domain");
}

} // namespace shadowlab::embed
