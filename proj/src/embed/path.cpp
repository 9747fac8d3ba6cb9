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

#include "shadowlab/embed/path.hpp"

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

void require_linear_at_zero(const std::vector<geom::Poly>& coeffs) {
    if (coeffs.empty()) throw InvalidInputError("PathFactor: empty coefficient list");
    if (!coeffs.front().homogeneous_part(1).is_zero())
        throw InvalidInputError("PathFactor: shear potential must have no linear term at t = 0");
}

} // namespace

PathFactor PathFactor::fixed_linear(core::SymplecticMatrix l) {
    PathFactor f;
    f.kind_ = Kind::Linear;
    f.two_n_ = l.dim();
    f.matrix_ = l.matrix();
    return f;
}

PathFactor PathFactor::rotation(int two_n, std::vector<RotationOp> ops) {
    if (two_n < 4 || two_n % 2 != 0) throw InvalidInputError("PathFactor::rotation: invalid dimension");
    for (const auto& op : ops) {
        const int n = two_n / 2;
        if (op.pair_i < 0 || op.pair_i >= n || (op.mixing && (op.pair_j < 0 || op.pair_j >= n || op.pair_j == op.pair_i)))
            throw InvalidInputError("PathFactor::rotation: pair index out of range");
    }
    PathFactor f;
    f.kind_ = Kind::Rotation;
    f.two_n_ = two_n;
    f.ops_ = std::move(ops);
    return f;
}

PathFactor PathFactor::pair_scaling(int two_n, int pair, double rate) {
    if (two_n < 4 || two_n % 2 != 0) throw InvalidInputError("PathFactor::pair_scaling: invalid dimension");
    if (pair < 0 || pair >= two_n / 2) throw InvalidInputError("PathFactor::pair_scaling: pair out of range");
    if (rate <= -1.0) throw InvalidInputError("PathFactor::pair_scaling: rate must exceed -1");
    PathFactor f;
    f.kind_ = Kind::PairScaling;
    f.two_n_ = two_n;
    f.pair_ = pair;
    f.rate_ = rate;
    return f;
}

PathFactor PathFactor::shear_positions(int two_n, std::vector<Poly> coefficients) {
    require_linear_at_zero(coefficients);
    PathFactor f;
    f.kind_ = Kind::ShearPositions;
    f.two_n_ = two_n;
    f.poly_coeffs_ = std::move(coefficients);
    return f;
}

PathFactor PathFactor::shear_momenta(int two_n, std::vector<Poly> coefficients) {
    require_linear_at_zero(coefficients);
    PathFactor f;
    f.kind_ = Kind::ShearMomenta;
    f.two_n_ = two_n;
    f.poly_coeffs_ = std::move(coefficients);
    return f;
}

PathFactor PathFactor::translation(int two_n, std::vector<Vec> coefficients) {
    if (coefficients.empty()) throw InvalidInputError("PathFactor::translation: empty coefficient list");
    if (coefficients.front().size() != two_n || coefficients.front().norm() != 0.0)
        throw InvalidInputError("PathFactor::translation: offset must vanish at t = 0");
    PathFactor f;
    f.kind_ = Kind::Translation;
    f.two_n_ = two_n;
    f.vec_coeffs_ = std::move(coefficients);
    return f;
}

int PathFactor::t_degree() const {
    switch (kind_) {
    case Kind::Linear:
    case Kind::Rotation:
    case Kind::PairScaling:
        return 0;
    case Kind::ShearPositions:
    case Kind::ShearMomenta:
        return static_cast<int>(poly_coeffs_.size()) - 1;
    case Kind::Translation:
        return static_cast<int>(vec_coeffs_.size()) - 1;
    }
    return 0;
}

PrimitiveMap PathFactor::at(double t) const {
    switch (kind_) {
    case Kind::Linear:
        return PrimitiveMap::linear(core::SymplecticMatrix(matrix_));
    case Kind::PairScaling:
        return PrimitiveMap::linear(
            core::SymplecticMatrix(core::pair_scaling_matrix(two_n_, pair_, 1.0 + rate_ * t)));
    case Kind::Rotation: {
        Mat m = Mat::Identity(two_n_, two_n_);
        for (const auto& op : ops_) {
            if (op.mixing)
                m = core::pair_mixing_matrix(two_n_, op.pair_i, op.pair_j, op.rate * t, op.phase) * m;
            else
                m = core::pair_rotation_matrix(two_n_, op.pair_i, op.rate * t) * m;
        }
        return PrimitiveMap::linear(core::SymplecticMatrix(m));
    }
    case Kind::ShearPositions:
    case Kind::ShearMomenta: {
        Poly g(poly_coeffs_.front().nvars());
        double tp = 1.0;
        for (const auto& c : poly_coeffs_) {
            g += c * tp;
            tp *= t;
        }
        return kind_ == Kind::ShearPositions ? PrimitiveMap::shear_positions(two_n_, std::move(g))
                                             : PrimitiveMap::shear_momenta(two_n_, std::move(g));
    }
    case Kind::Translation: {
        Vec v = Vec::Zero(two_n_);
        double tp = 1.0;
        for (const auto& c : vec_coeffs_) {
            v += c * tp;
            tp *= t;
        }
        return PrimitiveMap::translation(std::move(v));
    }
    }
    throw NumericalError("PathFactor::at: unreachable");
}

AnalyticPath::AnalyticPath(std::vector<PathFactor> factors, double domain_radius)
    : factors_(std::move(factors)), domain_radius_(domain_radius) {
    if (factors_.empty()) throw InvalidInputError("AnalyticPath: no factors");
    two_n_ = factors_.front().dim();
    for (const auto& f : factors_)
        if (f.dim() != two_n_) throw InvalidInputError("AnalyticPath: factor dimension mismatch");
    if (!(domain_radius_ > 0)) throw InvalidInputError("AnalyticPath: domain radius must be positive");
}

AnalyticPath AnalyticPath::constant_linear(core::SymplecticMatrix l, double domain_radius) {
    std::vector<PathFactor> f;
    f.push_back(PathFactor::fixed_linear(std::move(l)));
    return AnalyticPath(std::move(f), domain_radius);
}

int AnalyticPath::t_degree() const {
    int d = 0;
    for (const auto& f : factors_) d = std::max(d, f.t_degree());
    return d;
}

EmbeddingComposition AnalyticPath::at(double t) const {
    if (t < -1e-12 || t > 1.0 + 1e-12) throw InvalidInputError("AnalyticPath::at: t outside [0, 1]");
    std::vector<PrimitiveMap> prim;
    prim.reserve(factors_.size());
    for (const auto& f : factors_) prim.push_back(f.at(t));
    return EmbeddingComposition(std::move(prim), domain_radius_);
}

Mat AnalyticPath::linear_start() const { return at(0.0).jacobian(Vec::Zero(two_n_)); }

Mat AnalyticPath::linear_anchor_at(double t) const { return at(t).jacobian(Vec::Zero(two_n_)); }

AnalyticPath rescaled_path(const EmbeddingComposition& phi, const Vec& x) {
    if (x.size() != phi.dim()) throw InvalidInputError("rescaled_path: dimension mismatch");
    const double reach = phi.domain_radius() - x.norm();
    if (!(reach > 0)) throw InvalidInputError("rescaled_path: center outside the certified domain");

    const int two_n = phi.dim();
    std::vector<PathFactor> out;
    Vec z = x;
    for (const auto& f : phi.factors()) {
        switch (f.kind()) {
        case PrimitiveMap::Kind::Linear:
            out.push_back(PathFactor::fixed_linear(core::SymplecticMatrix(f.linear_matrix())));
            break;
        case PrimitiveMap::Kind::Translation:
            break;
        case PrimitiveMap::Kind::ShearPositions:
        case PrimitiveMap::Kind::ShearMomenta: {
            const bool pos = f.kind() == PrimitiveMap::Kind::ShearPositions;
            const Vec base = pos ? positions_of(z) : momenta_of(z);
            std::vector<double> shift(base.data(), base.data() + base.size());
            const Poly shifted = f.potential().shift_scale(shift, 1.0);
            // r^j coefficient is the homogeneous degree-(j+2) part of the shift
            std::vector<Poly> coeffs;
            const int deg = shifted.total_degree();
            for (int d = 2; d <= std::max(2, deg); ++d) coeffs.push_back(shifted.homogeneous_part(d));
            out.push_back(pos ? PathFactor::shear_positions(two_n, std::move(coeffs))
                              : PathFactor::shear_momenta(two_n, std::move(coeffs)));
            break;
        }
        }
        z = f.eval(z);
    }
    if (out.empty())
        out.push_back(PathFactor::fixed_linear(core::SymplecticMatrix(Mat::Identity(two_n, two_n))));
    // The blow-up at parameter r is defined on the ball of radius reach / r;
    // the path object is used for r well below reach, where radius >= 1.
    return AnalyticPath(std::move(out), std::max(1.5, reach));
}

} // namespace shadowlab::embed
