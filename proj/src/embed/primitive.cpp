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

#include "shadowlab/embed/primitive.hpp"

namespace shadowlab::embed {

namespace {

Vec positions(const Vec& z) {
    Vec p(z.size() / 2);
    for (int i = 0; i < p.size(); ++i) p[i] = z[2 * i];
    return p;
}

Vec momenta(const Vec& z) {
    Vec p(z.size() / 2);
    for (int i = 0; i < p.size(); ++i) p[i] = z[2 * i + 1];
    return p;
}

} // namespace

PrimitiveMap PrimitiveMap::linear(core::SymplecticMatrix l) {
    PrimitiveMap f;
    f.kind_ = Kind::Linear;
    f.two_n_ = l.dim();
    f.matrix_ = l.matrix();
    f.adj_lu_.compute(f.matrix_.transpose());
    return f;
}

PrimitiveMap PrimitiveMap::linear_unchecked(Mat m) {
    PrimitiveMap f;
    f.kind_ = Kind::Linear;
    f.two_n_ = static_cast<int>(m.rows());
    f.matrix_ = std::move(m);
    f.adj_lu_.compute(f.matrix_.transpose());
    return f;
}

PrimitiveMap PrimitiveMap::shear_positions(int two_n, Poly potential) {
    if (two_n < 4 || two_n % 2 != 0) throw InvalidInputError("shear_positions: invalid dimension");
    if (potential.nvars() != two_n / 2)
        throw InvalidInputError("shear_positions: potential must have n variables");
    PrimitiveMap f;
    f.kind_ = Kind::ShearPositions;
    f.two_n_ = two_n;
    f.potential_ = std::move(potential);
    f.prepare_shear();
    return f;
}

PrimitiveMap PrimitiveMap::shear_momenta(int two_n, Poly potential) {
    if (two_n < 4 || two_n % 2 != 0) throw InvalidInputError("shear_momenta: invalid dimension");
    if (potential.nvars() != two_n / 2)
        throw InvalidInputError("shear_momenta: potential must have n variables");
    PrimitiveMap f;
    f.kind_ = Kind::ShearMomenta;
    f.two_n_ = two_n;
    f.potential_ = std::move(potential);
    f.prepare_shear();
    return f;
}

PrimitiveMap PrimitiveMap::translation(Vec v) {
    if (v.size() < 4 || v.size() % 2 != 0) throw InvalidInputError("translation: invalid dimension");
    PrimitiveMap f;
    f.kind_ = Kind::Translation;
    f.two_n_ = static_cast<int>(v.size());
    f.offset_ = std::move(v);
    return f;
}

void PrimitiveMap::prepare_shear() {
    const int n = two_n_ / 2;
    grad_ = potential_.gradient();
    hess_.clear();
    hess_.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hess_.push_back(grad_[static_cast<std::size_t>(i)].derivative(j));
}

Vec PrimitiveMap::eval(const Vec& z) const {
    if (z.size() != two_n_) throw InvalidInputError("PrimitiveMap::eval: dimension mismatch");
    switch (kind_) {
    case Kind::Linear:
        return matrix_ * z;
    case Kind::Translation:
        return z + offset_;
    case Kind::ShearPositions: {
        const Vec pos = positions(z);
        Vec out = z;
        for (int i = 0; i < pos.size(); ++i) out[2 * i + 1] += grad_[static_cast<std::size_t>(i)].eval(pos);
        return out;
    }
    case Kind::ShearMomenta: {
        const Vec mom = momenta(z);
        Vec out = z;
        for (int i = 0; i < mom.size(); ++i) out[2 * i] += grad_[static_cast<std::size_t>(i)].eval(mom);
        return out;
    }
    }
    throw NumericalError("PrimitiveMap::eval: unreachable");
}

Mat PrimitiveMap::jacobian(const Vec& z) const {
    if (z.size() != two_n_) throw InvalidInputError("PrimitiveMap::jacobian: dimension mismatch");
    switch (kind_) {
    case Kind::Linear:
        return matrix_;
    case Kind::Translation:
        return Mat::Identity(two_n_, two_n_);
    case Kind::ShearPositions: {
        const Vec pos = positions(z);
        Mat d = Mat::Identity(two_n_, two_n_);
        const int n = two_n_ / 2;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d(2 * i + 1, 2 * j) = hess_[static_cast<std::size_t>(i * n + j)].eval(pos);
        return d;
    }
    case Kind::ShearMomenta: {
        const Vec mom = momenta(z);
        Mat d = Mat::Identity(two_n_, two_n_);
        const int n = two_n_ / 2;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d(2 * i, 2 * j + 1) = hess_[static_cast<std::size_t>(i * n + j)].eval(mom);
        return d;
    }
    }
    throw NumericalError("PrimitiveMap::jacobian: unreachable");
}

Vec PrimitiveMap::adjoint_solve(const Vec& z, const Vec& w) const {
    switch (kind_) {
    case Kind::Linear:
        return adj_lu_.solve(w);
    case Kind::Translation:
        return w;
    case Kind::ShearPositions: {
        // (I + B^T) v = w with B[2i+1][2j] = H_ij: v_y = w_y, v_x = w_x - H^T v_y.
        const Vec pos = positions(z);
        const int n = two_n_ / 2;
        Vec v = w;
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += hess_[static_cast<std::size_t>(i * n + j)].eval(pos) * w[2 * i + 1];
            v[2 * j] -= s;
        }
        return v;
    }
    case Kind::ShearMomenta: {
        const Vec mom = momenta(z);
        const int n = two_n_ / 2;
        Vec v = w;
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += hess_[static_cast<std::size_t>(i * n + j)].eval(mom) * w[2 * i];
            v[2 * j + 1] -= s;
        }
        return v;
    }
    }
    throw NumericalError("PrimitiveMap::adjoint_solve: unreachable");
}

} // namespace shadowlab::embed
