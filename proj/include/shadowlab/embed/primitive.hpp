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

#include <vector>

#include "shadowlab/core/symplectic.hpp"
#include "shadowlab/geom/polynomial.hpp"

namespace shadowlab::embed {

using core::Mat;
using core::Vec;
using geom::Poly;

/**
 * One exactly-symplectic factor of an embedding composition:
 *
 *   linear          z -> L z                       (L symplectic)
 *   shear_positions (x, y) -> (x, y + grad g(x))   (polynomial potential g)
 *   shear_momenta   (x, y) -> (x + grad h(y), y)
 *   translation     z -> z + v
 *
 * Shear Jacobians have a symmetric off-diagonal block (the potential's
 * Hessian), so symplecticity holds to round-off by construction, and the
 * adjoint inverse is a closed-form triangular solve.
 */
class PrimitiveMap {
public:
    enum class Kind { Linear, ShearPositions, ShearMomenta, Translation };

    static PrimitiveMap linear(core::SymplecticMatrix l);
    /// Potential is a polynomial in the n position (resp. momentum) variables.
    static PrimitiveMap shear_positions(int two_n, Poly potential);
    static PrimitiveMap shear_momenta(int two_n, Poly potential);
    static PrimitiveMap translation(Vec v);
    /// Testing hook: a linear factor admitted without the symplecticity gate.
    static PrimitiveMap linear_unchecked(Mat m);

    Kind kind() const { return kind_; }
    int dim() const { return two_n_; }
    const Poly& potential() const { return potential_; }
    const Mat& linear_matrix() const { return matrix_; }
    const Vec& offset() const { return offset_; }

    Vec eval(const Vec& z) const;
    Mat jacobian(const Vec& z) const;
    /// Solves (Df(z)^T) v = w without forming an inverse.
    Vec adjoint_solve(const Vec& z, const Vec& w) const;

private:
    PrimitiveMap() = default;
    void prepare_shear();

    Kind kind_ = Kind::Translation;
    int two_n_ = 0;
    Mat matrix_;                       // Linear
    Eigen::PartialPivLU<Mat> adj_lu_;  // LU of matrix_^T
    Poly potential_;                   // shears
    std::vector<Poly> grad_;           // n entries
    std::vector<Poly> hess_;           // row-major n*n entries (symmetric)
    Vec offset_;                       // Translation
};

} // namespace shadowlab::embed
