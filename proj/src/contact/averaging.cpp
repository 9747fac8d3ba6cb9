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

#include "shadowlab/contact/averaging.hpp"

namespace shadowlab::contact {

namespace {

using C = std::complex<double>;
using geom::CPoly;
using geom::Monomial;

/// x_j = (z_j + zbar_j) / 2, y_j = (z_j - zbar_j) / (2i); variables stay interleaved.
CPoly to_phase_basis(const Poly& p) {
    const int nv = p.nvars();
    CPoly cp(nv);
    for (const auto& [m, c] : p.terms()) cp.add_term(m, C(c, 0.0));
    std::vector<CPoly> forms;
    forms.reserve(static_cast<std::size_t>(nv));
    for (int j = 0; j < nv / 2; ++j) {
        forms.push_back(CPoly::variable(nv, 2 * j) * C(0.5, 0.0) +
                        CPoly::variable(nv, 2 * j + 1) * C(0.5, 0.0));
        forms.push_back(CPoly::variable(nv, 2 * j) * C(0.0, -0.5) +
                        CPoly::variable(nv, 2 * j + 1) * C(0.0, 0.5));
    }
    return cp.substitute(forms);
}

/// z_j = x_j + i y_j, zbar_j = x_j - i y_j; imaginary residue must cancel.
Poly to_real_basis(const CPoly& cp) {
    const int nv = cp.nvars();
    std::vector<CPoly> forms;
    forms.reserve(static_cast<std::size_t>(nv));
    for (int j = 0; j < nv / 2; ++j) {
        forms.push_back(CPoly::variable(nv, 2 * j) * C(1.0, 0.0) +
                        CPoly::variable(nv, 2 * j + 1) * C(0.0, 1.0));
        forms.push_back(CPoly::variable(nv, 2 * j) * C(1.0, 0.0) +
                        CPoly::variable(nv, 2 * j + 1) * C(0.0, -1.0));
    }
    const CPoly real_rep = cp.substitute(forms);
    Poly out(nv);
    for (const auto& [m, c] : real_rep.terms()) {
        if (std::abs(c.imag()) > 1e-10)
            throw NumericalError("phase-basis round trip left an imaginary residue");
        if (std::abs(c.real()) > 1e-14) out.add_term(m, c.real());
    }
    return out;
}

int phase_frequency(const Monomial& m, int nv) {
    int nu = 0;
    for (int j = 0; j < nv / 2; ++j)
        nu += static_cast<int>(m.e[static_cast<std::size_t>(2 * j)]) -
              static_cast<int>(m.e[static_cast<std::size_t>(2 * j + 1)]);
    return nu;
}

} // namespace

SphereFunction reeb_average(const SphereFunction& rho) {
    const int nv = rho.ambient_dim();
    const CPoly cp = to_phase_basis(rho.poly());
    CPoly filtered(nv);
    for (const auto& [m, c] : cp.terms())
        if (phase_frequency(m, nv) == 0) filtered.add_term(m, c);
    return SphereFunction(nv, to_real_basis(filtered));
}

SphereFunction cohomological_solve(const SphereFunction& rho) {
    const int nv = rho.ambient_dim();
    const CPoly cp = to_phase_basis(rho.poly());
    CPoly solved(nv);
    for (const auto& [m, c] : cp.terms()) {
        const int nu = phase_frequency(m, nv);
        if (nu == 0) continue; // gauge: zero fiber mean
        solved.add_term(m, C(0.0, 1.0) * c / static_cast<double>(nu));
    }
    return SphereFunction(nv, to_real_basis(solved));
}

double invariance_defect(const SphereFunction& rho, int samples) {
    const SphereFunction diff = reeb_average(rho) - rho;
    return diff.sup_norm(samples);
}

} // namespace shadowlab::contact
