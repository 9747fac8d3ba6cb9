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

#include "shadowlab/contact/normal_form.hpp"

#include <cmath>
#include <functional>

#include "shadowlab/contact/averaging.hpp"
#include "shadowlab/core/parallel.hpp"
#include "shadowlab/core/symplectic.hpp"

namespace shadowlab::contact {

namespace {

using core::Mat;

/**
 * Contact vector field of Hamiltonian h for the round form lambda-bar|_S:
 * lambda-bar(Y) = h and i_Y omega = dh(R0) lambda-bar - dh on the tangent
 * space, with R0 = 2 J x. dh(R0) is supplied as a precomputed function.
 */
class ContactCorrectionField {
public:
    ContactCorrectionField(SphereFunction h, SphereFunction dh_r0)
        : h_(std::move(h)), dh_r0_(std::move(dh_r0)) {}

    int dim() const { return h_.ambient_dim(); }

    Vec field(const Vec& x) const {
        const int d = dim();
        Eigen::HouseholderQR<Mat> qr(x);
        Mat q = qr.householderQ() * Mat::Identity(d, d);
        const Mat tan = q.rightCols(d - 1);

        const double h_val = h_.eval(x);
        const double dh_r0 = dh_r0_.eval(x);
        const Vec grad = h_.ambient_gradient(x);

        Mat a(d, d - 1);
        Vec rhs(d);
        for (int c = 0; c < d - 1; ++c) {
            const Vec tc = tan.col(c);
            for (int r = 0; r < d - 1; ++r) a(r, c) = core::omega_eval(tc, tan.col(r));
            a(d - 1, c) = 0.5 * core::omega_eval(x, tc); // lambda-bar(Y)
        }
        for (int r = 0; r < d - 1; ++r) {
            const Vec tr = tan.col(r);
            rhs[r] = dh_r0 * 0.5 * core::omega_eval(x, tr) - grad.dot(tr);
        }
        rhs[d - 1] = h_val;
        const Vec coef = a.colPivHouseholderQr().solve(rhs);
        if ((a * coef - rhs).norm() > 1e-8)
            throw NumericalError("ContactCorrectionField: pointwise solve failed");
        return tan * coef;
    }

    /// Flows (x, log kappa) for time s; d log kappa / ds = dh(R0) along the path.
    void flow(Vec& x, double& log_kappa, double s) const {
        const int steps = std::max(8, static_cast<int>(std::ceil(std::abs(s) / 0.01)));
        const double dt = s / steps;
        for (int i = 0; i < steps; ++i) {
            // RK4 on the augmented state
            const Vec k1 = field(x);
            const double a1 = dh_r0_.eval(x);
            const Vec x2 = (x + 0.5 * dt * k1).normalized();
            const Vec k2 = field(x2);
            const double a2 = dh_r0_.eval(x2);
            const Vec x3 = (x + 0.5 * dt * k2).normalized();
            const Vec k3 = field(x3);
            const double a3 = dh_r0_.eval(x3);
            const Vec x4 = (x + dt * k3).normalized();
            const Vec k4 = field(x4);
            const double a4 = dh_r0_.eval(x4);
            x = (x + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)).normalized();
            log_kappa += (dt / 6.0) * (a1 + 2 * a2 + 2 * a3 + a4);
        }
    }

private:
    SphereFunction h_;
    SphereFunction dh_r0_;
};

/// All ambient monomials of degree <= deg in d variables.
std::vector<geom::Monomial> monomial_basis(int d, int deg) {
    std::vector<geom::Monomial> out;
    geom::Monomial cur;
    std::function<void(int, int)> rec = [&](int var, int remaining) {
        if (var == d) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur.e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
            rec(var + 1, remaining - e);
        }
        cur.e[static_cast<std::size_t>(var)] = 0;
    };
    rec(0, deg);
    return out;
}

} // namespace

ContactMultiplier normal_form_reduce(const ContactMultiplier& family, int m,
                                     const NormalFormOptions& opts) {
    const int dim = family.ambient_dim();
    if (m < 1 || m > family.order())
        throw InvalidInputError("normal_form_reduce: order outside the family's range");
    for (int i = 1; i < m; ++i)
        if (invariance_defect(family.coefficient(i)) > opts.invariance_tol)
            throw InvalidInputError("normal_form_reduce: order " + std::to_string(i) +
                                    " is not yet fiber invariant");

    const SphereFunction rho_m = family.coefficient(m);
    const SphereFunction rho_bar = reeb_average(rho_m);
    const SphereFunction oscillation = rho_m - rho_bar;
    if (oscillation.sup_norm(2048) < 1e-12) return family; // already reduced

    // correction Hamiltonian: d/dtheta h0 = rho_bar - rho; as a contact
    // Hamiltonian for R0 = 2 J x use h = h0 / 2, so dh(R0) = rho_bar - rho.
    const SphereFunction h0 = cohomological_solve(rho_m);
    const ContactCorrectionField correction(h0 * 0.5, rho_bar - rho_m);

    // pointwise pullback at a t-stencil, then per-point Vandermonde solve
    SplitMix64 rng(opts.seed);
    std::vector<Vec> samples;
    samples.reserve(static_cast<std::size_t>(opts.sample_points));
    for (int i = 0; i < opts.sample_points; ++i)
        samples.push_back(core::random_unit_vector(dim, rng));

    const int order = family.order();
    const auto& stencil = opts.t_stencil;
    if (static_cast<int>(stencil.size()) < order)
        throw InvalidInputError("normal_form_reduce: stencil too small for the family order");

    Mat values(static_cast<int>(samples.size()), static_cast<int>(stencil.size()));
    parallel_for(samples.size(), [&](std::size_t i) {
        for (std::size_t q = 0; q < stencil.size(); ++q) {
            const double t = stencil[q];
            Vec x = samples[i];
            double log_kappa = 0.0;
            correction.flow(x, log_kappa, std::pow(t, m));
            values(static_cast<int>(i), static_cast<int>(q)) =
                family.eval(t, x) * std::exp(log_kappa);
        }
    });

    // coefficients in t per sample point (least squares over the stencil)
    Mat vander(static_cast<int>(stencil.size()), order);
    for (std::size_t q = 0; q < stencil.size(); ++q) {
        double tp = 1.0;
        for (int j = 1; j <= order; ++j) {
            tp *= stencil[q];
            vander(static_cast<int>(q), j - 1) = tp;
        }
    }
    const Eigen::ColPivHouseholderQR<Mat> vander_qr(vander);
    Mat coef_samples(static_cast<int>(samples.size()), order);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        Vec rhs = values.row(static_cast<int>(i)).transpose();
        rhs.array() -= 1.0;
        coef_samples.row(static_cast<int>(i)) = vander_qr.solve(rhs).transpose();
    }

    // least-squares refit of each order to the ambient polynomial basis
    const auto basis = monomial_basis(dim, opts.fit_degree);
    Mat design(static_cast<int>(samples.size()), static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            double v = 1.0;
            for (int var = 0; var < dim; ++var)
                for (int e = 0; e < basis[b].e[static_cast<std::size_t>(var)]; ++e)
                    v *= samples[i][var];
            design(static_cast<int>(i), static_cast<int>(b)) = v;
        }
    const Eigen::ColPivHouseholderQR<Mat> design_qr(design);

    std::vector<SphereFunction> out;
    for (int j = 1; j <= order; ++j) {
        if (j < m) {
            out.push_back(family.coefficient(j));
            continue;
        }
        const Vec target = coef_samples.col(j - 1);
        const Vec fitted = design_qr.solve(target);
        const double residual = (design * fitted - target).norm() /
                                std::sqrt(static_cast<double>(samples.size()));
        if (residual > opts.fit_tol)
            throw NumericalError("normal_form_reduce: refit residual " + std::to_string(residual) +
                                 " at order " + std::to_string(j));
        if (j == m) {
            // the fitted order-m coefficient must agree with the exact average
            geom::Poly p(dim);
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (std::abs(fitted[static_cast<int>(b)]) > 1e-12)
                    p.add_term(basis[b], fitted[static_cast<int>(b)]);
            const double agree = (SphereFunction(dim, p) - rho_bar).sup_norm(1024);
            if (agree > 10 * opts.fit_tol)
                throw NumericalError("normal_form_reduce: averaged coefficient mismatch " +
                                     std::to_string(agree));
            out.push_back(rho_bar); // exact average
        } else {
            geom::Poly p(dim);
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (std::abs(fitted[static_cast<int>(b)]) > 1e-12)
                    p.add_term(basis[b], fitted[static_cast<int>(b)]);
            out.push_back(SphereFunction(dim, p));
        }
    }
    return ContactMultiplier(dim, std::move(out), family.t_range());
}

TrivialityReport formal_triviality_order(const ContactMultiplier& family, int max_order,
                                         const NormalFormOptions& opts) {
    if (max_order < 1 || max_order > family.order())
        throw InvalidInputError("formal_triviality_order: max order outside the family's range");

    TrivialityReport report;
    ContactMultiplier current = family;
    for (int m = 1; m <= max_order; ++m) {
        const SphereFunction avg = reeb_average(current.coefficient(m));
        const double sup = avg.sup_norm(4096);
        if (sup > 1e-8) {
            report.trivial = false;
            report.obstruction_order = m;
            report.min_average = avg.sampled_min(4096);
            report.max_average = avg.sampled_max(4096);
            report.sup_average = sup;
            return report;
        }
        current = normal_form_reduce(current, m, opts);
        report.stages.push_back(current);
    }
    report.trivial = true;
    report.obstruction_order = 0;
    return report;
}

} // namespace shadowlab::contact
