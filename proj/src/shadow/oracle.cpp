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

#include "shadowlab/shadow/oracle.hpp"

#include <cmath>
#include <numbers>

#include "shadowlab/core/parallel.hpp"

namespace shadowlab::shadow {

using Eigen::VectorXd;

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/// min_{|x| <= 1} |Q m(x) - target| by projected Levenberg-Marquardt.
class MembershipSolver {
public:
    MembershipSolver(const embed::DifferentiableMap& m, const Mat& shadow_coords, double member_tol)
        : m_(m), q_(shadow_coords), tol_(member_tol), dim_(m.dim()) {}

    struct Outcome {
        double dist;
        VectorXd argmin;
    };

    Outcome minimize_from(const VectorXd& start, const VectorXd& target) const {
        VectorXd x = start;
        if (x.norm() > 1.0) x /= x.norm();
        VectorXd r = q_ * m_.eval(x) - target;
        double best = r.norm();
        VectorXd best_x = x;
        double lambda = 1e-10;

        for (int it = 0; it < 60 && best > 0.2 * tol_; ++it) {
            const Mat j = q_ * m_.jacobian(x);
            const Mat jjt = j * j.transpose();
            Eigen::LLT<Mat> llt(jjt + lambda * Mat::Identity(jjt.rows(), jjt.cols()));
            if (llt.info() != Eigen::Success) {
                lambda = std::max(lambda * 100.0, 1e-8);
                continue;
            }
            VectorXd step = -j.transpose() * llt.solve(r);
            bool accepted = false;
            for (int bt = 0; bt < 6; ++bt) {
                VectorXd x_new = x + step;
                if (x_new.norm() > 1.0) x_new /= x_new.norm();
                VectorXd r_new = q_ * m_.eval(x_new) - target;
                if (r_new.norm() < r.norm()) {
                    x = x_new;
                    r = r_new;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (accepted) {
                lambda = std::max(lambda * 0.3, 1e-12);
                if (r.norm() < best) {
                    best = r.norm();
                    best_x = x;
                }
                if (step.norm() < 1e-13) break;
            } else {
                lambda *= 10.0;
                if (lambda > 1e4) break;
            }
        }
        return {best, best_x};
    }

    /// Multi-start variant; starts are the center, a warm point and
    /// deterministic antipodal pairs of random ball points.
    Outcome minimize(const VectorXd& warm, const VectorXd& target, SplitMix64& rng, int starts) const {
        Outcome best = minimize_from(warm, target);
        if (best.dist <= 0.2 * tol_) return best;
        Outcome from_center = minimize_from(VectorXd::Zero(dim_), target);
        if (from_center.dist < best.dist) best = from_center;
        for (int s = 0; s + 2 < starts && best.dist > 0.2 * tol_; s += 2) {
            const VectorXd pt = core::random_unit_vector(dim_, rng) * std::pow(rng.uniform(), 1.0 / dim_);
            for (const double sign : {1.0, -1.0}) {
                Outcome o = minimize_from(sign * pt, target);
                if (o.dist < best.dist) best = o;
            }
        }
        return best;
    }

private:
    const embed::DifferentiableMap& m_;
    const Mat& q_;
    double tol_;
    int dim_;
};

} // namespace

std::vector<double> radial_profile(const embed::DifferentiableMap& m, const SymplecticProjector& p,
                                   const QuadratureRule& rule, const OracleOptions& opts) {
    const int two_n = m.dim();
    if (p.ambient_dim() != two_n) throw InvalidInputError("radial_profile: dimension mismatch");
    const Mat shadow_coords = p.target().orthonormal_basis().transpose() * p.matrix();
    const VectorXd center = shadow_coords * m.eval(VectorXd::Zero(two_n));
    const MembershipSolver solver(m, shadow_coords, opts.member_tol);
    const SplitMix64 root(opts.seed);

    const auto& nodes = rule.nodes();
    std::vector<double> radii(nodes.size(), 0.0);
    std::vector<std::string> failures(nodes.size());

    parallel_for(nodes.size(), [&](std::size_t j) {
        SplitMix64 rng = root.fork(j);
        const VectorXd u = nodes[j].point;
        auto inside = [&](double s, VectorXd& warm) {
            const VectorXd target = center + s * u;
            auto out = solver.minimize(warm, target, rng, opts.multistart);
            warm = out.argmin;
            return out.dist <= opts.member_tol;
        };

        VectorXd warm = VectorXd::Zero(two_n);
        double lo = 0.0, hi = 0.5;
        int guard = 0;
        while (inside(hi, warm) && guard++ < 40) {
            lo = hi;
            hi *= 1.7;
        }
        if (guard >= 40) {
            failures[j] = "no exterior point found along ray";
            return;
        }
        // bisection to relative tolerance
        const int steps = static_cast<int>(std::ceil(std::log2((hi - lo) / (opts.ray_tol * hi)))) + 1;
        for (int b = 0; b < std::min(steps, 60); ++b) {
            const double mid = 0.5 * (lo + hi);
            (inside(mid, warm) ? lo : hi) = mid;
        }
        const double r = 0.5 * (lo + hi);
        radii[j] = r;

        if (opts.convexity_check && j % 16 == 0) {
            VectorXd probe = warm;
            for (double f : {0.45, 0.9})
                if (!inside(f * r, probe)) {
                    failures[j] = "interior probe escaped: membership not monotone along ray";
                    return;
                }
            for (double f : {1.08, 1.5})
                if (inside(f * r + 4 * opts.member_tol, probe)) {
                    failures[j] = "exterior probe re-entered: membership not monotone along ray";
                    return;
                }
        }
    });

    for (std::size_t j = 0; j < failures.size(); ++j)
        if (!failures[j].empty())
            throw NumericalError("radial_profile: ray " + std::to_string(j) + ": " + failures[j]);
    return radii;
}

namespace {

double lebesgue_from_profile(const QuadratureRule& rule, const std::vector<double>& radii, int k) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        const double term = rule.nodes()[j].weight_sigma * std::pow(radii[j], 2 * k) / (2 * k);
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

} // namespace

ShadowVolumeResult radial_oracle_volume(const embed::DifferentiableMap& m,
                                        const SymplecticProjector& p, const OracleOptions& opts) {
    const int k = p.k();
    if (k > 2) throw InvalidInputError("radial_oracle_volume: only k in {1, 2} is supported");
    const QuadratureRule rule = QuadratureRule::make(k, opts.order);
    const QuadratureRule half = QuadratureRule::make(k, std::max(4, opts.order / 2));

    const std::vector<double> radii = radial_profile(m, p, rule, opts);
    OracleOptions half_opts = opts;
    half_opts.convexity_check = false;
    const std::vector<double> radii_half = radial_profile(m, p, half, half_opts);

    const double density = factorial(k) * std::abs(p.target().gram_pfaffian());
    const double vol = density * lebesgue_from_profile(rule, radii, k);
    const double vol_half = density * lebesgue_from_profile(half, radii_half, k);

    ShadowVolumeResult r;
    r.method = ShadowVolumeResult::Method::RadialOracle;
    r.value = vol;
    r.error_estimate = std::abs(vol - vol_half) + 2 * k * opts.ray_tol * std::abs(vol);
    r.margin = vol - std::pow(std::numbers::pi, k);
    r.orientation = 1.0;
    return r;
}

} // namespace shadowlab::shadow
