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

#include "shadowlab/shadow/chart.hpp"

#include <atomic>
#include <cmath>

#include "shadowlab/core/parallel.hpp"

namespace shadowlab::shadow {

using Eigen::VectorXd;

VectorXd singular_residual(const EmbeddingComposition& phi, const SymplecticProjector& p,
                           const VectorXd& x) {
    return p.adjoint_residual_matrix() * phi.adjoint_inverse_apply(x, x);
}

SeedFormula::SeedFormula(const Mat& linear, const SymplecticProjector& p) : k_(p.k()) {
    a_ = linear.transpose() * p.adjoint_range_basis();
}

VectorXd SeedFormula::sigma(const Vec& theta) const {
    const VectorXd w = a_ * SphereParam::zeta(k_, theta);
    return w / w.norm();
}

void SeedFormula::first(const Vec& theta, VectorXd& sigma, Mat& jac) const {
    const int pd = 2 * k_ - 1;
    const VectorXd w = a_ * SphereParam::zeta(k_, theta);
    const double u = w.norm();
    sigma = w / u;
    jac.resize(w.size(), pd);
    for (int i = 0; i < pd; ++i) {
        const VectorXd dwi = a_ * SphereParam::dzeta(k_, theta, i);
        jac.col(i) = dwi / u - w * (w.dot(dwi)) / (u * u * u);
    }
}

void SeedFormula::second(const Vec& theta, VectorXd& sigma, Mat& jac,
                         std::vector<std::vector<VectorXd>>& d2) const {
    const int pd = 2 * k_ - 1;
    const VectorXd w = a_ * SphereParam::zeta(k_, theta);
    const double u = w.norm();
    const double u3 = u * u * u, u5 = u3 * u * u;
    sigma = w / u;
    jac.resize(w.size(), pd);
    std::vector<VectorXd> dw(static_cast<std::size_t>(pd));
    for (int i = 0; i < pd; ++i) {
        dw[static_cast<std::size_t>(i)] = a_ * SphereParam::dzeta(k_, theta, i);
        const VectorXd& dwi = dw[static_cast<std::size_t>(i)];
        jac.col(i) = dwi / u - w * (w.dot(dwi)) / u3;
    }
    d2.assign(static_cast<std::size_t>(pd), std::vector<VectorXd>(static_cast<std::size_t>(pd)));
    for (int i = 0; i < pd; ++i)
        for (int j = i; j < pd; ++j) {
            const VectorXd ddw = a_ * SphereParam::d2zeta(k_, theta, i, j);
            const VectorXd& di = dw[static_cast<std::size_t>(i)];
            const VectorXd& dj = dw[static_cast<std::size_t>(j)];
            VectorXd val = ddw / u;
            val -= (di * (w.dot(dj)) + dj * (w.dot(di)) + w * (dj.dot(di) + w.dot(ddw))) / u3;
            val += 3.0 * w * (w.dot(di)) * (w.dot(dj)) / u5;
            d2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = val;
            d2[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = val;
        }
}

ShadowBoundaryChart::ShadowBoundaryChart(QuadratureRule rule, std::vector<ChartNode> nodes,
                                         double t_value, double residual_max, int max_newton_iters)
    : rule_(std::move(rule)), nodes_(std::move(nodes)), t_value_(t_value),
      residual_max_(residual_max), max_newton_iters_(max_newton_iters) {}

double ShadowBoundaryChart::min_frame_gram() const {
    double worst = 1.0;
    for (const auto& n : nodes_) {
        const int m = static_cast<int>(n.tangents.size());
        Mat g(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const auto& ti = n.tangents[static_cast<std::size_t>(i)];
                const auto& tj = n.tangents[static_cast<std::size_t>(j)];
                g(i, j) = ti.dot(tj) / (ti.norm() * tj.norm());
            }
        worst = std::min(worst, g.determinant());
    }
    return worst;
}

ShadowBoundaryChart seed_chart(const SymplecticMatrix& l, const SymplecticProjector& p,
                               const QuadratureRule& rule) {
    if (l.dim() != p.ambient_dim()) throw InvalidInputError("seed_chart: dimension mismatch");
    if (rule.k() != p.k()) throw InvalidInputError("seed_chart: rule and projector disagree on k");

    const SeedFormula seed(l.matrix(), p);
    const auto& qnodes = rule.nodes();
    std::vector<ChartNode> nodes(qnodes.size());
    Eigen::PartialPivLU<Mat> adj_lu(l.matrix().transpose());
    const Mat& rmat = p.adjoint_residual_matrix();

    std::atomic<double> residual_max{0.0};
    core::Vec dummy;
    parallel_for(qnodes.size(), [&](std::size_t j) {
        VectorXd sigma;
        Mat jac;
        seed.first(qnodes[j].theta, sigma, jac);
        ChartNode node;
        node.point = sigma;
        node.tangents.reserve(static_cast<std::size_t>(jac.cols()));
        for (int i = 0; i < jac.cols(); ++i) node.tangents.push_back(jac.col(i));
        const double res = (rmat * adj_lu.solve(sigma)).cwiseAbs().maxCoeff();
        double seen = residual_max.load();
        while (res > seen && !residual_max.compare_exchange_weak(seen, res)) {
        }
        nodes[j] = std::move(node);
    });

    return ShadowBoundaryChart(rule, std::move(nodes), 0.0, residual_max.load(), 0);
}

namespace {

/// Per-node Newton correction anchored at the evolving linear skeleton.
class NodeCorrector {
public:
    NodeCorrector(const EmbeddingComposition& phi, const SymplecticProjector& p,
                  const SeedFormula& seed, const TraceOptions& opts)
        : phi_(phi), rmat_(p.adjoint_residual_matrix()), seed_(seed), opts_(opts),
          two_n_(phi.dim()), res_dim_(static_cast<int>(rmat_.rows())) {}

    VectorXd residual(const VectorXd& x) const { return rmat_ * phi_.adjoint_inverse_apply(x, x); }

    /// Returns the corrected node; `iters` reports Newton iterations used and
    /// `final_residual` the converged max-norm of the reduced residual.
    ChartNode solve(const Vec& theta, const VectorXd& start, int& iters, double& final_residual) const {
        VectorXd sigma;
        Mat u;
        std::vector<std::vector<VectorXd>> d2;
        seed_.second(theta, sigma, u, d2);
        const int pd = static_cast<int>(u.cols());

        VectorXd x = start;
        VectorXd phi_vec = full_system(x, sigma, u);
        double err = phi_vec.cwiseAbs().maxCoeff();

        Mat jac(two_n_, two_n_);
        Eigen::PartialPivLU<Mat> lu;
        bool have_jac = false;
        iters = 0;
        for (; iters < opts_.max_iterations && err > 1e-13; ++iters) {
            if (!have_jac) {
                assemble_jacobian(x, u, jac);
                lu.compute(jac);
                have_jac = true;
            }
            const VectorXd step = lu.solve(phi_vec);
            double scale = 1.0;
            VectorXd x_new;
            VectorXd phi_new;
            double err_new = err;
            bool improved = false;
            for (int bt = 0; bt < 8; ++bt) {
                x_new = x - scale * step;
                phi_new = full_system(x_new, sigma, u);
                err_new = phi_new.cwiseAbs().maxCoeff();
                if (err_new < err) {
                    improved = true;
                    break;
                }
                scale *= 0.5;
            }
            if (!improved) {
                if (have_jac && iters > 0) {
                    have_jac = false; // refresh the Jacobian and retry once
                    continue;
                }
                throw NumericalError("trace_chart: Newton stalled (residual " + std::to_string(err) + ")");
            }
            // slow contraction: refresh the frozen Jacobian next round
            if (err_new > 0.25 * err) have_jac = false;
            x = x_new;
            phi_vec = phi_new;
            err = err_new;
        }
        if (err > opts_.tol_newton)
            throw NumericalError("trace_chart: Newton did not reach tolerance (residual " +
                                 std::to_string(err) + ")");

        x /= x.norm();
        final_residual = residual(x).cwiseAbs().maxCoeff();
        ChartNode node;
        node.point = x;

        // Implicit parametrization partials: J dx/dtheta_i = -dPhi/dtheta_i.
        assemble_jacobian(x, u, jac);
        lu.compute(jac);
        const VectorXd offset = x - sigma;
        node.tangents.reserve(static_cast<std::size_t>(pd));
        for (int i = 0; i < pd; ++i) {
            VectorXd rhs = VectorXd::Zero(two_n_);
            for (int c = 0; c < pd; ++c)
                rhs[res_dim_ + 1 + c] =
                    d2[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)].dot(offset) -
                    u.col(c).dot(u.col(i));
            node.tangents.push_back(lu.solve(-rhs));
        }
        return node;
    }

private:
    VectorXd full_system(const VectorXd& x, const VectorXd& sigma, const Mat& u) const {
        VectorXd out(two_n_);
        out.head(res_dim_) = residual(x);
        out[res_dim_] = x.squaredNorm() - 1.0;
        out.tail(u.cols()) = u.transpose() * (x - sigma);
        return out;
    }

    void assemble_jacobian(const VectorXd& x, const Mat& u, Mat& jac) const {
        const double h = opts_.fd_step;
        VectorXd xp, xm;
        for (int j = 0; j < two_n_; ++j) {
            xp = x;
            xm = x;
            xp[j] += h;
            xm[j] -= h;
            jac.col(j).head(res_dim_) = (residual(xp) - residual(xm)) / (2.0 * h);
        }
        jac.row(res_dim_) = 2.0 * x.transpose();
        jac.bottomRows(u.cols()) = u.transpose();
    }

    const EmbeddingComposition& phi_;
    const Mat& rmat_;
    const SeedFormula& seed_;
    const TraceOptions& opts_;
    int two_n_;
    int res_dim_;
};

} // namespace

ShadowBoundaryChart trace_chart(const AnalyticPath& path, const SymplecticProjector& p, double t,
                                const ShadowBoundaryChart& prev, const TraceOptions& opts) {
    if (t < prev.t_value() - 1e-15)
        throw InvalidInputError("trace_chart: continuation must move forward in t");
    if (t - prev.t_value() > opts.step_cap)
        throw InvalidInputError("trace_chart: step exceeds the continuation cap");

    const EmbeddingComposition phi = path.at(t);
    const SeedFormula seed(path.linear_anchor_at(t), p);
    const NodeCorrector corrector(phi, p, seed, opts);

    const auto& qnodes = prev.rule().nodes();
    std::vector<ChartNode> nodes(qnodes.size());
    std::vector<int> iters(qnodes.size(), 0);
    std::vector<double> residuals(qnodes.size(), 0.0);

    parallel_for(qnodes.size(), [&](std::size_t j) {
        try {
            int it = 0;
            double res = 0.0;
            nodes[j] = corrector.solve(qnodes[j].theta, prev.nodes()[j].point, it, res);
            iters[j] = it;
            residuals[j] = res;
        } catch (const NumericalError& e) {
            throw NumericalError("trace_chart: node " + std::to_string(j) + " at t = " +
                                 std::to_string(t) + ": " + e.what());
        }
    });

    double residual_max = 0.0;
    int max_iters = 0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        residual_max = std::max(residual_max, residuals[j]);
        max_iters = std::max(max_iters, iters[j]);
    }

    ShadowBoundaryChart chart(prev.rule(), std::move(nodes), t, residual_max, max_iters);
    if (chart.min_frame_gram() < opts.rank_tol)
        throw NumericalError("trace_chart: chart frame lost rank (beyond local regime)");
    return chart;
}

} // namespace shadowlab::shadow
