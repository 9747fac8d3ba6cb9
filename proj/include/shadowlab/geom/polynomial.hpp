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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "shadowlab/core/errors.hpp"

namespace shadowlab::geom {

inline constexpr int kMaxVars = 12;

/// Exponent multi-index of a monomial; unused slots stay zero.
struct Monomial {
    std::array<std::uint8_t, kMaxVars> e{};

    bool operator<(const Monomial& o) const { return e < o.e; }
    bool operator==(const Monomial& o) const { return e == o.e; }
    int degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
};

/**
 * Sparse multivariate polynomial with a fixed variable count. Terms are kept
 * in a sorted map so iteration (and hence all floating-point reductions) is
 * deterministic.
 */
template <typename T>
class Polynomial {
public:
    Polynomial() : nvars_(0) {}
    explicit Polynomial(int nvars) : nvars_(nvars) {
        if (nvars < 0 || nvars > kMaxVars) throw InvalidInputError("Polynomial: variable count out of range");
    }

    static Polynomial constant(int nvars, T value) {
        Polynomial p(nvars);
        if (value != T{}) p.terms_[Monomial{}] = value;
        return p;
    }

    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        Monomial m;
        m.e[static_cast<std::size_t>(i)] = 1;
        p.terms_[m] = T{1};
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, T>& terms() const { return terms_; }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    void add_term(const Monomial& m, T coeff) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (coeff != T{}) terms_[m] = coeff;
        } else {
            it->second += coeff;
            if (it->second == T{}) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(T s) {
        if (s == T{}) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, T s) { return a *= s; }
    friend Polynomial operator*(T s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same(b);
        Polynomial r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (int i = 0; i < kMaxVars; ++i)
                    m.e[static_cast<std::size_t>(i)] =
                        static_cast<std::uint8_t>(ma.e[static_cast<std::size_t>(i)] + mb.e[static_cast<std::size_t>(i)]);
                r.add_term(m, ca * cb);
            }
        return r;
    }

    Polynomial pow(int p) const {
        Polynomial r = constant(nvars_, T{1});
        for (int i = 0; i < p; ++i) r = r * (*this);
        return r;
    }

    template <typename Point>
    auto eval(const Point& x) const {
        using R = decltype(T{} * x[0]);
        R total{};
        for (const auto& [m, c] : terms_) {
            R v = R{1} * c;
            for (int i = 0; i < nvars_; ++i)
                for (int p = 0; p < m.e[static_cast<std::size_t>(i)]; ++p) v *= x[i];
            total += v;
        }
        return total;
    }

    Polynomial derivative(int var) const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) {
            const int p = m.e[static_cast<std::size_t>(var)];
            if (p == 0) continue;
            Monomial d = m;
            d.e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(p - 1);
            r.add_term(d, c * static_cast<double>(p));
        }
        return r;
    }

    std::vector<Polynomial> gradient() const {
        std::vector<Polynomial> g;
        g.reserve(nvars_);
        for (int i = 0; i < nvars_; ++i) g.push_back(derivative(i));
        return g;
    }

    /**
     * Substitute x_i -> forms[i], an affine form in a new variable set.
     * Every forms[i] must share the same variable count.
     */
    Polynomial substitute(const std::vector<Polynomial>& forms) const {
        if (static_cast<int>(forms.size()) != nvars_)
            throw InvalidInputError("Polynomial::substitute: one form per variable required");
        const int out_vars = forms.empty() ? 0 : forms.front().nvars();
        Polynomial r(out_vars);
        for (const auto& [m, c] : terms_) {
            Polynomial term = constant(out_vars, c);
            for (int i = 0; i < nvars_; ++i)
                for (int p = 0; p < m.e[static_cast<std::size_t>(i)]; ++p) term = term * forms[i];
            r += term;
        }
        return r;
    }

    /// Substitute x_i -> shift[i] + scale * x_i (same variable set).
    Polynomial shift_scale(const std::vector<T>& shift, T scale) const {
        if (static_cast<int>(shift.size()) != nvars_)
            throw InvalidInputError("Polynomial::shift_scale: shift size mismatch");
        std::vector<Polynomial> forms;
        forms.reserve(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            Polynomial f = constant(nvars_, shift[static_cast<std::size_t>(i)]);
            f += variable(nvars_, i) * scale;
            forms.push_back(std::move(f));
        }
        return substitute(forms);
    }

    /// Drop coefficients with magnitude <= tol.
    Polynomial pruned(double tol) const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_)
            if (std::abs(c) > tol) r.terms_[m] = c;
        return r;
    }

    /// Keep only terms of total degree d.
    Polynomial homogeneous_part(int d) const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == d) r.terms_[m] = c;
        return r;
    }

    double coefficient_norm() const {
        double s = 0.0;
        for (const auto& [m, c] : terms_) s += std::abs(c);
        return s;
    }

private:
    void check_same(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw InvalidInputError("Polynomial: variable count mismatch");
    }

    int nvars_;
    std::map<Monomial, T> terms_;
};

using Poly = Polynomial<double>;
using CPoly = Polynomial<std::complex<double>>;

/// Exact integral of a monomial over the round unit sphere S^{d-1}:
/// zero unless all exponents are even, else 2 prod Gamma((a_i+1)/2) / Gamma((|a|+d)/2).
double sphere_monomial_integral(int d, const Monomial& m);

/// Exact integral of a polynomial over S^{d-1} against the round surface measure.
double sphere_integral(const Poly& p, int d);

} // namespace shadowlab::geom
