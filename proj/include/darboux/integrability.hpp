/*
   Copyright 2026 The darboux-workbench authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "darboux.hpp"
#include "lie.hpp"
#include "linalg.hpp"

namespace darboux {

namespace detail {

inline void require_verified_pairs(const VectorField& X, const std::vector<DarbouxPair>& pairs) {
    for (const DarbouxPair& p : pairs)
        if (!is_darboux_pair(X, p.f, p.k))
            throw std::invalid_argument("pair (" + p.f.to_string() + "; " + p.k.to_string() +
                                        ") is not a verified Darboux pair");
}

// Coefficient-matching matrix: rows = monomials (descending grevlex) of the
// given polynomials plus extras, columns = the polynomials.
inline std::pair<QMatrix, std::vector<Monomial>> match_matrix(const std::vector<Poly>& cols,
                                                              const Poly& extra) {
    std::map<Monomial, bool, GrevlexLess> seen;
    for (const Poly& p : cols)
        for (const auto& [m, c] : p.terms()) {
            (void)c;
            seen.emplace(m, true);
        }
    for (const auto& [m, c] : extra.terms()) {
        (void)c;
        seen.emplace(m, true);
    }
    std::vector<Monomial> rows;
    for (auto it = seen.rbegin(); it != seen.rend(); ++it) rows.push_back(it->first);
    QMatrix M(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t r = 0; r < rows.size(); ++r) M.at(r, j) = cols[j].coeff(rows[r]);
    return {std::move(M), std::move(rows)};
}

// Exact min-max over an affine family x = x0 + V t: minimizes the l-infinity
// norm by vertex enumeration of the epigraph polyhedron; ties broken by the
// lexicographically smallest x among optimal vertices. V's columns (the
// homogeneous basis) are linearly independent, so vertices exist.
inline std::vector<Rat> min_linf_affine(const std::vector<Rat>& x0,
                                        const std::vector<std::vector<Rat>>& basis) {
    if (basis.empty()) return x0;
    const std::size_t p = x0.size();
    const std::size_t w = basis.size();
    const std::size_t dim = w + 1;  // (t_1..t_w, s)
    std::vector<std::vector<Rat>> G;
    std::vector<Rat> rhs;
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<Rat> gpos(dim, Rat(0)), gneg(dim, Rat(0));
        for (std::size_t j = 0; j < w; ++j) {
            gpos[j] = basis[j][i];
            gneg[j] = -basis[j][i];
        }
        gpos[w] = -1;
        gneg[w] = -1;
        G.push_back(std::move(gpos));
        rhs.push_back(-x0[i]);
        G.push_back(std::move(gneg));
        rhs.push_back(x0[i]);
    }
    std::vector<Rat> best_x;
    Rat best_s(-1);
    std::vector<std::size_t> pick(dim);
    auto evaluate_subset = [&]() {
        QMatrix A(dim, dim), B(dim, 1);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) A.at(r, c) = G[pick[r]][c];
            B.at(r, 0) = rhs[pick[r]];
        }
        QMatrix y;
        try {
            y = solve_square(A, B);
        } catch (const std::invalid_argument&) {
            return;  // singular subset
        }
        for (std::size_t k = 0; k < G.size(); ++k) {
            Rat lhs(0);
            for (std::size_t c = 0; c < dim; ++c) lhs += G[k][c] * y.at(c, 0);
            if (lhs > rhs[k]) return;  // infeasible vertex
        }
        const Rat s = y.at(dim - 1, 0);
        std::vector<Rat> x = x0;
        for (std::size_t j = 0; j < w; ++j)
            for (std::size_t i = 0; i < p; ++i) x[i] += basis[j][i] * y.at(j, 0);
        if (best_s < 0 || s < best_s || (s == best_s && x < best_x)) {
            best_s = s;
            best_x = std::move(x);
        }
    };
    auto choose = [&](auto&& self, std::size_t from, std::size_t depth) -> void {
        if (depth == dim) {
            evaluate_subset();
            return;
        }
        for (std::size_t k = from; k + (dim - depth) <= G.size(); ++k) {
            pick[depth] = k;
            self(self, k + 1, depth + 1);
        }
    };
    choose(choose, 0, 0);
    return best_x.empty() ? x0 : best_x;
}

}  // namespace detail

// Certificate for a Darboux-function Jacobian multiplier J = prod f_i^{l_i}:
// the exponents satisfy sum l_i k_i + div X = 0.
struct MultiplierCertificate {
    std::vector<DarbouxPair> pairs;
    std::vector<Rat> exponents;
    // Materialized iff all exponents are integers.
    std::optional<RatFunc> multiplier;
    bool residual_checked = false;
    // Homogeneous directions of the exponent system; each induces a Darboux
    // first integral sum lambda_i ln f_i.
    std::vector<std::vector<Rat>> integral_directions;
};

struct NoSolutionInfo {
    std::string detail;
};

// Solves sum l_i k_i = -div X by coefficient matching. With a nontrivial
// homogeneous space the returned exponents minimize the l-infinity norm
// (deterministic lexicographic tie-break).
inline std::variant<MultiplierCertificate, NoSolutionInfo> multiplier_exponents(
    const std::vector<DarbouxPair>& pairs, const VectorField& X) {
    detail::require_verified_pairs(X, pairs);
    const Poly div = divergence(X);
    std::vector<Poly> cofactors;
    cofactors.reserve(pairs.size());
    for (const DarbouxPair& p : pairs) cofactors.push_back(p.k);
    auto [M, rows] = detail::match_matrix(cofactors, div);
    std::vector<Rat> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) b[r] = -div.coeff(rows[r]);

    auto solved = solve_affine(M, b);
    if (std::holds_alternative<Inconsistent>(solved)) {
        const auto& inc = std::get<Inconsistent>(solved);
        std::string detail = "cofactor relation unmatched at:";
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (inc.residual[r] != 0)
                detail += " [" + Poly::term(X.ctx, rows[r], Rat(1)).to_string() +
                          " residual " + to_string(inc.residual[r]) + "]";
        return NoSolutionInfo{std::move(detail)};
    }
    auto& sol = std::get<AffineSolution>(solved);

    MultiplierCertificate cert;
    cert.pairs = pairs;
    cert.integral_directions = sol.homogeneous;
    cert.exponents = sol.homogeneous.empty()
                         ? sol.particular
                         : detail::min_linf_affine(sol.particular, sol.homogeneous);

    bool all_integer = true;
    for (const Rat& e : cert.exponents) all_integer = all_integer && is_integer(e);
    if (all_integer) {
        Poly num = Poly::constant(X.ctx, Rat(1));
        Poly den = Poly::constant(X.ctx, Rat(1));
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const Int e = numerator(cert.exponents[i]);
            if (e > 1000000 || e < -1000000)
                throw ResourceLimitError("multiplier exponent exceeds the materialization cap");
            const auto ee = static_cast<long long>(e);
            if (ee > 0) num = num * pairs[i].f.pow(static_cast<unsigned>(ee));
            else if (ee < 0) den = den * pairs[i].f.pow(static_cast<unsigned>(-ee));
        }
        RatFunc J(num, den);
        const RatFunc residual = lie_derivative(X, J) + J * RatFunc(div);
        if (!residual.is_zero())
            throw std::logic_error("multiplier certificate failed the identity X(J) = -J div X");
        cert.multiplier = std::move(J);
        cert.residual_checked = true;
    } else {
        // Fractional exponents: never materialize fractional powers; check
        // the identity through logarithmic derivatives instead.
        RatFunc sum = RatFunc(div);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            sum = sum + cert.exponents[i] * RatFunc(lie_derivative(X, pairs[i].f), pairs[i].f);
        if (!sum.is_zero())
            throw std::logic_error("multiplier certificate failed the log-derivative identity");
        cert.residual_checked = true;
    }
    return cert;
}

// Certificate for a Darboux first integral H = sum lambda_i ln f_i.
struct FirstIntegralCertificate {
    std::vector<DarbouxPair> pairs;
    std::vector<Rat> lambdas;
};

// Canonical basis of sum lambda_i k_i = 0; each basis vector is confirmed
// against the identity sum lambda_i X(f_i)/f_i = 0.
inline std::vector<FirstIntegralCertificate> first_integral_exponents(
    const VectorField& X, const std::vector<DarbouxPair>& pairs) {
    detail::require_verified_pairs(X, pairs);
    std::vector<Poly> cofactors;
    cofactors.reserve(pairs.size());
    for (const DarbouxPair& p : pairs) cofactors.push_back(p.k);
    auto [M, rows] = detail::match_matrix(cofactors, Poly::zero(X.ctx));
    (void)rows;
    std::vector<FirstIntegralCertificate> out;
    for (auto& lambda : nullspace(M)) {
        RatFunc sum(Poly::zero(X.ctx));
        for (std::size_t i = 0; i < pairs.size(); ++i)
            sum = sum + lambda[i] * RatFunc(lie_derivative(X, pairs[i].f), pairs[i].f);
        if (!sum.is_zero())
            throw std::logic_error("first-integral certificate failed the log identity");
        out.push_back(FirstIntegralCertificate{pairs, std::move(lambda)});
    }
    return out;
}

struct JacobianCheck {
    enum class Status { verified, constant_warning, failed };
    Status status;
    RatFunc residual;
};

// Exact residual X(J) + J div X; verified iff it vanishes and J is
// nonconstant. A vanishing residual with constant J is reported as a
// warning rather than an error (divergence-free fields produce these).
inline JacobianCheck verify_jacobian_multiplier(const VectorField& X, const RatFunc& J) {
    require_same_context(X.ctx, J.ctx());
    if (J.is_zero()) throw std::invalid_argument("verify_jacobian_multiplier: zero function");
    const RatFunc residual = lie_derivative(X, J) + J * RatFunc(divergence(X));
    if (!residual.is_zero()) return {JacobianCheck::Status::failed, residual};
    if (J.is_constant()) return {JacobianCheck::Status::constant_warning, residual};
    return {JacobianCheck::Status::verified, residual};
}

// Checks sum l_i X(f_i)/f_i + div X = 0 exactly; valid for fractional
// exponents without constructing fractional powers.
inline bool verify_log_derivative_multiplier(const VectorField& X,
                                             const std::vector<DarbouxPair>& pairs,
                                             const std::vector<Rat>& exponents) {
    if (exponents.size() != pairs.size())
        throw std::invalid_argument("exponent count must match pair count");
    detail::require_verified_pairs(X, pairs);
    RatFunc sum = RatFunc(divergence(X));
    for (std::size_t i = 0; i < pairs.size(); ++i)
        sum = sum + exponents[i] * RatFunc(lie_derivative(X, pairs[i].f), pairs[i].f);
    return sum.is_zero();
}

// Solves X(w0) + sum c_i X(w_i)/w_i = 0 for the constants c by clearing
// denominators and coefficient matching; the solution set is an affine
// space over the rationals.
inline std::optional<AffineSolution> solve_log_coefficients(const VectorField& X,
                                                            const RatFunc& w0,
                                                            const std::vector<RatFunc>& ws) {
    require_same_context(X.ctx, w0.ctx());
    const RatFunc xw0 = lie_derivative(X, w0);
    std::vector<RatFunc> g;
    g.reserve(ws.size());
    for (const RatFunc& w : ws) {
        require_same_context(X.ctx, w.ctx());
        if (w.is_zero()) throw std::invalid_argument("solve_log_coefficients: zero log argument");
        g.push_back(lie_derivative(X, w) / w);
    }
    // Multiply through by all denominators.
    std::vector<Poly> cols(ws.size(), Poly::zero(X.ctx));
    for (std::size_t i = 0; i < g.size(); ++i) {
        Poly t = g[i].num() * xw0.den();
        for (std::size_t j = 0; j < g.size(); ++j)
            if (j != i) t = t * g[j].den();
        cols[i] = std::move(t);
    }
    Poly rhs = -xw0.num();
    for (const RatFunc& gi : g) rhs = rhs * gi.den();

    auto [M, rows] = detail::match_matrix(cols, rhs);
    std::vector<Rat> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) b[r] = rhs.coeff(rows[r]);
    auto solved = solve_affine(M, b);
    if (std::holds_alternative<Inconsistent>(solved)) return std::nullopt;
    return std::get<AffineSolution>(std::move(solved));
}

struct LogTerm {
    Rat c;
    RatFunc w;
};

// H = w0 + sum c_i ln w_i with rational w_i.
struct ElementaryIntegralExpr {
    RatFunc w0;
    std::vector<LogTerm> terms;
};

// True iff X(w0) + sum c_i X(w_i)/w_i = 0 exactly.
inline bool verify_elementary_first_integral(const VectorField& X,
                                             const ElementaryIntegralExpr& expr) {
    RatFunc sum = lie_derivative(X, expr.w0);
    for (const LogTerm& t : expr.terms) {
        if (t.w.is_zero())
            throw std::invalid_argument("verify_elementary_first_integral: zero log argument");
        sum = sum + t.c * (lie_derivative(X, t.w) / t.w);
    }
    return sum.is_zero();
}

// Output of the Cramer-determinant multiplier reconstruction from n-1
// rational first integrals.
struct CramerData {
    std::vector<RatFunc> H;
    RatFunc Lambda;               // det of the Jacobian restricted to non-pivot columns
    std::vector<RatFunc> Lambdas; // one per non-pivot variable, ascending
    RatFunc h;                    // P_pivot / Lambda
    RatFunc J;                    // 1/h, the reconstructed multiplier
    std::size_t pivot = 0;        // 0-based index of the distinguished variable
    bool constant_warning = false;
};

struct DegenerateInput {
    IndependenceResult independence;
};

namespace detail {

inline RatFunc det_of_columns(const RfMatrix& J, const std::vector<std::size_t>& cols) {
    const Context& ctx = J.e.front().ctx();
    RfMatrix sq(J.rows, cols.size(), ctx);
    for (std::size_t i = 0; i < J.rows; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sq.at(i, j) = J.at(i, cols[j]);
    return rf_det(sq);
}

}  // namespace detail

// The identity d_1 Lambda_1 + ... + d_{n-1} Lambda_{n-1} - d_pivot Lambda,
// computed exactly. It vanishes identically for any smooth input family;
// this operation exists to machine-check that on rational functions.
inline RatFunc euler_identity_residual(const std::vector<RatFunc>& H, std::size_t pivot) {
    if (H.empty()) throw std::invalid_argument("euler_identity_residual: empty input");
    const Context& ctx = H.front().ctx();
    const std::size_t n = ctx->size();
    if (H.size() + 1 != n)
        throw std::invalid_argument("euler_identity_residual: need n-1 functions of n variables");
    if (pivot >= n) throw std::invalid_argument("euler_identity_residual: pivot out of range");
    const RfMatrix J = jacobian_matrix(H);
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c)
        if (c != pivot) cols.push_back(c);
    const RatFunc lambda = detail::det_of_columns(J, cols);
    RatFunc acc = -lambda.diff(pivot);
    for (std::size_t idx = 0; idx < cols.size(); ++idx) {
        std::vector<std::size_t> repl = cols;
        repl[idx] = pivot;
        acc = acc + detail::det_of_columns(J, repl).diff(cols[idx]);
    }
    return acc;
}

// Reconstructs the rational Jacobian multiplier from n-1 exactly-verified
// rational first integrals: picks the last pivot (n, n-1, ..., 1) whose
// Jacobian determinant Lambda is nonzero, forms h = P_pivot / Lambda and
// J = 1/h, and asserts every cross-consistency identity.
inline std::variant<CramerData, DegenerateInput> cramer_multiplier(const VectorField& X,
                                                                   const std::vector<RatFunc>& H,
                                                                   std::uint64_t seed) {
    const std::size_t n = X.dimension();
    if (H.size() + 1 != n)
        throw std::invalid_argument("cramer_multiplier: need n-1 first integrals");
    for (const RatFunc& h : H) {
        require_same_context(X.ctx, h.ctx());
        const RatFunc r = lie_derivative(X, h);
        if (!r.is_zero())
            throw std::invalid_argument("not a first integral: X(" + h.to_string() +
                                        ") = " + r.to_string());
    }
    const RfMatrix Jac = jacobian_matrix(H);

    for (std::size_t p = n; p-- > 0;) {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < n; ++c)
            if (c != p) cols.push_back(c);
        const RatFunc lambda = detail::det_of_columns(Jac, cols);
        if (lambda.is_zero()) continue;
        if (X.components[p].is_zero()) continue;  // h would vanish; unusable pivot

        CramerData data;
        data.H = H;
        data.pivot = p;
        data.Lambda = lambda;
        const RatFunc Ppivot(X.components[p]);
        data.h = Ppivot / lambda;
        data.J = lambda / Ppivot;
        for (std::size_t idx = 0; idx < cols.size(); ++idx) {
            std::vector<std::size_t> repl = cols;
            repl[idx] = p;
            data.Lambdas.push_back(detail::det_of_columns(Jac, repl));
        }

        if (!(data.h * data.Lambda == Ppivot))
            throw std::logic_error("cramer: h*Lambda != P_pivot");
        for (std::size_t idx = 0; idx < cols.size(); ++idx) {
            if (!(data.h * data.Lambdas[idx] == -RatFunc(X.components[cols[idx]])))
                throw std::logic_error("cramer: h*Lambda_s != -P_s");
        }
        if (!(data.J * data.h == RatFunc::constant(X.ctx, Rat(1))))
            throw std::logic_error("cramer: J*h != 1");
        const RatFunc residual = lie_derivative(X, data.J) + data.J * RatFunc(divergence(X));
        if (!residual.is_zero())
            throw std::logic_error("cramer: X(J) != -J div X");
        data.constant_warning = data.J.is_constant();
        return data;
    }
    return DegenerateInput{functionally_independent(H, seed)};
}

}  // namespace darboux
