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

#include <optional>
#include <vector>

#include "lie.hpp"
#include "linalg.hpp"

namespace darboux {

// Certificate X(f) = k*f for the ambient field.
struct DarbouxPair {
    Poly f;
    Poly k;
};

inline bool is_darboux_pair(const VectorField& X, const Poly& f, const Poly& k) {
    return lie_derivative(X, f) == k * f;
}

// Computes X(f) and divides by f; the exact quotient is the cofactor.
inline std::optional<DarbouxPair> verify_darboux(const VectorField& X, const Poly& f) {
    require_same_context(X.ctx, f.ctx());
    if (f.is_constant()) throw std::invalid_argument("verify_darboux: constant polynomial");
    const Poly lf = lie_derivative(X, f);
    auto k = Poly::exact_div(lf, f);
    if (!k) return std::nullopt;
    return DarbouxPair{f, std::move(*k)};
}

namespace detail {

constexpr std::size_t kBasisCap = 5000;

// All monomials of total degree <= N, descending grevlex (so the first
// coordinate of coefficient vectors is the grevlex-leading monomial).
inline std::vector<Monomial> monomial_basis(std::size_t nvars, unsigned N) {
    std::vector<Monomial> all;
    Monomial cur(nvars);
    // Depth-first enumeration of exponent vectors with degree budget.
    auto rec = [&](auto&& self, std::size_t var, unsigned budget) -> void {
        if (var == nvars) {
            all.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= budget; ++e) {
            cur.exponents[var] = e;
            self(self, var + 1, budget - e);
            if (all.size() > kBasisCap)
                throw ResourceLimitError("monomial basis exceeds the 5000-monomial cap");
        }
        cur.exponents[var] = 0;
    };
    rec(rec, 0, N);
    std::sort(all.begin(), all.end(), [](const Monomial& a, const Monomial& b) {
        return grevlex_less(b, a);
    });
    return all;
}

inline Poly poly_from_vector(const Context& ctx, const std::vector<Monomial>& basis,
                             const std::vector<Rat>& v) {
    Poly p(ctx);
    for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], v[i]);
    return p;
}

inline bool is_constant_vector(const std::vector<Monomial>& basis, const std::vector<Rat>& v) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (v[i] != 0 && !basis[i].is_constant()) return false;
    return true;
}

// Stacks the coefficient vectors of images g_j into a matrix whose rows are
// indexed by the given monomials (descending grevlex), columns by basis
// index. Monomials outside the row set are ignored (callers use this to
// split low- and high-degree blocks).
inline QMatrix coefficient_matrix(const std::vector<Poly>& images,
                                  const std::vector<Monomial>& row_monomials) {
    std::map<Monomial, std::size_t, GrevlexLess> row_of;
    for (std::size_t r = 0; r < row_monomials.size(); ++r)
        row_of.emplace(row_monomials[r], r);
    QMatrix M(row_monomials.size(), images.size());
    for (std::size_t j = 0; j < images.size(); ++j)
        for (const auto& [m, c] : images[j].terms()) {
            auto it = row_of.find(m);
            if (it != row_of.end()) M.at(it->second, j) = c;
        }
    return M;
}

inline std::vector<Monomial> collect_rows(const std::vector<Poly>& images,
                                          bool (*keep)(std::uint64_t, unsigned), unsigned N) {
    std::map<Monomial, bool, GrevlexLess> seen;
    for (const Poly& g : images)
        for (const auto& [m, c] : g.terms()) {
            (void)c;
            if (keep(m.degree(), N)) seen.emplace(m, true);
        }
    std::vector<Monomial> rows;
    for (auto it = seen.rbegin(); it != seen.rend(); ++it) rows.push_back(it->first);
    return rows;
}

}  // namespace detail

// Solves X(f) = k*f linearly over the monomial basis of degree <= N for a
// fixed cofactor k. Returns the canonical kernel basis, constants excluded.
inline std::vector<Poly> search_given_cofactor(const VectorField& X, const Poly& k, unsigned N) {
    require_same_context(X.ctx, k.ctx());
    if (N < 1) throw std::invalid_argument("search_given_cofactor: degree bound must be >= 1");
    if (!k.is_zero() && k.total_degree() > X.degree() - 1)
        throw std::invalid_argument("search_given_cofactor: cofactor degree exceeds deg(X) - 1");
    const auto basis = detail::monomial_basis(X.ctx->size(), N);
    std::vector<Poly> images;
    images.reserve(basis.size());
    for (const Monomial& m : basis) {
        const Poly fm = Poly::term(X.ctx, m, Rat(1));
        images.push_back(lie_derivative(X, fm) - k * fm);
    }
    const auto rows = detail::collect_rows(
        images, [](std::uint64_t, unsigned) { return true; }, N);
    const QMatrix M = detail::coefficient_matrix(images, rows);
    std::vector<Poly> out;
    for (const auto& v : nullspace(M)) {
        if (detail::is_constant_vector(basis, v)) continue;
        Poly f = detail::poly_from_vector(X.ctx, basis, v);
        if (!verify_darboux(X, f)) throw std::logic_error("search hit failed re-verification");
        out.push_back(std::move(f));
    }
    return out;
}

struct CofactorHit {
    Rat cofactor;
    std::vector<Poly> kernel;
};

struct SearchReport {
    unsigned degree_bound = 0;
    std::vector<CofactorHit> hits;  // sorted by cofactor ascending
    // Degree of the non-rational factor of the restricted characteristic
    // polynomial (0 when the candidate spectrum is fully rational).
    unsigned spectrum_remainder_degree = 0;
    // Rational candidates whose verified kernel was empty or constant-only.
    std::vector<Rat> empty_candidates;
};

// Finds every rational constant c admitting a nonconstant f with deg f <= N
// and X(f) = c*f. Candidates come from the spectrum of the exact restriction
// of the truncated Lie operator to the subspace where X maps degree <= N
// into degree <= N; each candidate is then confirmed by a full stacked-kernel
// computation, which closes the soundness gap of the projection.
inline SearchReport search_constant_cofactor(const VectorField& X, unsigned N) {
    if (N < 1) throw std::invalid_argument("search_constant_cofactor: degree bound must be >= 1");
    SearchReport report;
    report.degree_bound = N;
    const auto basis = detail::monomial_basis(X.ctx->size(), N);
    const std::size_t m = basis.size();

    std::vector<Poly> images;
    images.reserve(m);
    for (const Monomial& mono : basis)
        images.push_back(lie_derivative(X, Poly::term(X.ctx, mono, Rat(1))));

    // Block A: rows of degree <= N, aligned with the basis ordering.
    const QMatrix A = detail::coefficient_matrix(images, basis);
    // Block B: rows of degree > N.
    const auto high_rows = detail::collect_rows(
        images, [](std::uint64_t d, unsigned n) { return d > n; }, N);
    const QMatrix B = detail::coefficient_matrix(images, high_rows);

    const auto kernelB = nullspace(B);
    const std::size_t w = kernelB.size();
    if (w == 0) return report;

    QMatrix K(m, w);
    for (std::size_t j = 0; j < w; ++j)
        for (std::size_t i = 0; i < m; ++i) K.at(i, j) = kernelB[j][i];

    // S = (K^T K)^{-1} K^T A K, the restriction of A to ker B in the K
    // coordinates (orthogonal projection back onto the subspace).
    const QMatrix Kt = K.transpose();
    const QMatrix S = solve_square(Kt * K, Kt * (A * K));

    const UniPoly cp = char_poly(S);
    const std::vector<Rat> candidates = rational_roots(cp);

    // Remainder degree: what is left of char_poly(S) after dividing out all
    // rational linear factors with multiplicity.
    UniPoly rem = cp;
    for (const Rat& r : candidates) {
        while (true) {
            auto q = rem.divide_root(r);
            if (!q) break;
            rem = std::move(*q);
        }
    }
    report.spectrum_remainder_degree = static_cast<unsigned>(std::max(0l, rem.degree()));

    for (const Rat& c : candidates) {
        // Stacked system [B; A - cI]: kernel = Darboux polynomials of
        // degree <= N with cofactor exactly c.
        QMatrix stacked(B.rows + m, m);
        for (std::size_t i = 0; i < B.rows; ++i)
            for (std::size_t j = 0; j < m; ++j) stacked.at(i, j) = B.at(i, j);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                stacked.at(B.rows + i, j) = A.at(i, j) - (i == j ? c : Rat(0));
        std::vector<Poly> kernel;
        for (const auto& v : nullspace(stacked)) {
            if (detail::is_constant_vector(basis, v)) continue;
            Poly f = detail::poly_from_vector(X.ctx, basis, v);
            if (!is_darboux_pair(X, f, Poly::constant(X.ctx, c)))
                throw std::logic_error("constant-cofactor hit failed re-verification");
            kernel.push_back(std::move(f));
        }
        if (kernel.empty())
            report.empty_candidates.push_back(c);
        else
            report.hits.push_back(CofactorHit{c, std::move(kernel)});
    }
    return report;
}

}  // namespace darboux
