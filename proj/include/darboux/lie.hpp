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

#include <random>
#include <vector>

#include "linalg.hpp"
#include "ratfunc.hpp"
#include "system.hpp"

namespace darboux {

// X(f) = sum_i P_i * df/dx_i, exactly.
inline Poly lie_derivative(const VectorField& X, const Poly& f) {
    require_same_context(X.ctx, f.ctx());
    Poly acc(f.ctx());
    for (std::size_t i = 0; i < X.components.size(); ++i)
        acc = acc + X.components[i] * f.diff(i);
    return acc;
}

// Rational overload, computed in one quotient to keep denominators shared:
// X(n/d) = (d*X(n) - n*X(d)) / d^2.
inline RatFunc lie_derivative(const VectorField& X, const RatFunc& f) {
    require_same_context(X.ctx, f.ctx());
    if (f.den().is_constant()) return RatFunc(lie_derivative(X, f.num()), f.den());
    return RatFunc(f.den() * lie_derivative(X, f.num()) - f.num() * lie_derivative(X, f.den()),
                   f.den() * f.den());
}

inline Poly divergence(const VectorField& X) {
    Poly acc(X.ctx);
    for (std::size_t i = 0; i < X.components.size(); ++i)
        acc = acc + X.components[i].diff(i);
    return acc;
}

// Matrix of rational functions, row-major.
struct RfMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<RatFunc> e;

    RfMatrix() = default;
    RfMatrix(std::size_t r, std::size_t c, const Context& ctx)
        : rows(r), cols(c), e(r * c, RatFunc(Poly::zero(ctx))) {}

    RatFunc& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    const RatFunc& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
};

// Row j holds the gradient of H_j: entry (j, i) = dH_j/dx_i.
inline RfMatrix jacobian_matrix(const std::vector<RatFunc>& H) {
    if (H.empty()) throw std::invalid_argument("jacobian_matrix: empty input");
    const Context& ctx = H.front().ctx();
    const std::size_t n = ctx->size();
    if (H.size() > n) throw std::invalid_argument("jacobian_matrix: more functions than variables");
    RfMatrix J(H.size(), n, ctx);
    for (std::size_t j = 0; j < H.size(); ++j) {
        require_same_context(H[j].ctx(), ctx);
        // One shared quotient per row so the n entries keep a common
        // denominator d^2 (helps downstream determinant cancellation).
        for (std::size_t i = 0; i < n; ++i) J.at(j, i) = H[j].diff(i);
    }
    return J;
}

// Determinant of a square rational-function matrix by cofactor expansion
// along the first row; fine at the ambient dimensions this tool targets.
inline RatFunc rf_det(const RfMatrix& M) {
    if (M.rows != M.cols) throw std::invalid_argument("rf_det: square matrix required");
    if (M.rows == 0) throw std::invalid_argument("rf_det: empty matrix");
    const Context& ctx = M.e.front().ctx();
    if (M.rows == 1) return M.at(0, 0);
    if (M.rows == 2)
        return M.at(0, 0) * M.at(1, 1) - M.at(0, 1) * M.at(1, 0);
    RatFunc acc(Poly::zero(ctx));
    for (std::size_t j = 0; j < M.cols; ++j) {
        if (M.at(0, j).is_zero()) continue;
        RfMatrix minor(M.rows - 1, M.cols - 1, ctx);
        for (std::size_t i = 1; i < M.rows; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < M.cols; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = M.at(i, c);
            }
        }
        const RatFunc term = M.at(0, j) * rf_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

struct IndependenceResult {
    bool independent = false;
    // Certificate point where the Jacobian has exact full rank (only set for
    // an Independent verdict; that verdict is exact, the negative one is
    // one-sided).
    std::vector<Rat> point;
};

// Probabilistic functional-independence test: evaluate the Jacobian at
// pseudo-random integer points in [-2^16, 2^16], skipping points where any
// denominator vanishes; R = 8 counted attempts.
inline IndependenceResult functionally_independent(const std::vector<RatFunc>& H,
                                                   std::uint64_t seed) {
    const RfMatrix J = jacobian_matrix(H);
    const std::size_t n = J.cols;
    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        return Rat(static_cast<long long>(rng() % 131073ull) - 65536ll);
    };
    constexpr int kAttempts = 8;
    int attempts = 0;
    int draws = 0;
    while (attempts < kAttempts && draws < kAttempts * 64) {
        ++draws;
        std::vector<Rat> point(n);
        for (auto& x : point) x = draw();
        QMatrix num(J.rows, J.cols);
        bool ok = true;
        for (std::size_t i = 0; i < J.rows && ok; ++i)
            for (std::size_t j = 0; j < J.cols && ok; ++j) {
                const auto v = J.at(i, j).eval(point);
                if (!v) ok = false;
                else num.at(i, j) = *v;
            }
        if (!ok) continue;  // denominator vanished; does not count
        if (rank(num) == J.rows) return IndependenceResult{true, std::move(point)};
        ++attempts;
    }
    return IndependenceResult{false, {}};
}

}  // namespace darboux
