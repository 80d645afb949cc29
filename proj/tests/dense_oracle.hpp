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

// Independent brute-force Darboux search for two-variable fields, used as an
// oracle against search_given_cofactor. Deliberately self-contained: dense
// coefficient grids, its own derivative/multiply routines, and a plain
// Gauss-Jordan kernel. It shares only the Rat scalar type with the library.

#include <darboux/rat.hpp>

#include <cstddef>
#include <vector>

namespace dense_oracle {

using darboux::Rat;

// Dense polynomial in two variables: c[i][j] is the coefficient of x^i y^j.
struct Dense2 {
    std::vector<std::vector<Rat>> c;

    explicit Dense2(std::size_t max_deg)
        : c(max_deg + 1, std::vector<Rat>(max_deg + 1, Rat(0))) {}

    std::size_t size() const { return c.size(); }
};

inline Dense2 mul(const Dense2& a, const Dense2& b) {
    Dense2 out(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a.c[i][j] == 0) continue;
            for (std::size_t k = 0; k < b.size(); ++k)
                for (std::size_t l = 0; l < b.size(); ++l)
                    if (b.c[k][l] != 0) out.c[i + k][j + l] += a.c[i][j] * b.c[k][l];
        }
    return out;
}

inline Dense2 diff_x(const Dense2& a) {
    Dense2 out(a.size());
    for (std::size_t i = 1; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out.c[i - 1][j] = a.c[i][j] * Rat(i);
    return out;
}

inline Dense2 diff_y(const Dense2& a) {
    Dense2 out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 1; j < a.size(); ++j) out.c[i][j - 1] = a.c[i][j] * Rat(j);
    return out;
}

inline Dense2 add(const Dense2& a, const Dense2& b) {
    Dense2 out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) {
            Rat v(0);
            if (i < a.size() && j < a.size()) v += a.c[i][j];
            if (i < b.size() && j < b.size()) v += b.c[i][j];
            out.c[i][j] = v;
        }
    return out;
}

inline Dense2 sub(const Dense2& a, const Dense2& b) {
    Dense2 out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) {
            Rat v(0);
            if (i < a.size() && j < a.size()) v += a.c[i][j];
            if (i < b.size() && j < b.size()) v -= b.c[i][j];
            out.c[i][j] = v;
        }
    return out;
}

// Plain Gauss-Jordan kernel over the rationals (row-major matrix).
inline std::vector<std::vector<Rat>> kernel(std::vector<std::vector<Rat>> m, std::size_t cols) {
    std::vector<std::size_t> pivot_col;
    std::size_t pr = 0;
    for (std::size_t col = 0; col < cols && pr < m.size(); ++col) {
        std::size_t sel = pr;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[pr], m[sel]);
        const Rat piv = m[pr][col];
        for (auto& v : m[pr]) v /= piv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == pr || m[i][col] == 0) continue;
            const Rat f = m[i][col];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[pr][j];
        }
        pivot_col.push_back(col);
        ++pr;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivot_col) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Monomial order for the oracle's coefficient vectors: (i, j) with i + j <= N,
// enumerated lexicographically. Intentionally different from the library's
// grevlex layout.
inline std::vector<std::pair<std::size_t, std::size_t>> monomials(std::size_t N) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i <= N; ++i)
        for (std::size_t j = 0; i + j <= N; ++j) out.emplace_back(i, j);
    return out;
}

// Kernel basis of f -> P dx f + Q dy f - k f over coefficients of degree <= N,
// constants excluded. Vectors are indexed by monomials(N).
inline std::vector<std::vector<Rat>> search(const Dense2& P, const Dense2& Q, const Dense2& k,
                                            std::size_t N, std::size_t field_deg) {
    const auto mons = monomials(N);
    const std::size_t out_deg = N + field_deg;
    const auto out_mons = monomials(out_deg);
    std::vector<std::vector<Rat>> rows(out_mons.size(), std::vector<Rat>(mons.size(), Rat(0)));
    for (std::size_t col = 0; col < mons.size(); ++col) {
        Dense2 f(N);
        f.c[mons[col].first][mons[col].second] = 1;
        // image = P fx + Q fy - k f
        const Dense2 image = sub(add(mul(P, diff_x(f)), mul(Q, diff_y(f))), mul(k, f));
        for (std::size_t r = 0; r < out_mons.size(); ++r) {
            const auto [i, j] = out_mons[r];
            if (i < image.size() && j < image.size()) rows[r][col] = image.c[i][j];
        }
    }
    auto basis = kernel(std::move(rows), mons.size());
    std::vector<std::vector<Rat>> filtered;
    for (auto& v : basis) {
        bool constant_only = true;
        for (std::size_t idx = 0; idx < mons.size(); ++idx)
            if (v[idx] != 0 && (mons[idx].first + mons[idx].second) > 0) constant_only = false;
        if (!constant_only) filtered.push_back(std::move(v));
    }
    return filtered;
}

// Rank of the matrix whose rows are the given vectors (oracle-local Gauss).
inline std::size_t row_rank(std::vector<std::vector<Rat>> m) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t pr = 0;
    for (std::size_t col = 0; col < cols && pr < m.size(); ++col) {
        std::size_t sel = pr;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[pr], m[sel]);
        for (std::size_t i = pr + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            const Rat f = m[i][col] / m[pr][col];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[pr][j];
        }
        ++pr;
    }
    return pr;
}

}  // namespace dense_oracle
