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

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rat.hpp"

namespace darboux {

// Dense row-major matrix over the exact rationals.
struct QMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rat> a;

    QMatrix() = default;
    QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    QMatrix transpose() const {
        QMatrix t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend QMatrix operator*(const QMatrix& x, const QMatrix& y) {
        if (x.cols != y.rows) throw std::invalid_argument("matrix dimension mismatch");
        QMatrix z(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                const Rat& v = x.at(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
            }
        return z;
    }

    friend QMatrix operator+(const QMatrix& x, const QMatrix& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("matrix dimension mismatch");
        QMatrix z = x;
        for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
        return z;
    }

    friend QMatrix operator*(const QMatrix& x, const Rat& c) {
        QMatrix z = x;
        for (auto& v : z.a) v *= c;
        return z;
    }

    friend bool operator==(const QMatrix& x, const QMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](const Rat& v) { return v == 0; });
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        if (v.size() != cols) throw std::invalid_argument("vector dimension mismatch");
        std::vector<Rat> out(rows, Rat(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (at(i, j) != 0) out[i] += at(i, j) * v[j];
        return out;
    }
};

namespace detail {

// Fraction-free Bareiss forward elimination. Rows are first scaled to
// integers; intermediate entries stay integral (two-by-two minor updates
// divided by the previous pivot are exact).
struct Echelon {
    std::vector<std::vector<Int>> m;
    std::vector<std::size_t> pivot_cols;
};

inline Echelon bareiss_echelon(const QMatrix& M) {
    using boost::multiprecision::lcm;
    const std::size_t r = M.rows, c = M.cols;
    std::vector<std::vector<Int>> w(r, std::vector<Int>(c));
    for (std::size_t i = 0; i < r; ++i) {
        Int den_lcm = 1;
        for (std::size_t j = 0; j < c; ++j) den_lcm = lcm(den_lcm, denominator(M.at(i, j)));
        for (std::size_t j = 0; j < c; ++j) {
            const Rat v = M.at(i, j) * Rat(den_lcm);
            w[i][j] = numerator(v);
        }
    }
    Echelon e;
    Int prev = 1;
    std::size_t pr = 0;
    for (std::size_t col = 0; col < c && pr < r; ++col) {
        std::size_t sel = pr;
        while (sel < r && w[sel][col] == 0) ++sel;
        if (sel == r) continue;
        std::swap(w[pr], w[sel]);
        for (std::size_t i = pr + 1; i < r; ++i) {
            for (std::size_t j = col + 1; j < c; ++j)
                w[i][j] = (w[pr][col] * w[i][j] - w[i][col] * w[pr][j]) / prev;
            w[i][col] = 0;
        }
        prev = w[pr][col];
        e.pivot_cols.push_back(col);
        ++pr;
    }
    e.m = std::move(w);
    return e;
}

}  // namespace detail

struct RrefResult {
    QMatrix m;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

// Reduced row echelon form: Bareiss echelon followed by exact rational
// back-substitution. Deterministic (first nonzero pivot, no reordering
// beyond row swaps).
inline RrefResult rref(const QMatrix& M) {
    detail::Echelon e = detail::bareiss_echelon(M);
    RrefResult out;
    out.pivot_cols = e.pivot_cols;
    out.m = QMatrix(M.rows, M.cols);
    const std::size_t nr = e.pivot_cols.size();
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < M.cols; ++j) out.m.at(i, j) = Rat(e.m[i][j]);
    for (std::size_t i = nr; i-- > 0;) {
        const std::size_t p = e.pivot_cols[i];
        const Rat piv = out.m.at(i, p);
        for (std::size_t j = p; j < M.cols; ++j) out.m.at(i, j) /= piv;
        for (std::size_t k = 0; k < i; ++k) {
            const Rat f = out.m.at(k, p);
            if (f == 0) continue;
            for (std::size_t j = p; j < M.cols; ++j) out.m.at(k, j) -= f * out.m.at(i, j);
        }
    }
    return out;
}

inline std::size_t rank(const QMatrix& M) { return detail::bareiss_echelon(M).pivot_cols.size(); }

// Canonical kernel basis: one vector per free column of the RREF, scaled to
// integer entries with content 1 and positive first nonzero entry.
inline std::vector<std::vector<Rat>> nullspace(const QMatrix& M) {
    const RrefResult r = rref(M);
    std::vector<bool> is_pivot(M.cols, false);
    for (std::size_t p : r.pivot_cols) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < M.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(M.cols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) v[r.pivot_cols[i]] = -r.m.at(i, f);
        basis.push_back(canonical_integer_scale(v));
    }
    return basis;
}

struct AffineSolution {
    std::vector<Rat> particular;
    std::vector<std::vector<Rat>> homogeneous;
};

struct Inconsistent {
    // Residual M*x - b of the best-effort particular solution; its nonzero
    // rows witness the rows that cannot be matched.
    std::vector<Rat> residual;
};

// Solves M x = b; on success the homogeneous part is the canonical kernel
// basis of M.
inline std::variant<AffineSolution, Inconsistent> solve_affine(const QMatrix& M,
                                                               const std::vector<Rat>& b) {
    if (b.size() != M.rows) throw std::invalid_argument("right-hand side dimension mismatch");
    QMatrix aug(M.rows, M.cols + 1);
    for (std::size_t i = 0; i < M.rows; ++i) {
        for (std::size_t j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
        aug.at(i, M.cols) = b[i];
    }
    const RrefResult r = rref(aug);
    bool consistent = true;
    for (std::size_t p : r.pivot_cols)
        if (p == M.cols) consistent = false;
    std::vector<Rat> particular(M.cols, Rat(0));
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
        if (r.pivot_cols[i] < M.cols) particular[r.pivot_cols[i]] = r.m.at(i, M.cols);
    if (!consistent) {
        std::vector<Rat> res = M.apply(particular);
        for (std::size_t i = 0; i < res.size(); ++i) res[i] -= b[i];
        return Inconsistent{std::move(res)};
    }
    return AffineSolution{std::move(particular), nullspace(M)};
}

// Solves A X = B for square nonsingular A by rational Gauss-Jordan.
inline QMatrix solve_square(QMatrix A, QMatrix B) {
    if (A.rows != A.cols || B.rows != A.rows) throw std::invalid_argument("solve_square shape");
    const std::size_t n = A.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && A.at(sel, col) == 0) ++sel;
        if (sel == n) throw std::invalid_argument("solve_square: singular matrix");
        if (sel != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(A.at(col, j), A.at(sel, j));
            }
        if (sel != col)
            for (std::size_t j = 0; j < B.cols; ++j) std::swap(B.at(col, j), B.at(sel, j));
        const Rat piv = A.at(col, col);
        for (std::size_t j = 0; j < n; ++j) A.at(col, j) /= piv;
        for (std::size_t j = 0; j < B.cols; ++j) B.at(col, j) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const Rat f = A.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) A.at(i, j) -= f * A.at(col, j);
            for (std::size_t j = 0; j < B.cols; ++j) B.at(i, j) -= f * B.at(col, j);
        }
    }
    return B;
}

// Univariate polynomial, coefficients lowest degree first, leading
// coefficient nonzero unless zero polynomial.
struct UniPoly {
    std::vector<Rat> coeffs;

    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> c) : coeffs(std::move(c)) { trim(); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }

    QMatrix eval_matrix(const QMatrix& A) const {
        if (A.rows != A.cols) throw std::invalid_argument("eval_matrix: square matrix required");
        QMatrix acc(A.rows, A.cols);
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            acc = acc * A;
            acc = acc + QMatrix::identity(A.rows) * coeffs[i];
        }
        return acc;
    }

    // Exact synthetic division by (t - r); nullopt when r is not a root.
    std::optional<UniPoly> divide_root(const Rat& r) const {
        if (is_zero()) return std::nullopt;
        std::vector<Rat> q(coeffs.size() - 1, Rat(0));
        Rat carry(0);
        for (std::size_t i = coeffs.size(); i-- > 1;) {
            carry = coeffs[i] + carry * r;
            q[i - 1] = carry;
        }
        if (coeffs[0] + carry * r != 0) return std::nullopt;
        return UniPoly(std::move(q));
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs == b.coeffs; }
};

// Monic characteristic polynomial det(tI - M) via Faddeev-LeVerrier; all
// divisions are by integers and exact over the rationals.
inline UniPoly char_poly(const QMatrix& M) {
    if (M.rows != M.cols) throw std::invalid_argument("char_poly: square matrix required");
    const std::size_t n = M.rows;
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    if (n == 0) return UniPoly({Rat(1)});
    QMatrix Mk = M;
    auto trace = [](const QMatrix& A) {
        Rat t(0);
        for (std::size_t i = 0; i < A.rows; ++i) t += A.at(i, i);
        return t;
    };
    c[n - 1] = -trace(Mk);
    for (std::size_t k = 2; k <= n; ++k) {
        Mk = M * (Mk + QMatrix::identity(n) * c[n - k + 1]);
        c[n - k] = -trace(Mk) / Rat(k);
    }
    return UniPoly(std::move(c));
}

namespace detail {

inline void factorize(Int n, std::map<Int, unsigned>& out, unsigned depth = 0) {
    using boost::multiprecision::gcd;
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (Int p = 2; p * p <= n && p < 100000; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (n < Int(100000) * Int(100000) ||
        boost::multiprecision::miller_rabin_test(n, 32)) {
        ++out[n];
        return;
    }
    if (depth > 64) throw ResourceLimitError("integer factorization work cap exceeded");
    // Pollard rho (Brent variant) for the composite remainder.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull + depth);
    while (true) {
        Int c = Int(rng() % 1000) + 1;
        Int x = Int(rng() % 1000) + 2, y = x, d = 1;
        auto f = [&](const Int& v) { return (v * v + c) % n; };
        std::uint64_t iter = 0;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd(abs(x - y), n);
            if (++iter > 2000000) throw ResourceLimitError("integer factorization work cap exceeded");
        }
        if (d != n) {
            factorize(d, out, depth + 1);
            factorize(n / d, out, depth + 1);
            return;
        }
    }
}

inline std::vector<Int> divisors(const Int& n) {
    std::map<Int, unsigned> f;
    factorize(n, f);
    std::vector<Int> divs{1};
    for (const auto& [p, e] : f) {
        const std::size_t sz = divs.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
        if (divs.size() > 200000) throw ResourceLimitError("divisor enumeration cap exceeded");
    }
    return divs;
}

}  // namespace detail

// All rational roots of p, each once, ascending: clear denominators, strip
// powers of t, then rational-root-theorem candidates checked by exact
// evaluation.
inline std::vector<Rat> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<Rat> roots;
    std::vector<Rat> c = p.coeffs;
    std::size_t low = 0;
    while (low < c.size() && c[low] == 0) ++low;
    if (low > 0) roots.push_back(Rat(0));
    std::vector<Rat> cc(c.begin() + low, c.end());
    if (cc.size() <= 1) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    const std::vector<Rat> scaled = canonical_integer_scale(cc);
    const Int a0 = abs(numerator(scaled.front()));
    const Int an = abs(numerator(scaled.back()));
    UniPoly prim{std::vector<Rat>(scaled)};
    for (const Int& pd : detail::divisors(a0)) {
        for (const Int& qd : detail::divisors(an)) {
            using boost::multiprecision::gcd;
            if (gcd(pd, qd) != 1) continue;
            const Rat cand(pd, qd);
            if (prim.eval(cand) == 0) roots.push_back(cand);
            if (prim.eval(-cand) == 0) roots.push_back(-cand);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace darboux
