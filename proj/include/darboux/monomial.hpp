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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace darboux {

// Exponent vector of fixed length (one entry per ambient variable).
struct Monomial {
    std::vector<std::uint32_t> exponents;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exponents(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exponents(std::move(exps)) {}

    std::size_t size() const { return exponents.size(); }

    std::uint64_t degree() const {
        return std::accumulate(exponents.begin(), exponents.end(), std::uint64_t{0});
    }

    bool is_constant() const {
        return std::all_of(exponents.begin(), exponents.end(),
                           [](std::uint32_t e) { return e == 0; });
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exponents.size(); ++i)
            if (exponents[i] > other.exponents[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial out(a.exponents);
        for (std::size_t i = 0; i < out.exponents.size(); ++i) out.exponents[i] += b.exponents[i];
        return out;
    }

    // Exact quotient; caller guarantees b.divides(a).
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial out(a.exponents);
        for (std::size_t i = 0; i < out.exponents.size(); ++i) out.exponents[i] -= b.exponents[i];
        return out;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exponents == b.exponents;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

inline Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial out(a.exponents);
    for (std::size_t i = 0; i < out.exponents.size(); ++i)
        out.exponents[i] = std::min(out.exponents[i], b.exponents[i]);
    return out;
}

// Graded reverse lexicographic order: compare total degree first; on a tie
// the monomial with the larger exponent in the last differing variable is
// the smaller one.
struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = a.degree();
        const auto db = b.degree();
        if (da != db) return da < db;
        for (std::size_t i = a.exponents.size(); i-- > 0;) {
            if (a.exponents[i] != b.exponents[i]) return a.exponents[i] > b.exponents[i];
        }
        return false;
    }
};

inline bool grevlex_less(const Monomial& a, const Monomial& b) { return GrevlexLess{}(a, b); }

}  // namespace darboux
