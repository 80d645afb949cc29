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

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace darboux {

// Exact arbitrary-precision arithmetic. Rat is always kept normalized:
// gcd(|num|, den) = 1, den > 0, zero is 0/1 (cpp_rational maintains this).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline std::string to_string(const Rat& r) { return r.str(); }

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline Rat rat_pow(const Rat& base, unsigned exp) {
    using boost::multiprecision::pow;
    if (exp == 0) return Rat(1);
    return Rat(pow(numerator(base), exp), pow(denominator(base), exp));
}

inline int rat_sign(const Rat& r) {
    return numerator(r) == 0 ? 0 : (numerator(r) > 0 ? 1 : -1);
}

// Scales a rational vector to the canonical integer form: entries integral,
// content 1, first nonzero entry positive. The zero vector is unchanged.
inline std::vector<Rat> canonical_integer_scale(const std::vector<Rat>& v) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    Int den_lcm = 1;
    Int num_gcd = 0;
    for (const Rat& x : v) {
        if (numerator(x) == 0) continue;
        den_lcm = lcm(den_lcm, denominator(x));
        num_gcd = gcd(num_gcd, abs(numerator(x)));
    }
    if (num_gcd == 0) return v;
    Rat scale(den_lcm, num_gcd);
    for (const Rat& x : v) {
        if (numerator(x) != 0) {
            if (x < 0) scale = -scale;
            break;
        }
    }
    std::vector<Rat> out;
    out.reserve(v.size());
    for (const Rat& x : v) out.push_back(x * scale);
    return out;
}

// Raised when a configured resource cap (basis size, factorization work)
// would be exceeded; maps to a dedicated CLI exit code.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace darboux
