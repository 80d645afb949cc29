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
#include <stdexcept>
#include <string>
#include <utility>

#include "poly.hpp"

namespace darboux {

// Quotient of two polynomials. Normal form: denominator nonzero with integer
// coefficients of content 1 and positive grevlex-leading coefficient; any
// common single-monomial factor of numerator and denominator is cancelled;
// zero is 0/1. Full multivariate gcd reduction is deliberately not performed;
// equality is decided by cross-multiplication.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::constant(num_.ctx(), Rat(1))) {}

    explicit RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(num_.ctx(), Rat(1))) {}

    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        require_same_context(num_.ctx(), den_.ctx());
        if (den_.is_zero()) throw std::domain_error("zero denominator in rational function");
        normalize();
    }

    static RatFunc constant(Context ctx, Rat c) { return RatFunc(Poly::constant(std::move(ctx), std::move(c))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Context& ctx() const { return num_.ctx(); }

    bool is_zero() const { return num_.is_zero(); }

    // True iff the value lies in the coefficient field, i.e. num = c * den.
    bool is_constant() const {
        if (num_.is_zero()) return true;
        if (num_.is_constant() && den_.is_constant()) return true;
        const Rat c = num_.leading().second / den_.leading().second;
        return num_ == den_ * c;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        require_same_context(a.ctx(), b.ctx());
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        require_same_context(a.ctx(), b.ctx());
        if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RatFunc operator-(const RatFunc& a) {
        RatFunc out = a;
        out.num_ = -out.num_;
        return out;
    }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        require_same_context(a.ctx(), b.ctx());
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend RatFunc operator*(const RatFunc& a, const Rat& c) { return RatFunc(a.num_ * c, a.den_); }
    friend RatFunc operator*(const Rat& c, const RatFunc& a) { return a * c; }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        require_same_context(a.ctx(), b.ctx());
        if (b.is_zero()) throw std::domain_error("division by the zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    // Value equality via cross-multiplication; no gcd needed.
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        require_same_context(a.ctx(), b.ctx());
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // Structural identity (same normalized numerator and denominator).
    bool identical(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    RatFunc pow(unsigned e) const {
        return RatFunc(num_.pow(e), den_.pow(e));
    }

    // Exact quotient-rule derivative.
    RatFunc diff(std::size_t var) const {
        if (den_.is_constant())
            return RatFunc(num_.diff(var), den_);
        return RatFunc(num_.diff(var) * den_ - num_ * den_.diff(var), den_ * den_);
    }

    // Exact evaluation; nullopt when the denominator vanishes at the point.
    std::optional<Rat> eval(const std::vector<Rat>& point) const {
        const Rat d = den_.eval(point);
        if (d == 0) return std::nullopt;
        return num_.eval(point) / d;
    }

    // "num/(den)" with the denominator always parenthesized; plain
    // polynomial form when the denominator is 1.
    std::string to_string() const {
        if (den_ == Poly::constant(ctx(), Rat(1))) return num_.to_string();
        std::string n = num_.to_string();
        if (num_.terms().size() > 1) n = "(" + n + ")";
        return n + "/(" + den_.to_string() + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(num_.ctx(), Rat(1));
            return;
        }
        const Monomial common = monomial_gcd(num_.monomial_content(), den_.monomial_content());
        if (!common.is_constant()) {
            num_ = num_.shift_down(common);
            den_ = den_.shift_down(common);
        }
        Rat scale = den_.content();
        if (den_.leading().second < 0) scale = -scale;
        if (scale != 1) {
            const Rat inv = Rat(1) / scale;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_;
    Poly den_;
};

inline std::string to_string(const RatFunc& r) { return r.to_string(); }

}  // namespace darboux
