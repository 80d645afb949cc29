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

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "rat.hpp"

namespace darboux {

// Ordered list of variable names shared by all values of one polynomial ring.
using Context = std::shared_ptr<const std::vector<std::string>>;

inline Context make_context(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

inline bool same_context(const Context& a, const Context& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_context(const Context& a, const Context& b) {
    if (!same_context(a, b)) throw std::invalid_argument("polynomial context mismatch");
}

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: no stored coefficient is zero; every monomial has one exponent
// per context variable; the zero polynomial has an empty term map.
class Poly {
public:
    using TermMap = std::map<Monomial, Rat, GrevlexLess>;

    Poly() : ctx_(make_context({})) {}
    explicit Poly(Context ctx) : ctx_(std::move(ctx)) {}

    static Poly zero(Context ctx) { return Poly(std::move(ctx)); }

    static Poly constant(Context ctx, Rat c) {
        Poly p(std::move(ctx));
        if (c != 0) p.terms_.emplace(Monomial(p.nvars()), std::move(c));
        return p;
    }

    static Poly variable(Context ctx, std::size_t index) {
        Poly p(ctx);
        if (index >= p.nvars()) throw std::invalid_argument("variable index out of range");
        Monomial m(p.nvars());
        m.exponents[index] = 1;
        p.terms_.emplace(std::move(m), Rat(1));
        return p;
    }

    static Poly term(Context ctx, Monomial m, Rat c) {
        Poly p(std::move(ctx));
        if (m.size() != p.nvars()) throw std::invalid_argument("monomial length mismatch");
        if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    const Context& ctx() const { return ctx_; }
    std::size_t nvars() const { return ctx_->size(); }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
    }

    // Total degree; -1 for the zero polynomial.
    long total_degree() const {
        return terms_.empty() ? -1 : static_cast<long>(terms_.rbegin()->first.degree());
    }

    // Leading term under grevlex. Caller guarantees nonzero.
    const std::pair<const Monomial, Rat>& leading() const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    Rat coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    Rat constant_part() const { return coeff(Monomial(nvars())); }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        require_same_context(a.ctx_, b.ctx_);
        Poly out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, c);
        return out;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        require_same_context(a.ctx_, b.ctx_);
        Poly out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
        return out;
    }

    friend Poly operator-(const Poly& a) {
        Poly out(a.ctx_);
        for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
        return out;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same_context(a.ctx_, b.ctx_);
        Poly out(a.ctx_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
        return out;
    }

    friend Poly operator*(const Poly& a, const Rat& c) {
        Poly out(a.ctx_);
        if (c == 0) return out;
        for (const auto& [m, coef] : a.terms_) out.terms_.emplace(m, coef * c);
        return out;
    }
    friend Poly operator*(const Rat& c, const Poly& a) { return a * c; }

    Poly pow(unsigned e) const {
        Poly out = constant(ctx_, Rat(1));
        Poly base = *this;
        while (e > 0) {
            if (e & 1u) out = out * base;
            e >>= 1u;
            if (e) base = base * base;
        }
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Exact partial derivative with respect to one variable.
    Poly diff(std::size_t var) const {
        if (var >= nvars()) throw std::invalid_argument("variable index out of range");
        Poly out(ctx_);
        for (const auto& [m, c] : terms_) {
            const std::uint32_t e = m.exponents[var];
            if (e == 0) continue;
            Monomial d = m;
            d.exponents[var] = e - 1;
            out.terms_.emplace(std::move(d), c * Rat(e));
        }
        return out;
    }

    // Exact evaluation with cached per-variable powers.
    Rat eval(const std::vector<Rat>& point) const {
        if (point.size() != nvars()) throw std::invalid_argument("point dimension mismatch");
        std::vector<std::vector<Rat>> powers(nvars());
        for (std::size_t i = 0; i < nvars(); ++i) powers[i].push_back(Rat(1));
        Rat acc(0);
        for (const auto& [m, c] : terms_) {
            Rat v = c;
            for (std::size_t i = 0; i < nvars(); ++i) {
                const std::uint32_t e = m.exponents[i];
                if (e == 0) continue;
                auto& pw = powers[i];
                while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
                v *= pw[e];
            }
            acc += v;
        }
        return acc;
    }

    // Exact quotient a/b, or nullopt when b does not divide a.
    // Standard grevlex division by a single divisor: any leading-term miss
    // would land in the remainder for good, so it aborts early.
    static std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
        require_same_context(a.ctx_, b.ctx_);
        if (b.is_zero()) throw std::invalid_argument("division by the zero polynomial");
        Poly q(a.ctx_);
        Poly r = a;
        const auto& [mb, cb] = b.leading();
        while (!r.is_zero()) {
            const auto& [mr, cr] = r.leading();
            if (!mb.divides(mr)) return std::nullopt;
            Poly t = Poly::term(a.ctx_, mr / mb, cr / cb);
            q = q + t;
            r = r - t * b;
        }
        return q;
    }

    // Largest monomial dividing every term (the zero polynomial yields 1).
    Monomial monomial_content() const {
        Monomial m(nvars());
        bool first = true;
        for (const auto& [mono, c] : terms_) {
            (void)c;
            m = first ? mono : monomial_gcd(m, mono);
            first = false;
            if (m.is_constant()) break;
        }
        return m;
    }

    // Divides every term by the given monomial; caller guarantees divisibility.
    Poly shift_down(const Monomial& m) const {
        Poly out(ctx_);
        for (const auto& [mono, c] : terms_) out.terms_.emplace(mono / m, c);
        return out;
    }

    // Positive rational c such that (*this)/c has integer coefficients with
    // content 1. Zero polynomial yields 1.
    Rat content() const {
        Int num_gcd = 0, den_lcm = 1;
        for (const auto& [m, c] : terms_) {
            (void)m;
            num_gcd = boost::multiprecision::gcd(num_gcd, abs(numerator(c)));
            den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
        }
        if (num_gcd == 0) return Rat(1);
        return Rat(num_gcd, den_lcm);
    }

    // Canonical text form: terms in descending grevlex order, `^` powers,
    // explicit `*`, rational coefficients as a or a/b.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            const bool neg = c < 0;
            if (first) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            out += term_string(m, neg ? Rat(-c) : c);
            first = false;
        }
        return out;
    }

private:
    std::string term_string(const Monomial& m, const Rat& abs_coeff) const {
        std::string mono;
        for (std::size_t i = 0; i < nvars(); ++i) {
            const std::uint32_t e = m.exponents[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (*ctx_)[i];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) return darboux::to_string(abs_coeff);
        if (abs_coeff == 1) return mono;
        return darboux::to_string(abs_coeff) + "*" + mono;
    }

    Context ctx_;
    TermMap terms_;
};

inline std::string to_string(const Poly& p) { return p.to_string(); }

}  // namespace darboux
