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

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratfunc.hpp"
#include "system.hpp"

namespace darboux {

// Syntax or semantic violation with a 1-based source location.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                             ": " + msg),
          line_(line),
          col_(col) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

namespace detail {

enum class Tok { Ident, Int, String, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, Prime, Semi, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

// Tokenizes one line; '#' starts a comment. The trailing End token carries
// the position just past the last character.
inline std::vector<Token> lex_line(std::string_view s, std::size_t line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char ch = s[i];
        const std::size_t col = i + 1;
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, std::string(s.substr(i, j - i)), line_no, col});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), line_no, col});
            i = j;
            continue;
        }
        if (ch == '"') {
            std::size_t j = i + 1;
            while (j < s.size() && s[j] != '"') ++j;
            if (j == s.size()) throw ParseError(line_no, col, "unterminated string literal");
            out.push_back({Tok::String, std::string(s.substr(i + 1, j - i - 1)), line_no, col});
            i = j + 1;
            continue;
        }
        Tok k;
        switch (ch) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '=': k = Tok::Equals; break;
            case '\'': k = Tok::Prime; break;
            case ';': k = Tok::Semi; break;
            default:
                throw ParseError(line_no, col, std::string("unexpected character '") + ch + "'");
        }
        out.push_back({k, std::string(1, ch), line_no, col});
        ++i;
    }
    out.push_back({Tok::End, "", line_no, s.size() + 1});
    return out;
}

// Recursive-descent expression parser. Precedence: ^ > unary - > * (and /
// in rational mode) > binary +/-. '^' is right-associative with nonnegative
// integer literal exponents. In polynomial mode '/' is accepted only inside
// a rational literal INT/INT.
class ExprParser {
public:
    ExprParser(const std::vector<Token>& toks, std::size_t start, const Context& vars,
               const std::map<std::string, Rat>& params, bool allow_division)
        : toks_(toks), pos_(start), vars_(vars), params_(params), allow_div_(allow_division) {}

    RatFunc parse_full() {
        RatFunc v = expr();
        expect_end();
        return v;
    }

    RatFunc parse_until(Tok stop) {
        RatFunc v = expr();
        if (peek().kind != stop) fail(peek(), "unexpected token");
        return v;
    }

    std::size_t position() const { return pos_; }

private:
    [[noreturn]] static void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg + (t.kind == Tok::End ? " (at end of line)"
                                                                  : " near '" + t.text + "'"));
    }

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    void expect_end() {
        if (peek().kind != Tok::End) fail(peek(), "unexpected token after expression");
    }

    RatFunc expr() {
        RatFunc acc = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token op = advance();
            RatFunc rhs = term();
            acc = (op.kind == Tok::Plus) ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    RatFunc term() {
        RatFunc acc = unary();
        while (true) {
            if (peek().kind == Tok::Star) {
                advance();
                acc = acc * unary();
            } else if (peek().kind == Tok::Slash) {
                const Token op = advance();
                if (!allow_div_) fail(op, "division in polynomial position");
                RatFunc d = unary();
                if (d.is_zero()) fail(op, "division by zero");
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RatFunc unary() {
        if (peek().kind == Tok::Minus) {
            advance();
            return -unary();
        }
        return power();
    }

    RatFunc power() {
        RatFunc base = atom();
        if (peek().kind == Tok::Caret) {
            advance();
            return base.pow(exponent());
        }
        return base;
    }

    unsigned exponent() {
        const Token& t = peek();
        if (t.kind == Tok::Minus) fail(t, "negative exponent not allowed");
        if (t.kind != Tok::Int) fail(t, "exponent must be a nonnegative integer literal");
        advance();
        Int v(t.text);
        if (peek().kind == Tok::Caret) {
            advance();
            const unsigned e = exponent();
            v = boost::multiprecision::pow(v, e);
        }
        if (v > 1000000) throw ParseError(t.line, t.col, "exponent too large (cap 1000000)");
        return static_cast<unsigned>(v);
    }

    RatFunc atom() {
        const Token t = advance();
        switch (t.kind) {
            case Tok::Int: {
                Int n(t.text);
                // INT '/' INT is a rational literal in either mode.
                if (peek().kind == Tok::Slash && peek(1).kind == Tok::Int) {
                    advance();
                    const Token d = advance();
                    Int den(d.text);
                    if (den == 0) throw ParseError(d.line, d.col, "zero denominator in rational literal");
                    return RatFunc::constant(vars_, Rat(n, den));
                }
                if (peek().kind == Tok::Slash && !allow_div_)
                    fail(peek(), "division in polynomial position");
                return RatFunc::constant(vars_, Rat(n));
            }
            case Tok::Ident: {
                for (std::size_t i = 0; i < vars_->size(); ++i)
                    if ((*vars_)[i] == t.text) return RatFunc(Poly::variable(vars_, i));
                auto it = params_.find(t.text);
                if (it != params_.end()) return RatFunc::constant(vars_, it->second);
                throw ParseError(t.line, t.col, "unknown identifier '" + t.text + "'");
            }
            case Tok::LParen: {
                RatFunc v = expr();
                if (peek().kind != Tok::RParen) fail(peek(), "expected ')'");
                advance();
                return v;
            }
            default:
                fail(t, "expected a number, identifier or '('");
        }
    }

    const std::vector<Token>& toks_;
    std::size_t pos_;
    const Context& vars_;
    const std::map<std::string, Rat>& params_;
    bool allow_div_;
};

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    lines.push_back(cur);
    return lines;
}

inline Rat parse_rational_literal(const std::vector<Token>& toks, std::size_t& pos) {
    bool negative = false;
    if (toks[pos].kind == Tok::Minus) {
        negative = true;
        ++pos;
    }
    if (toks[pos].kind != Tok::Int)
        throw ParseError(toks[pos].line, toks[pos].col, "expected a rational literal");
    Int num(toks[pos].text);
    ++pos;
    Int den = 1;
    if (toks[pos].kind == Tok::Slash) {
        ++pos;
        if (toks[pos].kind != Tok::Int)
            throw ParseError(toks[pos].line, toks[pos].col, "expected denominator digits");
        den = Int(toks[pos].text);
        if (den == 0) throw ParseError(toks[pos].line, toks[pos].col, "zero denominator");
        ++pos;
    }
    return negative ? Rat(-num, den) : Rat(num, den);
}

}  // namespace detail

// Parses a standalone polynomial expression over the given variables.
inline Poly parse_poly(const std::string& text, const Context& vars,
                       const std::map<std::string, Rat>& params = {}) {
    auto toks = detail::lex_line(text, 1);
    detail::ExprParser p(toks, 0, vars, params, /*allow_division=*/false);
    return p.parse_full().num();
}

// Parses a standalone rational-function expression (division allowed).
inline RatFunc parse_ratfunc(const std::string& text, const Context& vars,
                             const std::map<std::string, Rat>& params = {}) {
    auto toks = detail::lex_line(text, 1);
    detail::ExprParser p(toks, 0, vars, params, /*allow_division=*/true);
    return p.parse_full();
}

// Parses the line-oriented vector-field description language:
//   system "<name>"            (optional)
//   vars <id> <id> ...
//   param <id> = <rational>
//   eq <var>' = <expr>
//   poly <id> = <expr>         (optional named polynomials)
// '#' starts a comment. Parameters are substituted during parsing, so every
// stored polynomial is parameter-free.
inline SystemSpec parse_system(const std::string& text) {
    using detail::Tok;
    SystemSpec spec;
    Context vars;
    std::size_t vars_line = 0;
    bool seen_system = false;
    std::vector<std::string> var_names;
    std::map<std::string, Poly> equations;

    const std::vector<std::string> lines = detail::split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        auto toks = detail::lex_line(lines[ln], ln + 1);
        if (toks.front().kind == Tok::End) continue;
        const detail::Token& head = toks.front();
        if (head.kind != Tok::Ident)
            throw ParseError(head.line, head.col, "expected a statement keyword");

        if (head.text == "system") {
            if (seen_system) throw ParseError(head.line, head.col, "duplicate system statement");
            if (toks[1].kind != Tok::String)
                throw ParseError(toks[1].line, toks[1].col, "expected a quoted system name");
            if (toks[2].kind != Tok::End)
                throw ParseError(toks[2].line, toks[2].col, "unexpected token after system name");
            spec.name = toks[1].text;
            seen_system = true;
        } else if (head.text == "vars") {
            if (vars) throw ParseError(head.line, head.col, "duplicate vars statement");
            std::size_t i = 1;
            while (toks[i].kind == Tok::Ident) {
                for (const std::string& v : var_names)
                    if (v == toks[i].text)
                        throw ParseError(toks[i].line, toks[i].col,
                                         "duplicate variable '" + toks[i].text + "'");
                if (spec.parameters.count(toks[i].text))
                    throw ParseError(toks[i].line, toks[i].col,
                                     "'" + toks[i].text + "' is already a parameter");
                var_names.push_back(toks[i].text);
                ++i;
            }
            if (toks[i].kind != Tok::End)
                throw ParseError(toks[i].line, toks[i].col, "expected a variable name");
            if (var_names.empty())
                throw ParseError(head.line, head.col, "vars statement needs at least one variable");
            vars = make_context(var_names);
            vars_line = ln + 1;
        } else if (head.text == "param") {
            if (toks[1].kind != Tok::Ident)
                throw ParseError(toks[1].line, toks[1].col, "expected a parameter name");
            const std::string& name = toks[1].text;
            for (const std::string& v : var_names)
                if (v == name)
                    throw ParseError(toks[1].line, toks[1].col,
                                     "'" + name + "' is already a variable");
            if (spec.parameters.count(name))
                throw ParseError(toks[1].line, toks[1].col, "duplicate parameter '" + name + "'");
            if (toks[2].kind != Tok::Equals)
                throw ParseError(toks[2].line, toks[2].col, "expected '='");
            std::size_t pos = 3;
            const Rat value = detail::parse_rational_literal(toks, pos);
            if (toks[pos].kind != Tok::End)
                throw ParseError(toks[pos].line, toks[pos].col, "unexpected token after parameter value");
            spec.parameters.emplace(name, value);
        } else if (head.text == "eq") {
            if (!vars) throw ParseError(head.line, head.col, "vars must be declared before equations");
            if (toks[1].kind != Tok::Ident)
                throw ParseError(toks[1].line, toks[1].col, "expected a variable name");
            const std::string& name = toks[1].text;
            bool known = false;
            for (const std::string& v : *vars) known = known || (v == name);
            if (!known)
                throw ParseError(toks[1].line, toks[1].col, "unknown variable '" + name + "'");
            if (toks[2].kind != Tok::Prime)
                throw ParseError(toks[2].line, toks[2].col, "expected \"'\" after the variable");
            if (toks[3].kind != Tok::Equals)
                throw ParseError(toks[3].line, toks[3].col, "expected '='");
            if (equations.count(name))
                throw ParseError(toks[1].line, toks[1].col, "duplicate equation for '" + name + "'");
            detail::ExprParser p(toks, 4, vars, spec.parameters, /*allow_division=*/false);
            equations.emplace(name, p.parse_full().num());
        } else if (head.text == "poly") {
            if (!vars)
                throw ParseError(head.line, head.col, "vars must be declared before polynomials");
            if (toks[1].kind != Tok::Ident)
                throw ParseError(toks[1].line, toks[1].col, "expected a polynomial name");
            const std::string& name = toks[1].text;
            for (const std::string& v : *vars)
                if (v == name)
                    throw ParseError(toks[1].line, toks[1].col, "'" + name + "' is already a variable");
            if (spec.parameters.count(name) || spec.named_polys.count(name))
                throw ParseError(toks[1].line, toks[1].col, "duplicate name '" + name + "'");
            if (toks[2].kind != Tok::Equals)
                throw ParseError(toks[2].line, toks[2].col, "expected '='");
            detail::ExprParser p(toks, 3, vars, spec.parameters, /*allow_division=*/false);
            spec.named_polys.emplace(name, p.parse_full().num());
        } else {
            throw ParseError(head.line, head.col, "unknown statement '" + head.text + "'");
        }
    }

    if (!vars) throw ParseError(1, 1, "missing vars statement");
    std::vector<Poly> components;
    for (const std::string& v : *vars) {
        auto it = equations.find(v);
        if (it == equations.end())
            throw ParseError(vars_line, 1, "missing equation for variable '" + v + "'");
        components.push_back(it->second);
    }
    bool all_zero = true;
    for (const Poly& p : components) all_zero = all_zero && p.is_zero();
    if (all_zero) throw ParseError(vars_line, 1, "vector field must not be identically zero");

    spec.variables = vars;
    spec.field = VectorField{vars, std::move(components)};
    return spec;
}

// Pairs file: one `EXPR ; EXPR` (polynomial ; cofactor) per line.
inline std::vector<std::pair<Poly, Poly>> parse_pairs(const std::string& text, const Context& vars,
                                                      const std::map<std::string, Rat>& params = {}) {
    using detail::Tok;
    std::vector<std::pair<Poly, Poly>> out;
    const std::vector<std::string> lines = detail::split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        auto toks = detail::lex_line(lines[ln], ln + 1);
        if (toks.front().kind == Tok::End) continue;
        detail::ExprParser left(toks, 0, vars, params, /*allow_division=*/false);
        const RatFunc f = left.parse_until(Tok::Semi);
        std::size_t pos = left.position();
        ++pos;  // consume ';'
        detail::ExprParser right(toks, pos, vars, params, /*allow_division=*/false);
        const RatFunc k = right.parse_full();
        out.emplace_back(f.num(), k.num());
    }
    return out;
}

}  // namespace darboux
