/*
   Copyright 2026 The ga2 Authors

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

#ifndef GA2_PARSE_HPP
#define GA2_PARSE_HPP

#include <cctype>
#include <sstream>

#include "word.hpp"

namespace ga2 {

namespace detail {

/// Recursive-descent parser for the polynomial grammar: +, -, *, ^,
/// integer and a/b literals, parentheses, variables x and y. Precedence:
/// ^ binds tighter than unary minus, which binds tighter than *, which
/// binds tighter than binary +/-. Juxtaposition (2x, x y, 3(x+1)) is
/// accepted as multiplication. Whitespace-insensitive.
class ExprParser {
   public:
    ExprParser(const std::string& text, const FieldCtx& ctx) : s_(text), ctx_(ctx) {}

    BiPoly parse_expression_all() {
        BiPoly e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

    PolyMap parse_map_all() {
        skip_ws();
        expect('(');
        BiPoly p = expr();
        skip_ws();
        expect(',');
        BiPoly q = expr();
        skip_ws();
        expect(')');
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return PolyMap(p, q);
    }

   private:
    BiPoly expr() {
        BiPoly acc = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc = acc + term();
            } else if (peek() == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    BiPoly term() {
        BiPoly acc = unary();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * unary();
            } else if (c == 'x' || c == 'y' || c == '(') {
                acc = acc * unary();  // juxtaposition
            } else {
                return acc;
            }
        }
    }

    BiPoly unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -unary();
        }
        return power();
    }

    BiPoly power() {
        BiPoly base = primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            long e = integer();
            if (e < 0) throw ParseError("negative exponent", at);
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    BiPoly primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            BiPoly e = expr();
            skip_ws();
            expect(')');
            return e;
        }
        if (c == 'x') {
            ++pos_;
            return BiPoly::var_x(ctx_);
        }
        if (c == 'y') {
            ++pos_;
            return BiPoly::var_y(ctx_);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num = natural();
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    throw ParseError("fraction literals need an integer denominator",
                                     pos_);
                mpz_class den = natural();
                // Vanishing denominators raise FieldLiteralError from here.
                return BiPoly::constant(Scalar::fraction(ctx_, num, den));
            }
            return BiPoly::constant(Scalar(ctx_, num));
        }
        throw ParseError(std::string("expected a term, found '") +
                             (c == '\0' ? std::string("end") : std::string(1, c)) + "'",
                         pos_);
    }

    mpz_class natural() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        // Explicit base: the auto-detecting constructor reads 09 as octal.
        return mpz_class(s_.substr(start, pos_ - start), 10);
    }

    long integer() {
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected an integer", pos_);
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        return neg ? -v : v;
    }

    void expect(char c) {
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    const std::string& s_;
    FieldCtx ctx_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline BiPoly parse_bipoly(const std::string& text, const FieldCtx& ctx) {
    return detail::ExprParser(text, ctx).parse_expression_all();
}

/// Polynomial in y alone; an x in the input is rejected.
inline UniPoly parse_unipoly(const std::string& text, const FieldCtx& ctx) {
    BiPoly b = parse_bipoly(text, ctx);
    if (b.degree_in_x() > 0) throw ParseError("expected a polynomial in y only", 0);
    std::vector<Scalar> c;
    for (const auto& [e, co] : b.terms()) {
        if (static_cast<int>(c.size()) <= e.j) c.resize(e.j + 1, Scalar::zero(ctx));
        c[e.j] = co;
    }
    return UniPoly(ctx, std::move(c));
}

inline Scalar parse_scalar(const std::string& text, const FieldCtx& ctx) {
    BiPoly b = parse_bipoly(text, ctx);
    if (!b.is_constant()) throw ParseError("expected a scalar", 0);
    return b.constant_term();
}

/// `(expr, expr)` over the given field.
inline PolyMap parse_map_expr(const std::string& text, const FieldCtx& ctx) {
    return detail::ExprParser(text, ctx).parse_map_all();
}

/// Field specifier: `Q` or `Fp:<prime>`.
inline FieldCtx parse_field_spec(const std::string& spec) {
    if (spec == "Q") return FieldCtx::rationals();
    if (spec.rfind("Fp:", 0) == 0) {
        const std::string num = spec.substr(3);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("malformed field spec '" + spec + "'", 0);
        return FieldCtx::prime_field(std::strtoul(num.c_str(), nullptr, 10));
    }
    throw ParseError("unknown field spec '" + spec + "' (use Q or Fp:<prime>)", 0);
}

namespace detail {

inline std::vector<std::string> split_letter_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    auto flush = [&] {
        std::size_t b = cur.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            cur.clear();
            return;
        }
        std::size_t e = cur.find_last_not_of(" \t\r");
        lines.push_back(cur.substr(b, e - b + 1));
        cur.clear();
    };
    for (char ch : text) {
        if (ch == '\n' || ch == ';')
            flush();
        else
            cur += ch;
    }
    flush();
    return lines;
}

/// Splits "w1 w2 ... wn rest" into n leading whitespace-separated fields
/// plus the remainder (which may itself contain spaces).
inline std::vector<std::string> take_fields(const std::string& line, std::size_t n,
                                            std::string& rest) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < n; ++k) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
            ++pos;
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])))
            ++pos;
        if (start == pos) throw ParseError("truncated letter line '" + line + "'", start);
        out.push_back(line.substr(start, pos - start));
    }
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    rest = line.substr(pos);
    return out;
}

inline Letter parse_letter_line(const std::string& line, const FieldCtx& ctx) {
    std::string rest;
    auto head = take_fields(line, 1, rest);
    const std::string& kind = head[0];
    if (kind == "B") {
        std::string tail;
        auto f = take_fields(rest, 5, tail);
        if (!tail.empty()) throw ParseError("trailing input on B line", 0);
        return Letter(BasicMap(parse_scalar(f[0], ctx), parse_scalar(f[1], ctx),
                               parse_scalar(f[2], ctx), parse_scalar(f[3], ctx),
                               parse_scalar(f[4], ctx)));
    }
    if (kind == "A") {
        return Letter(AffineMap(CosetRepA{parse_scalar(rest, ctx)}.to_affine()));
    }
    if (kind == "E") {
        return Letter(ElementaryMap(CosetRepE(parse_unipoly(rest, ctx)).to_elementary()));
    }
    if (kind == "AFF") {
        std::string tail;
        auto f = take_fields(rest, 6, tail);
        if (!tail.empty()) throw ParseError("trailing input on AFF line", 0);
        Matrix2 m{parse_scalar(f[0], ctx), parse_scalar(f[1], ctx),
                  parse_scalar(f[2], ctx), parse_scalar(f[3], ctx)};
        return Letter(AffineMap({parse_scalar(f[4], ctx), parse_scalar(f[5], ctx)}, m));
    }
    if (kind == "EL") {
        std::string poly;
        auto f = take_fields(rest, 3, poly);
        return Letter(ElementaryMap(parse_scalar(f[0], ctx), parse_scalar(f[1], ctx),
                                    parse_scalar(f[2], ctx), parse_unipoly(poly, ctx)));
    }
    throw ParseError("unknown letter kind '" + kind + "'", 0);
}

}  // namespace detail

/// Word serialization: one letter per line (newlines or ';' both accepted).
/// Normal-form lines `B a b g u v` / `A beta` / `E <poly>` plus the general
/// letter forms `AFF a11 a12 a21 a22 u v` and `EL alpha beta v <poly>`.
inline Word parse_word(const std::string& text, const FieldCtx& ctx) {
    Word w(ctx);
    for (const auto& line : detail::split_letter_lines(text))
        w.push_inner(detail::parse_letter_line(line, ctx));
    return w;
}

/// Reads back the bit-exact serialization of a normal form: an optional
/// leading B line followed by strictly alternating A/E lines.
inline NormalForm parse_normal_form(const std::string& text, const FieldCtx& ctx) {
    BasicMap b = BasicMap::identity(ctx);
    std::vector<NFLetter> letters;
    bool first = true;
    for (const auto& line : detail::split_letter_lines(text)) {
        std::string rest;
        auto head = detail::take_fields(line, 1, rest);
        if (head[0] == "B") {
            if (!first) throw ParseError("B line must come first", 0);
            std::string tail;
            auto f = detail::take_fields(rest, 5, tail);
            b = BasicMap(parse_scalar(f[0], ctx), parse_scalar(f[1], ctx),
                         parse_scalar(f[2], ctx), parse_scalar(f[3], ctx),
                         parse_scalar(f[4], ctx));
        } else if (head[0] == "A") {
            letters.emplace_back(CosetRepA{parse_scalar(rest, ctx)});
        } else if (head[0] == "E") {
            letters.emplace_back(CosetRepE(parse_unipoly(rest, ctx)));
        } else {
            throw ParseError("unknown normal form line '" + line + "'", 0);
        }
        first = false;
    }
    return NormalForm(b, std::move(letters));
}

inline std::string serialize(const Word& w, const char* sep = "\n") {
    std::string out;
    auto emit = [&](const std::string& line) {
        if (!out.empty()) out += sep;
        out += line;
    };
    for (const auto& l : w.letters()) {
        if (std::holds_alternative<BasicMap>(l)) {
            const BasicMap& b = std::get<BasicMap>(l);
            emit("B " + b.alpha().to_string() + " " + b.beta().to_string() + " " +
                 b.gamma().to_string() + " " + b.u().to_string() + " " +
                 b.v().to_string());
        } else if (std::holds_alternative<AffineMap>(l)) {
            const AffineMap& a = std::get<AffineMap>(l);
            const Matrix2& m = a.matrix();
            emit("AFF " + m.a.to_string() + " " + m.b.to_string() + " " +
                 m.c.to_string() + " " + m.d.to_string() + " " +
                 a.translation_part().x.to_string() + " " +
                 a.translation_part().y.to_string());
        } else {
            const ElementaryMap& e = std::get<ElementaryMap>(l);
            emit("EL " + e.alpha().to_string() + " " + e.beta().to_string() + " " +
                 e.v().to_string() + " " + e.p().to_string());
        }
    }
    if (out.empty()) out = "B 1 1 0 0 0";  // identity word
    return out;
}

}  // namespace ga2

#endif  // GA2_PARSE_HPP
