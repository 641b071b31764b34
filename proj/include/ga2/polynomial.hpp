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

#ifndef GA2_POLYNOMIAL_HPP
#define GA2_POLYNOMIAL_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "field.hpp"

namespace ga2 {

/// Dense univariate polynomial, lowest degree first. The leading
/// coefficient is nonzero unless the polynomial is zero (empty list).
class UniPoly {
   public:
    explicit UniPoly(const FieldCtx& ctx) : ctx_(ctx) {}

    UniPoly(const FieldCtx& ctx, std::vector<Scalar> coeffs)
        : ctx_(ctx), c_(std::move(coeffs)) {
        for (const auto& c : c_)
            if (c.ctx() != ctx_) throw FieldMismatch("UniPoly coefficient");
        trim();
    }

    static UniPoly zero(const FieldCtx& ctx) { return UniPoly(ctx); }

    static UniPoly constant(const Scalar& c) {
        return UniPoly(c.ctx(), {c});
    }

    /// c * y^k
    static UniPoly monomial(const Scalar& c, int k) {
        if (c.is_zero()) return UniPoly(c.ctx());
        std::vector<Scalar> v(static_cast<std::size_t>(k) + 1, Scalar::zero(c.ctx()));
        v.back() = c;
        return UniPoly(c.ctx(), std::move(v));
    }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    bool is_zero() const noexcept { return c_.empty(); }

    /// Degree, with deg(0) = -1.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    Scalar coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar::zero(ctx_);
        return c_[static_cast<std::size_t>(k)];
    }

    Scalar leading() const {
        if (is_zero()) throw ZeroPolynomial("leading coefficient of zero");
        return c_.back();
    }

    UniPoly operator-() const {
        UniPoly r(ctx_);
        r.c_.reserve(c_.size());
        for (const auto& c : c_) r.c_.push_back(-c);
        return r;
    }

    UniPoly operator+(const UniPoly& o) const {
        check(o);
        UniPoly r(ctx_);
        std::size_t n = std::max(c_.size(), o.c_.size());
        r.c_.assign(n, Scalar::zero(ctx_));
        for (std::size_t i = 0; i < n; ++i)
            r.c_[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
        r.trim();
        return r;
    }

    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }

    UniPoly operator*(const UniPoly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return UniPoly(ctx_);
        UniPoly r(ctx_);
        r.c_.assign(c_.size() + o.c_.size() - 1, Scalar::zero(ctx_));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
        r.trim();
        return r;
    }

    UniPoly scaled(const Scalar& s) const {
        if (s.is_zero()) return UniPoly(ctx_);
        UniPoly r(ctx_);
        r.c_.reserve(c_.size());
        for (const auto& c : c_) r.c_.push_back(c * s);
        return r;
    }

    Scalar evaluate(const Scalar& y) const {
        Scalar acc = Scalar::zero(ctx_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + *it;
        return acc;
    }

    /// P(Q(y)), expanded exactly (Horner).
    UniPoly compose(const UniPoly& q) const {
        check(q);
        UniPoly acc(ctx_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * q + UniPoly::constant(*it);
        return acc;
    }

    /// Split P = y^2 * p2(y) + p1 * y + p0.
    std::tuple<UniPoly, Scalar, Scalar> split_quadratic_tail() const {
        UniPoly p2(ctx_);
        if (degree() >= 2) p2.c_.assign(c_.begin() + 2, c_.end());
        p2.trim();
        return {p2, coeff(1), coeff(0)};
    }

    /// y^2 * P(y).
    UniPoly shift_up_two() const {
        if (is_zero()) return UniPoly(ctx_);
        UniPoly r(ctx_);
        r.c_.assign(c_.size() + 2, Scalar::zero(ctx_));
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + 2] = c_[i];
        return r;
    }

    bool operator==(const UniPoly& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    /// Canonical text form, descending degree, e.g. "y^3 - 2*y".
    std::string to_string(const std::string& var = "y") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            Scalar c = coeff(k);
            if (c.is_zero()) continue;
            append_term(out, c, k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k)));
        }
        return out;
    }

    /// Shared by the two polynomial printers: writes one signed term.
    static void append_term(std::string& out, const Scalar& c, const std::string& mono) {
        bool neg = c.value() < 0;
        Scalar mag = neg ? -c : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (mono.empty()) {
            out += mag.to_string();
        } else if (mag.is_one()) {
            out += mono;
        } else {
            out += mag.to_string() + "*" + mono;
        }
    }

   private:
    void check(const UniPoly& o) const {
        if (ctx_ != o.ctx_) throw FieldMismatch("UniPoly operands");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldCtx ctx_;
    std::vector<Scalar> c_;
};

/// True iff all even-exponent coefficients vanish, i.e. P(-y) = -P(y).
/// Meaningless over characteristic 2, hence rejected there.
inline bool is_odd_poly(const UniPoly& p) {
    if (p.ctx().characteristic() == 2)
        throw CharacteristicTwo("odd/even parity is degenerate over F_2");
    for (int k = 0; k <= p.degree(); k += 2)
        if (!p.coeff(k).is_zero()) return false;
    return true;
}

inline bool is_even_poly(const UniPoly& p) {
    if (p.ctx().characteristic() == 2)
        throw CharacteristicTwo("odd/even parity is degenerate over F_2");
    for (int k = 1; k <= p.degree(); k += 2)
        if (!p.coeff(k).is_zero()) return false;
    return true;
}

/// Exponent pair of a bivariate monomial x^i y^j.
struct ExpPair {
    int i = 0, j = 0;
    int total() const noexcept { return i + j; }
    bool operator==(const ExpPair& o) const noexcept { return i == o.i && j == o.j; }
};

/// Canonical term order: descending total degree, ties broken by
/// descending x-exponent. Map iteration equals print order.
struct TermOrder {
    bool operator()(const ExpPair& a, const ExpPair& b) const noexcept {
        if (a.total() != b.total()) return a.total() > b.total();
        return a.i > b.i;
    }
};

/// Sparse exact bivariate polynomial in (x, y); no zero coefficients stored.
class BiPoly {
   public:
    using TermMap = std::map<ExpPair, Scalar, TermOrder>;

    explicit BiPoly(const FieldCtx& ctx) : ctx_(ctx) {}

    static BiPoly zero(const FieldCtx& ctx) { return BiPoly(ctx); }
    static BiPoly constant(const Scalar& c) { return monomial(c, 0, 0); }
    static BiPoly var_x(const FieldCtx& ctx) { return monomial(Scalar::one(ctx), 1, 0); }
    static BiPoly var_y(const FieldCtx& ctx) { return monomial(Scalar::one(ctx), 0, 1); }

    static BiPoly monomial(const Scalar& c, int i, int j) {
        BiPoly r(c.ctx());
        if (!c.is_zero()) r.t_[{i, j}] = c;
        return r;
    }

    /// P(y) promoted to a bivariate polynomial.
    static BiPoly from_unipoly_in_y(const UniPoly& p) {
        BiPoly r(p.ctx());
        for (int k = 0; k <= p.degree(); ++k)
            if (!p.coeff(k).is_zero()) r.t_[{0, k}] = p.coeff(k);
        return r;
    }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    const TermMap& terms() const noexcept { return t_; }
    bool is_zero() const noexcept { return t_.empty(); }

    bool is_constant() const noexcept {
        return t_.empty() || (t_.size() == 1 && t_.begin()->first.total() == 0);
    }

    Scalar constant_term() const { return coeff(0, 0); }

    Scalar coeff(int i, int j) const {
        auto it = t_.find({i, j});
        return it == t_.end() ? Scalar::zero(ctx_) : it->second;
    }

    /// Total degree; deg(0) = -1 (use total_degree() for the throwing form).
    int degree() const noexcept {
        return t_.empty() ? -1 : t_.begin()->first.total();
    }

    int degree_in_x() const noexcept {
        int d = -1;
        for (const auto& [e, c] : t_) d = std::max(d, e.i);
        return d;
    }

    BiPoly operator-() const {
        BiPoly r(ctx_);
        for (const auto& [e, c] : t_) r.t_[e] = -c;
        return r;
    }

    BiPoly operator+(const BiPoly& o) const {
        check(o);
        BiPoly r(*this);
        for (const auto& [e, c] : o.t_) r.add_term(e, c);
        return r;
    }

    BiPoly operator-(const BiPoly& o) const { return *this + (-o); }

    BiPoly operator*(const BiPoly& o) const {
        check(o);
        BiPoly r(ctx_);
        for (const auto& [ea, ca] : t_)
            for (const auto& [eb, cb] : o.t_)
                r.add_term({ea.i + eb.i, ea.j + eb.j}, ca * cb);
        return r;
    }

    BiPoly scaled(const Scalar& s) const {
        BiPoly r(ctx_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : t_) r.t_[e] = c * s;
        return r;
    }

    BiPoly pow(int e) const {
        if (e < 0) throw InternalError("negative BiPoly power");
        BiPoly acc = constant(Scalar::one(ctx_)), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    Scalar evaluate(const Scalar& x, const Scalar& y) const {
        Scalar acc = Scalar::zero(ctx_);
        for (const auto& [e, c] : t_) acc = acc + c * x.pow(e.i) * y.pow(e.j);
        return acc;
    }

    BiPoly derivative_x() const {
        BiPoly r(ctx_);
        for (const auto& [e, c] : t_)
            if (e.i > 0) r.add_term({e.i - 1, e.j}, c * Scalar(ctx_, e.i));
        return r;
    }

    BiPoly derivative_y() const {
        BiPoly r(ctx_);
        for (const auto& [e, c] : t_)
            if (e.j > 0) r.add_term({e.i, e.j - 1}, c * Scalar(ctx_, e.j));
        return r;
    }

    bool operator==(const BiPoly& o) const { return ctx_ == o.ctx_ && t_ == o.t_; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& [e, c] : t_) {
            std::string mono;
            if (e.i > 0) mono += e.i == 1 ? "x" : "x^" + std::to_string(e.i);
            if (e.j > 0) {
                if (!mono.empty()) mono += "*";
                mono += e.j == 1 ? "y" : "y^" + std::to_string(e.j);
            }
            UniPoly::append_term(out, c, mono);
        }
        return out;
    }

   private:
    void check(const BiPoly& o) const {
        if (ctx_ != o.ctx_) throw FieldMismatch("BiPoly operands");
    }
    void add_term(const ExpPair& e, const Scalar& c) {
        auto it = t_.find(e);
        if (it == t_.end()) {
            if (!c.is_zero()) t_[e] = c;
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) t_.erase(it);
    }

    FieldCtx ctx_;
    TermMap t_;
};

/// Max of i+j over stored terms; rejects the zero polynomial.
inline int total_degree(const BiPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial("total_degree of zero");
    return f.degree();
}

/// Sum of the terms of maximal total degree.
inline BiPoly leading_form(const BiPoly& f) {
    int d = total_degree(f);
    BiPoly r(f.ctx());
    for (const auto& [e, c] : f.terms()) {
        if (e.total() != d) break;  // canonical order puts top degree first
        r = r + BiPoly::monomial(c, e.i, e.j);
    }
    return r;
}

/// F(P(x,y), Q(x,y)), expanded exactly.
inline BiPoly bipoly_compose(const BiPoly& f, const BiPoly& p, const BiPoly& q) {
    if (f.ctx() != p.ctx() || f.ctx() != q.ctx())
        throw FieldMismatch("bipoly_compose operands");
    // Cache powers of p and q up to the needed exponents.
    int mx = 0, my = 0;
    for (const auto& [e, c] : f.terms()) {
        mx = std::max(mx, e.i);
        my = std::max(my, e.j);
    }
    std::vector<BiPoly> pp, qq;
    pp.reserve(mx + 1);
    qq.reserve(my + 1);
    pp.push_back(BiPoly::constant(Scalar::one(f.ctx())));
    qq.push_back(BiPoly::constant(Scalar::one(f.ctx())));
    for (int i = 1; i <= mx; ++i) pp.push_back(pp.back() * p);
    for (int j = 1; j <= my; ++j) qq.push_back(qq.back() * q);
    BiPoly r(f.ctx());
    for (const auto& [e, c] : f.terms())
        r = r + (pp[e.i] * qq[e.j]).scaled(c);
    return r;
}

}  // namespace ga2

#endif  // GA2_POLYNOMIAL_HPP
