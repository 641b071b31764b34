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

#ifndef GA2_FIELD_HPP
#define GA2_FIELD_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"

namespace ga2 {

/// Descriptor of the coefficient field: the rationals Q, or a prime field
/// F_p. characteristic() is 0 for Q and p for F_p.
class FieldCtx {
   public:
    static FieldCtx rationals() { return FieldCtx(0); }

    static FieldCtx prime_field(unsigned long p) {
        mpz_class zp(static_cast<unsigned long>(p));
        if (p < 2 || mpz_probab_prime_p(zp.get_mpz_t(), 40) == 0)
            throw NotPrime("p = " + std::to_string(p) + " is not prime");
        return FieldCtx(p);
    }

    bool is_rationals() const noexcept { return p_ == 0; }
    bool is_prime_field() const noexcept { return p_ != 0; }
    unsigned long characteristic() const noexcept { return p_; }

    bool operator==(const FieldCtx& o) const noexcept { return p_ == o.p_; }
    bool operator!=(const FieldCtx& o) const noexcept { return p_ != o.p_; }

    std::string to_string() const {
        return is_rationals() ? "Q" : "Fp:" + std::to_string(p_);
    }

   private:
    explicit FieldCtx(unsigned long p) : p_(p) {}
    unsigned long p_;  // 0 encodes Q
};

/// Exact field element: a reduced fraction over Q, or a residue in [0,p)
/// over F_p. Arithmetic between scalars of different contexts is rejected.
class Scalar {
   public:
    Scalar() : ctx_(FieldCtx::rationals()), v_(0) {}

    Scalar(const FieldCtx& ctx, long n) : ctx_(ctx), v_(n) { reduce(); }

    Scalar(const FieldCtx& ctx, const mpz_class& n) : ctx_(ctx), v_(n) { reduce(); }

    /// Fraction n/d. Over F_p this is n * d^-1; d = 0 (mod p) is rejected.
    static Scalar fraction(const FieldCtx& ctx, const mpz_class& n, const mpz_class& d) {
        if (d == 0) throw FieldLiteralError("denominator is zero");
        if (ctx.is_rationals()) {
            Scalar s(ctx, 0);
            s.v_ = mpq_class(n, d);
            s.v_.canonicalize();
            return s;
        }
        Scalar den(ctx, d);
        if (den.is_zero())
            throw FieldLiteralError("denominator vanishes modulo " +
                                    std::to_string(ctx.characteristic()));
        return Scalar(ctx, n) / den;
    }

    static Scalar zero(const FieldCtx& ctx) { return Scalar(ctx, 0); }
    static Scalar one(const FieldCtx& ctx) { return Scalar(ctx, 1); }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    const mpq_class& value() const noexcept { return v_; }

    bool is_zero() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return v_ == 1; }

    Scalar operator-() const {
        Scalar r(*this);
        r.v_ = -r.v_;
        r.reduce();
        return r;
    }

    Scalar operator+(const Scalar& o) const { return binop(o, '+'); }
    Scalar operator-(const Scalar& o) const { return binop(o, '-'); }
    Scalar operator*(const Scalar& o) const { return binop(o, '*'); }

    Scalar operator/(const Scalar& o) const {
        check_ctx(o);
        if (o.is_zero()) throw DivisionByZero("scalar division by zero");
        if (ctx_.is_rationals()) {
            Scalar r(*this);
            r.v_ /= o.v_;
            return r;
        }
        return *this * o.inverse();
    }

    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        Scalar r(*this);
        if (ctx_.is_rationals()) {
            r.v_ = 1 / v_;
        } else {
            mpz_class p(ctx_.characteristic()), inv;
            if (mpz_invert(inv.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t()) == 0)
                throw DivisionByZero("no modular inverse");
            r.v_ = mpq_class(inv);
        }
        return r;
    }

    Scalar pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Scalar acc = one(ctx_), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const Scalar& o) const { return ctx_ == o.ctx_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Total order used for canonical tie-breaking (not a field order).
    bool operator<(const Scalar& o) const {
        check_ctx(o);
        return v_ < o.v_;
    }

    std::string to_string() const {
        if (ctx_.is_rationals() && v_.get_den() != 1)
            return v_.get_num().get_str() + "/" + v_.get_den().get_str();
        return v_.get_num().get_str();
    }

   private:
    void check_ctx(const Scalar& o) const {
        if (ctx_ != o.ctx_)
            throw FieldMismatch(ctx_.to_string() + " vs " + o.ctx_.to_string());
    }

    Scalar binop(const Scalar& o, char op) const {
        check_ctx(o);
        Scalar r(*this);
        switch (op) {
            case '+': r.v_ += o.v_; break;
            case '-': r.v_ -= o.v_; break;
            default: r.v_ *= o.v_; break;
        }
        r.reduce();
        return r;
    }

    void reduce() {
        if (ctx_.is_prime_field()) {
            mpz_class p(ctx_.characteristic());
            mpz_class n = v_.get_num() % p;
            if (n < 0) n += p;
            v_ = mpq_class(n);
        }
    }

    FieldCtx ctx_;
    mpq_class v_;
};

enum class FieldOp { add, sub, mul, div };

/// Dispatch form of the four basic operations; mostly useful for the CLI
/// and for property tests that iterate over operations.
inline Scalar field_arith(const Scalar& a, const Scalar& b, FieldOp op) {
    switch (op) {
        case FieldOp::add: return a + b;
        case FieldOp::sub: return a - b;
        case FieldOp::mul: return a * b;
        case FieldOp::div: return a / b;
    }
    throw InternalError("bad FieldOp");
}

/// Least n >= 1 with u^n = 1, or nullopt when u has infinite multiplicative
/// order (possible only over Q, where the only roots of unity are +-1).
inline std::optional<unsigned long> mult_order(const Scalar& u) {
    if (u.is_zero()) throw ZeroInput("mult_order of zero");
    if (u.ctx().is_rationals()) {
        if (u.is_one()) return 1;
        if ((-u).is_one()) return 2;
        return std::nullopt;
    }
    Scalar acc = u;
    unsigned long n = 1;
    while (!acc.is_one()) {
        acc = acc * u;
        ++n;
        if (n > u.ctx().characteristic())
            throw InternalError("mult_order loop exceeded field size");
    }
    return n;
}

/// True iff the field contains an element of multiplicative order 4
/// (a square root of -1): never over Q, and over F_p iff p = 1 (mod 4).
inline bool has_primitive_fourth_root(const FieldCtx& ctx) {
    if (ctx.is_rationals()) return false;
    return ctx.characteristic() % 4 == 1;
}

}  // namespace ga2

#endif  // GA2_FIELD_HPP
