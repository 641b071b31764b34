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

#ifndef GA2_MAPS_HPP
#define GA2_MAPS_HPP

#include <variant>

#include "polynomial.hpp"

namespace ga2 {

struct Vec2 {
    Scalar x, y;
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

/// 2x2 matrix over the field, row-major (a b; c d).
struct Matrix2 {
    Scalar a, b, c, d;

    static Matrix2 identity(const FieldCtx& ctx) {
        return {Scalar::one(ctx), Scalar::zero(ctx), Scalar::zero(ctx), Scalar::one(ctx)};
    }

    const FieldCtx& ctx() const noexcept { return a.ctx(); }

    Scalar det() const { return a * d - b * c; }
    Scalar trace() const { return a + d; }
    bool is_identity() const { return a.is_one() && b.is_zero() && c.is_zero() && d.is_one(); }
    bool is_upper_triangular() const { return c.is_zero(); }
    bool is_scalar() const { return b.is_zero() && c.is_zero() && a == d; }

    Matrix2 operator*(const Matrix2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    Matrix2 inverse() const {
        Scalar dt = det();
        if (dt.is_zero()) throw Singular("matrix is not invertible");
        Scalar id = dt.inverse();
        return {d * id, -b * id, -c * id, a * id};
    }

    Matrix2 operator-() const { return {-a, -b, -c, -d}; }

    bool operator==(const Matrix2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    bool operator!=(const Matrix2& o) const { return !(*this == o); }
};

class PolyMap;

/// x |-> M x + t with M invertible.
class AffineMap {
   public:
    AffineMap(Vec2 t, Matrix2 m) : t_(std::move(t)), m_(std::move(m)) {
        if (m_.det().is_zero()) throw Singular("affine map with singular matrix");
    }

    static AffineMap identity(const FieldCtx& ctx) {
        return AffineMap({Scalar::zero(ctx), Scalar::zero(ctx)}, Matrix2::identity(ctx));
    }

    static AffineMap translation(const Vec2& t) {
        return AffineMap(t, Matrix2::identity(t.x.ctx()));
    }

    static AffineMap linear(const Matrix2& m) {
        return AffineMap({Scalar::zero(m.ctx()), Scalar::zero(m.ctx())}, m);
    }

    const FieldCtx& ctx() const noexcept { return m_.ctx(); }
    const Vec2& translation_part() const noexcept { return t_; }
    const Matrix2& matrix() const noexcept { return m_; }

    bool is_identity() const { return m_.is_identity() && t_.is_zero(); }

    /// Group law (a,A)(b,B) = (a + A b, A B): apply `o` first, then this.
    AffineMap compose(const AffineMap& o) const {
        return AffineMap({t_.x + (m_ * o.t_).x, t_.y + (m_ * o.t_).y}, m_ * o.m_);
    }

    AffineMap inverse() const {
        Matrix2 mi = m_.inverse();
        Vec2 mit = mi * t_;
        return AffineMap({-mit.x, -mit.y}, mi);
    }

    Vec2 apply(const Vec2& v) const {
        Vec2 mv = m_ * v;
        return {mv.x + t_.x, mv.y + t_.y};
    }

    bool operator==(const AffineMap& o) const { return t_ == o.t_ && m_ == o.m_; }
    bool operator!=(const AffineMap& o) const { return !(*this == o); }

   private:
    Vec2 t_;
    Matrix2 m_;
};

/// x' = alpha x + P(y), y' = beta y + v with alpha beta != 0.
class ElementaryMap {
   public:
    ElementaryMap(Scalar alpha, Scalar beta, Scalar v, UniPoly p)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), v_(std::move(v)), p_(std::move(p)) {
        if (alpha_.is_zero() || beta_.is_zero())
            throw InvalidLetters("elementary map needs alpha*beta != 0");
    }

    static ElementaryMap identity(const FieldCtx& ctx) {
        return ElementaryMap(Scalar::one(ctx), Scalar::one(ctx), Scalar::zero(ctx),
                             UniPoly::zero(ctx));
    }

    const FieldCtx& ctx() const noexcept { return alpha_.ctx(); }
    const Scalar& alpha() const noexcept { return alpha_; }
    const Scalar& beta() const noexcept { return beta_; }
    const Scalar& v() const noexcept { return v_; }
    const UniPoly& p() const noexcept { return p_; }

    bool is_identity() const {
        return alpha_.is_one() && beta_.is_one() && v_.is_zero() && p_.is_zero();
    }

    /// Apply `o` first, then this; the result is again elementary.
    ElementaryMap compose(const ElementaryMap& o) const {
        UniPoly arg(ctx(), {o.v_, o.beta_});  // beta2 y + v2
        return ElementaryMap(alpha_ * o.alpha_, beta_ * o.beta_, beta_ * o.v_ + v_,
                             o.p_.scaled(alpha_) + p_.compose(arg));
    }

    ElementaryMap inverse() const {
        Scalar ia = alpha_.inverse(), ib = beta_.inverse();
        UniPoly arg(ctx(), {-v_ * ib, ib});  // (y - v)/beta
        return ElementaryMap(ia, ib, -v_ * ib, (-p_.compose(arg)).scaled(ia));
    }

    Vec2 apply(const Vec2& v) const {
        return {alpha_ * v.x + p_.evaluate(v.y), beta_ * v.y + v_};
    }

    bool operator==(const ElementaryMap& o) const {
        return alpha_ == o.alpha_ && beta_ == o.beta_ && v_ == o.v_ && p_ == o.p_;
    }
    bool operator!=(const ElementaryMap& o) const { return !(*this == o); }

   private:
    Scalar alpha_, beta_, v_;
    UniPoly p_;
};

/// Intersection of the affine and elementary groups:
/// x' = alpha x + gamma y + u, y' = beta y + v with alpha beta != 0.
class BasicMap {
   public:
    BasicMap(Scalar alpha, Scalar beta, Scalar gamma, Scalar u, Scalar v)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)),
          u_(std::move(u)), v_(std::move(v)) {
        if (alpha_.is_zero() || beta_.is_zero())
            throw InvalidLetters("basic map needs alpha*beta != 0");
    }

    static BasicMap identity(const FieldCtx& ctx) {
        Scalar z = Scalar::zero(ctx), o = Scalar::one(ctx);
        return BasicMap(o, o, z, z, z);
    }

    static BasicMap from_affine(const AffineMap& a) {
        if (!a.matrix().is_upper_triangular())
            throw InvalidLetters("affine map is not triangular");
        return BasicMap(a.matrix().a, a.matrix().d, a.matrix().b,
                        a.translation_part().x, a.translation_part().y);
    }

    const FieldCtx& ctx() const noexcept { return alpha_.ctx(); }
    const Scalar& alpha() const noexcept { return alpha_; }
    const Scalar& beta() const noexcept { return beta_; }
    const Scalar& gamma() const noexcept { return gamma_; }
    const Scalar& u() const noexcept { return u_; }
    const Scalar& v() const noexcept { return v_; }

    bool is_identity() const {
        return alpha_.is_one() && beta_.is_one() && gamma_.is_zero() && u_.is_zero() &&
               v_.is_zero();
    }

    bool is_linear() const { return u_.is_zero() && v_.is_zero(); }

    AffineMap to_affine() const {
        return AffineMap({u_, v_}, {alpha_, gamma_, Scalar::zero(ctx()), beta_});
    }

    ElementaryMap to_elementary() const {
        return ElementaryMap(alpha_, beta_, v_, UniPoly(ctx(), {u_, gamma_}));
    }

    BasicMap compose(const BasicMap& o) const {
        return BasicMap(alpha_ * o.alpha_, beta_ * o.beta_,
                        alpha_ * o.gamma_ + gamma_ * o.beta_,
                        alpha_ * o.u_ + gamma_ * o.v_ + u_,
                        beta_ * o.v_ + v_);
    }

    BasicMap inverse() const {
        Scalar ia = alpha_.inverse(), ib = beta_.inverse();
        return BasicMap(ia, ib, -gamma_ * ia * ib, (gamma_ * v_ * ib - u_) * ia, -v_ * ib);
    }

    bool operator==(const BasicMap& o) const {
        return alpha_ == o.alpha_ && beta_ == o.beta_ && gamma_ == o.gamma_ &&
               u_ == o.u_ && v_ == o.v_;
    }
    bool operator!=(const BasicMap& o) const { return !(*this == o); }

   private:
    Scalar alpha_, beta_, gamma_, u_, v_;
};

/// Affine coset representative: the linear map with matrix (0 1; 1 beta).
struct CosetRepA {
    Scalar beta;

    const FieldCtx& ctx() const noexcept { return beta.ctx(); }

    AffineMap to_affine() const {
        const FieldCtx& c = ctx();
        return AffineMap::linear({Scalar::zero(c), Scalar::one(c), Scalar::one(c), beta});
    }

    bool operator==(const CosetRepA& o) const { return beta == o.beta; }
    bool operator!=(const CosetRepA& o) const { return !(*this == o); }
};

/// Elementary coset representative: x' = x + y^2 P(y), y' = y with P != 0.
struct CosetRepE {
    UniPoly p;

    explicit CosetRepE(UniPoly poly) : p(std::move(poly)) {
        if (p.is_zero()) throw InvalidLetters("coset representative needs P != 0");
    }

    const FieldCtx& ctx() const noexcept { return p.ctx(); }

    /// deg(x + y^2 P(y)) = 2 + deg(P) >= 2.
    int degree() const { return 2 + p.degree(); }

    ElementaryMap to_elementary() const {
        const FieldCtx& c = ctx();
        return ElementaryMap(Scalar::one(c), Scalar::one(c), Scalar::zero(c),
                             p.shift_up_two());
    }

    CosetRepE inverse() const { return CosetRepE(-p); }

    bool operator==(const CosetRepE& o) const { return p == o.p; }
    bool operator!=(const CosetRepE& o) const { return !(*this == o); }
};

/// Candidate automorphism given by a pair of bivariate polynomials.
class PolyMap {
   public:
    PolyMap(BiPoly p, BiPoly q) : p_(std::move(p)), q_(std::move(q)) {
        if (p_.ctx() != q_.ctx()) throw FieldMismatch("PolyMap components");
    }

    static PolyMap identity(const FieldCtx& ctx) {
        return PolyMap(BiPoly::var_x(ctx), BiPoly::var_y(ctx));
    }

    const FieldCtx& ctx() const noexcept { return p_.ctx(); }
    const BiPoly& p() const noexcept { return p_; }
    const BiPoly& q() const noexcept { return q_; }

    bool is_identity() const {
        return p_ == BiPoly::var_x(ctx()) && q_ == BiPoly::var_y(ctx());
    }

    /// Max of the component total degrees (components of an automorphism
    /// are never zero; constants give degree 0).
    int degree() const { return std::max(p_.degree(), q_.degree()); }

    bool operator==(const PolyMap& o) const { return p_ == o.p_ && q_ == o.q_; }
    bool operator!=(const PolyMap& o) const { return !(*this == o); }

    std::string to_string() const {
        return "(" + p_.to_string() + ", " + q_.to_string() + ")";
    }

   private:
    BiPoly p_, q_;
};

/// compose(f, g) applies g first, then f (word order g_n ... g_1 reads
/// right to left everywhere in this library).
inline PolyMap compose(const PolyMap& f, const PolyMap& g) {
    if (f.ctx() != g.ctx()) throw FieldMismatch("compose operands");
    return PolyMap(bipoly_compose(f.p(), g.p(), g.q()),
                   bipoly_compose(f.q(), g.p(), g.q()));
}

inline Vec2 apply(const PolyMap& f, const Vec2& pt) {
    if (f.ctx() != pt.x.ctx()) throw FieldMismatch("apply operands");
    return {f.p().evaluate(pt.x, pt.y), f.q().evaluate(pt.x, pt.y)};
}

inline PolyMap to_polymap(const AffineMap& a) {
    const FieldCtx& c = a.ctx();
    BiPoly x = BiPoly::var_x(c), y = BiPoly::var_y(c);
    return PolyMap(x.scaled(a.matrix().a) + y.scaled(a.matrix().b) +
                       BiPoly::constant(a.translation_part().x),
                   x.scaled(a.matrix().c) + y.scaled(a.matrix().d) +
                       BiPoly::constant(a.translation_part().y));
}

inline PolyMap to_polymap(const ElementaryMap& e) {
    const FieldCtx& c = e.ctx();
    return PolyMap(BiPoly::var_x(c).scaled(e.alpha()) + BiPoly::from_unipoly_in_y(e.p()),
                   BiPoly::var_y(c).scaled(e.beta()) + BiPoly::constant(e.v()));
}

inline PolyMap to_polymap(const BasicMap& b) { return to_polymap(b.to_affine()); }
inline PolyMap to_polymap(const CosetRepA& a) { return to_polymap(a.to_affine()); }
inline PolyMap to_polymap(const CosetRepE& e) { return to_polymap(e.to_elementary()); }

/// Determinant of the formal Jacobian, as a polynomial; the caller decides
/// whether constancy matters.
inline BiPoly jacobian_det(const PolyMap& f) {
    return f.p().derivative_x() * f.q().derivative_y() -
           f.p().derivative_y() * f.q().derivative_x();
}

/// Jacobian matrix evaluated at a point.
inline Matrix2 jacobian_at(const PolyMap& f, const Vec2& pt) {
    return {f.p().derivative_x().evaluate(pt.x, pt.y),
            f.p().derivative_y().evaluate(pt.x, pt.y),
            f.q().derivative_x().evaluate(pt.x, pt.y),
            f.q().derivative_y().evaluate(pt.x, pt.y)};
}

/// Result of classify_letter: monostate means "no generator pattern".
using LetterClass =
    std::variant<std::monostate, AffineMap, ElementaryMap, BasicMap, CosetRepA, CosetRepE>;

namespace detail {

/// Extract (t, M) if both components have degree <= 1, M invertible.
inline std::optional<AffineMap> match_affine(const PolyMap& f) {
    if (f.p().is_zero() || f.q().is_zero()) return std::nullopt;
    if (f.p().degree() > 1 || f.q().degree() > 1) return std::nullopt;
    Matrix2 m{f.p().coeff(1, 0), f.p().coeff(0, 1), f.q().coeff(1, 0), f.q().coeff(0, 1)};
    if (m.det().is_zero()) return std::nullopt;
    return AffineMap({f.p().coeff(0, 0), f.q().coeff(0, 0)}, m);
}

/// Extract (alpha, beta, v, P) if f has the triangular elementary shape.
inline std::optional<ElementaryMap> match_elementary(const PolyMap& f) {
    const FieldCtx& c = f.ctx();
    // y-component: beta * y + v, independent of x.
    if (f.q().degree_in_x() > 0 || f.q().degree() > 1) return std::nullopt;
    Scalar beta = f.q().coeff(0, 1), v = f.q().coeff(0, 0);
    if (beta.is_zero()) return std::nullopt;
    // x-component: alpha * x + P(y); the only x-bearing term is x itself.
    std::vector<Scalar> pc;
    Scalar alpha = Scalar::zero(c);
    for (const auto& [e, co] : f.p().terms()) {
        if (e.i == 1 && e.j == 0) {
            alpha = co;
        } else if (e.i == 0) {
            if (static_cast<int>(pc.size()) <= e.j) pc.resize(e.j + 1, Scalar::zero(c));
            pc[e.j] = co;
        } else {
            return std::nullopt;
        }
    }
    if (alpha.is_zero()) return std::nullopt;
    return ElementaryMap(alpha, beta, v, UniPoly(c, std::move(pc)));
}

}  // namespace detail

/// Most specific generator pattern matching f exactly: coset
/// representatives first, then the basic intersection, then a plain
/// affine or elementary letter.
inline LetterClass classify_letter(const PolyMap& f) {
    auto aff = detail::match_affine(f);
    auto ele = detail::match_elementary(f);
    if (aff) {
        const Matrix2& m = aff->matrix();
        if (aff->translation_part().is_zero() && m.a.is_zero() && m.b.is_one() &&
            m.c.is_one())
            return CosetRepA{m.d};
    }
    if (ele && ele->alpha().is_one() && ele->beta().is_one() && ele->v().is_zero() &&
        ele->p().degree() >= 2 && ele->p().coeff(0).is_zero() &&
        ele->p().coeff(1).is_zero()) {
        return CosetRepE{std::get<0>(ele->p().split_quadratic_tail())};
    }
    if (aff && ele) return BasicMap::from_affine(*aff);
    if (aff) return *aff;
    if (ele) return *ele;
    return std::monostate{};
}

}  // namespace ga2

#endif  // GA2_MAPS_HPP
