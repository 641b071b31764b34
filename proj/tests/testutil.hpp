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

#ifndef GA2_TESTUTIL_HPP
#define GA2_TESTUTIL_HPP

#include <ga2/ga2.hpp>

#include <random>

namespace ga2::testutil {

struct Rng {
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    std::mt19937_64 gen;

    long pick(long lo, long hi) {  // inclusive
        return std::uniform_int_distribution<long>(lo, hi)(gen);
    }
    bool coin() { return pick(0, 1) == 1; }
};

/// Random scalar with numerator/denominator height at most `height`.
inline Scalar rand_scalar(Rng& rng, const FieldCtx& ctx, long height = 5,
                          bool nonzero = false) {
    for (;;) {
        Scalar s = ctx.is_rationals()
                       ? Scalar::fraction(ctx, mpz_class(rng.pick(-height, height)),
                                          mpz_class(rng.pick(1, height)))
                       : Scalar(ctx, rng.pick(0, static_cast<long>(
                                                     ctx.characteristic() - 1)));
        if (!nonzero || !s.is_zero()) return s;
    }
}

inline UniPoly rand_unipoly(Rng& rng, const FieldCtx& ctx, int maxdeg, long height = 5,
                            bool nonzero = false) {
    for (;;) {
        int d = static_cast<int>(rng.pick(0, maxdeg));
        std::vector<Scalar> c;
        for (int k = 0; k <= d; ++k) c.push_back(rand_scalar(rng, ctx, height));
        UniPoly p(ctx, std::move(c));
        if (!nonzero || !p.is_zero()) return p;
    }
}

inline UniPoly rand_odd_unipoly(Rng& rng, const FieldCtx& ctx, int maxdeg,
                                long height = 3) {
    for (;;) {
        UniPoly p = rand_unipoly(rng, ctx, maxdeg, height);
        std::vector<Scalar> c;
        for (int k = 0; k <= p.degree(); ++k)
            c.push_back(k % 2 == 1 ? p.coeff(k) : Scalar::zero(ctx));
        UniPoly odd(ctx, std::move(c));
        if (!odd.is_zero()) return odd;
    }
}

inline BasicMap rand_basic(Rng& rng, const FieldCtx& ctx, long height = 3) {
    return BasicMap(rand_scalar(rng, ctx, height, true), rand_scalar(rng, ctx, height, true),
                    rand_scalar(rng, ctx, height), rand_scalar(rng, ctx, height),
                    rand_scalar(rng, ctx, height));
}

inline AffineMap rand_affine(Rng& rng, const FieldCtx& ctx, long height = 3) {
    for (;;) {
        Matrix2 m{rand_scalar(rng, ctx, height), rand_scalar(rng, ctx, height),
                  rand_scalar(rng, ctx, height), rand_scalar(rng, ctx, height)};
        if (m.det().is_zero()) continue;
        return AffineMap({rand_scalar(rng, ctx, height), rand_scalar(rng, ctx, height)}, m);
    }
}

inline ElementaryMap rand_elementary(Rng& rng, const FieldCtx& ctx, int maxdeg,
                                     long height = 3) {
    return ElementaryMap(rand_scalar(rng, ctx, height, true),
                         rand_scalar(rng, ctx, height, true),
                         rand_scalar(rng, ctx, height),
                         rand_unipoly(rng, ctx, maxdeg, height));
}

inline CosetRepA rand_rep_a(Rng& rng, const FieldCtx& ctx, long height = 3) {
    return CosetRepA{rand_scalar(rng, ctx, height)};
}

inline CosetRepE rand_rep_e(Rng& rng, const FieldCtx& ctx, int max_p_deg, long height = 3) {
    return CosetRepE(rand_unipoly(rng, ctx, max_p_deg, height, true));
}

/// Random polynomial of exact degree d.
inline UniPoly rand_unipoly_exact(Rng& rng, const FieldCtx& ctx, int d, long height = 5) {
    std::vector<Scalar> c;
    for (int k = 0; k < d; ++k) c.push_back(rand_scalar(rng, ctx, height));
    c.push_back(rand_scalar(rng, ctx, height, true));
    return UniPoly(ctx, std::move(c));
}

/// Random word of at most `maxlen` letters with the product of elementary
/// degrees capped, so expansion stays desk-sized. Elementary letters are
/// favored and carry exact degree >= 2 while the cap allows.
inline Word rand_word(Rng& rng, const FieldCtx& ctx, int maxlen = 6, long degree_cap = 27,
                      long height = 5) {
    Word w(ctx);
    int len = static_cast<int>(rng.pick(0, maxlen));
    long degprod = 1;
    for (int i = 0; i < len; ++i) {
        switch (rng.pick(0, 3)) {
            case 0: w.push_inner(Letter(rand_affine(rng, ctx, height))); break;
            case 1: w.push_inner(Letter(rand_basic(rng, ctx, height))); break;
            default: {
                int top = 3;
                while (top >= 2 && degprod * top > degree_cap) --top;
                if (top < 2) {
                    w.push_inner(Letter(rand_elementary(rng, ctx, 1, height)));
                    break;
                }
                int d = static_cast<int>(rng.pick(2, top));
                ElementaryMap e(rand_scalar(rng, ctx, height, true),
                                rand_scalar(rng, ctx, height, true),
                                rand_scalar(rng, ctx, height),
                                rand_unipoly_exact(rng, ctx, d, height));
                degprod *= d;
                w.push_inner(Letter(e));
                break;
            }
        }
    }
    return w;
}

/// Random cyclically reduced normal form with m (a, e) pairs.
inline NormalForm rand_crnf(Rng& rng, const FieldCtx& ctx, int pairs, int max_p_deg = 2,
                            bool with_basic = true, bool odd_polys = false,
                            long height = 2) {
    std::vector<NFLetter> letters;
    for (int i = 0; i < pairs; ++i) {
        letters.emplace_back(rand_rep_a(rng, ctx, height));
        letters.emplace_back(odd_polys
                                 ? CosetRepE(rand_odd_unipoly(rng, ctx, max_p_deg, height))
                                 : rand_rep_e(rng, ctx, max_p_deg, height));
    }
    BasicMap b = with_basic ? rand_basic(rng, ctx, height) : BasicMap::identity(ctx);
    return NormalForm(std::move(b), std::move(letters));
}

/// CRNF with a prescribed poly-degree sequence (entries >= 2), outermost
/// first, and identity leading basic.
inline NormalForm crnf_with_pd(Rng& rng, const FieldCtx& ctx, const std::vector<int>& pd,
                               long height = 2) {
    std::vector<NFLetter> letters;
    for (int d : pd) {
        letters.emplace_back(rand_rep_a(rng, ctx, height));
        UniPoly p = rand_unipoly(rng, ctx, d - 2, height);
        std::vector<Scalar> c;
        for (int k = 0; k <= d - 2; ++k)
            c.push_back(k == d - 2 ? Scalar::one(ctx) : p.coeff(k));
        letters.emplace_back(CosetRepE(UniPoly(ctx, std::move(c))));
    }
    return NormalForm(BasicMap::identity(ctx), std::move(letters));
}

/// Brute-force order oracle for affine maps: repeated composition of the
/// (translation, matrix) pair up to `limit` steps.
inline std::optional<unsigned long> brute_force_affine_order(const AffineMap& a,
                                                             unsigned long limit) {
    AffineMap acc = a;
    for (unsigned long k = 1; k <= limit; ++k) {
        if (acc.is_identity()) return k;
        acc = a.compose(acc);
    }
    return std::nullopt;
}

/// Random involutions of the three constructive shapes.
inline PolyMap rand_involution(Rng& rng, const FieldCtx& ctx) {
    switch (rng.pick(0, 3)) {
        case 0: {  // x' = -x + P(y), y' = y
            UniPoly p = rand_unipoly(rng, ctx, 3);
            return to_polymap(ElementaryMap(-Scalar::one(ctx), Scalar::one(ctx),
                                            Scalar::zero(ctx), p));
        }
        case 1: {  // x' = alpha x + P(y), y' = -y + v with P(v - y) = -alpha P(y)
            Scalar alpha = rng.coin() ? Scalar::one(ctx) : -Scalar::one(ctx);
            Scalar v = rand_scalar(rng, ctx, 3);
            UniPoly q = rand_unipoly(rng, ctx, 3);
            UniPoly arg(ctx, {v, -Scalar::one(ctx)});  // v - y
            UniPoly p = q - q.compose(arg).scaled(alpha);
            return to_polymap(ElementaryMap(alpha, -Scalar::one(ctx), v, p));
        }
        case 2: {  // affine I-type: x' = -x + u, y' = -y + v
            return to_polymap(AffineMap({rand_scalar(rng, ctx, 3), rand_scalar(rng, ctx, 3)},
                                        matrix_I(ctx)));
        }
        default: {  // conjugate of the swap by a random affine map
            AffineMap h = rand_affine(rng, ctx, 2);
            AffineMap t = AffineMap::linear(matrix_T(ctx));
            return to_polymap(h.compose(t).compose(h.inverse()));
        }
    }
}

}  // namespace ga2::testutil

#endif  // GA2_TESTUTIL_HPP
