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

#ifndef GA2_NORMALIZE_HPP
#define GA2_NORMALIZE_HPP

#include <deque>

#include "word.hpp"

namespace ga2 {

namespace detail {

/// Mutable normal form under construction. Letters are prepended one at a
/// time from the right end of the input word; each prepend does at most one
/// same-factor merge and one coset split, so the rewriting is confluent by
/// construction and runs in a single right-to-left pass.
struct NFBuilder {
    explicit NFBuilder(const FieldCtx& ctx) : b(BasicMap::identity(ctx)) {}

    BasicMap b;
    std::deque<NFLetter> letters;

    void prepend(const Letter& l) {
        if (std::holds_alternative<BasicMap>(l)) {
            absorb(std::get<BasicMap>(l));
            return;
        }
        if (std::holds_alternative<AffineMap>(l)) {
            const AffineMap& a = std::get<AffineMap>(l);
            if (a.matrix().is_upper_triangular())
                absorb(BasicMap::from_affine(a));
            else
                prepend_affine(a);
            return;
        }
        const ElementaryMap& e = std::get<ElementaryMap>(l);
        if (e.p().degree() <= 1)
            absorb(BasicMap(e.alpha(), e.beta(), e.p().coeff(1), e.p().coeff(0), e.v()));
        else
            prepend_elementary(e);
    }

    NormalForm take() {
        return NormalForm(b, std::vector<NFLetter>(letters.begin(), letters.end()));
    }

   private:
    void absorb(const BasicMap& nb) { b = nb.compose(b); }

    /// Affine coset split (a, M) = b' o a' with a' in I: requires the
    /// lower-left entry to be nonzero, else the map is already basic.
    void prepend_affine(AffineMap a) {
        a = a.compose(b.to_affine());
        if (!letters.empty() && is_a_letter(letters.front())) {
            a = a.compose(std::get<CosetRepA>(letters.front()).to_affine());
            letters.pop_front();
        }
        const Matrix2& m = a.matrix();
        if (m.c.is_zero()) {
            b = BasicMap::from_affine(a);
            return;
        }
        CosetRepA rep{m.d / m.c};
        AffineMap bq = a.compose(rep.to_affine().inverse());
        b = BasicMap::from_affine(bq);
        letters.push_front(NFLetter(rep));
    }

    /// Elementary coset split e = b' o e' with e' in J: P = y^2 P2 + p1 y
    /// + p0 gives e' with polynomial P2/alpha and b' = (alpha, beta, p1,
    /// p0, v). Degree-one tails are absorbed into the basic part.
    void prepend_elementary(ElementaryMap e) {
        e = e.compose(b.to_elementary());
        if (!letters.empty() && !is_a_letter(letters.front())) {
            e = e.compose(std::get<CosetRepE>(letters.front()).to_elementary());
            letters.pop_front();
        }
        auto [p2, p1, p0] = e.p().split_quadratic_tail();
        b = BasicMap(e.alpha(), e.beta(), p1, p0, e.v());
        if (!p2.is_zero())
            letters.push_front(NFLetter(CosetRepE{p2.scaled(e.alpha().inverse())}));
    }
};

}  // namespace detail

/// Rewrites an arbitrary word into the unique normal form of the group
/// element it represents.
inline NormalForm normalize(const Word& w) {
    detail::NFBuilder nb(w.ctx());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
        nb.prepend(*it);
    return nb.take();
}

inline NormalForm normalize(const NormalForm& nf) { return nf; }

/// Degrees of the elementary letters, outermost first. Elements of the
/// affine factor have no elementary part and are rejected.
inline std::vector<int> poly_degree(const NormalForm& nf) {
    std::vector<int> d;
    for (const auto& l : nf.letters())
        if (!is_a_letter(l)) d.push_back(std::get<CosetRepE>(l).degree());
    if (d.empty()) throw NoElementaryPart("element lies in the affine factor");
    return d;
}

/// Degree of the expanded map: the product of the elementary-letter
/// degrees (empty product = 1 for affine-factor elements).
inline long nf_degree(const NormalForm& nf) {
    long prod = 1;
    for (const auto& l : nf.letters())
        if (!is_a_letter(l)) prod *= std::get<CosetRepE>(l).degree();
    return prod;
}

/// Normal form of the inverse; its poly-degree is the reversal of the
/// input's.
inline NormalForm invert_nf(const NormalForm& nf) {
    return normalize(nf.to_word().inverse());
}

/// Constant Jacobian determinant straight from the normal form: affine
/// representatives contribute -1 each, elementary ones +1, the rest is
/// det of the leading basic element. Avoids expanding the word.
inline Scalar nf_jacobian_det(const NormalForm& nf) {
    Scalar det = nf.basic().alpha() * nf.basic().beta();
    for (const auto& l : nf.letters())
        if (is_a_letter(l)) det = -det;
    return det;
}

/// n-th power (n may be negative), computed by normalization of the
/// concatenated word.
inline NormalForm nf_power(const NormalForm& nf, long n) {
    NormalForm base = n < 0 ? invert_nf(nf) : nf;
    if (n < 0) n = -n;
    Word w(nf.ctx());
    Word bw = base.to_word();
    for (long i = 0; i < n; ++i) w = w.concat(bw);
    return normalize(w);
}

struct CRBasic {
    BasicMap b;
};

/// Conjugate of a single-factor element: conjugator o letter o conjugator^-1
/// equals the input.
struct CRInFactor {
    Word conjugator;
    Letter letter;
};

/// Cyclically reduced conjugate: conjugator o crnf o conjugator^-1 equals
/// the input, and crnf has even positive length.
struct CRReduced {
    Word conjugator;
    NormalForm crnf;
};

using CRStatus = std::variant<CRBasic, CRInFactor, CRReduced>;

/// Repeatedly conjugates by the rightmost letter (absorbing basics and
/// renormalizing) until the word is cyclically reduced or has collapsed
/// into a single factor.
inline CRStatus cyclically_reduce(const NormalForm& nf) {
    NormalForm cur = nf;
    Word conj = Word::identity(nf.ctx());
    for (;;) {
        std::size_t k = length(cur);
        if (k == 0) {
            if (conj.empty()) return CRBasic{cur.basic()};
            // A rotation never lands exactly on a basic element, but the
            // conjugate-of-basic answer is still well-formed if it did.
            return CRInFactor{conj, Letter(cur.basic().to_affine())};
        }
        if (k == 1) {
            const NFLetter& l = cur.letters().front();
            Letter single =
                is_a_letter(l)
                    ? Letter(cur.basic().to_affine().compose(
                          std::get<CosetRepA>(l).to_affine()))
                    : Letter(cur.basic().to_elementary().compose(
                          std::get<CosetRepE>(l).to_elementary()));
            return CRInFactor{conj, single};
        }
        if (k % 2 == 0) return CRReduced{conj, cur};
        // Odd length >= 3: first and last letters lie in the same factor.
        Letter last = nf_letter_to_letter(cur.letters().back());
        Word rotated(cur.ctx());
        rotated.push_inner(last);
        rotated.push_inner(Letter(cur.basic()));
        for (std::size_t i = 0; i + 1 < cur.letters().size(); ++i)
            rotated.push_inner(nf_letter_to_letter(cur.letters()[i]));
        cur = normalize(rotated);
        conj.push_inner(invert_letter(last));
    }
}

}  // namespace ga2

#endif  // GA2_NORMALIZE_HPP
