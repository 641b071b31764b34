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

#ifndef GA2_DECOMPOSE_HPP
#define GA2_DECOMPOSE_HPP

#include "normalize.hpp"

namespace ga2 {

namespace detail {

/// If lead = c * base holds for a scalar c != 0, return c.
inline std::optional<Scalar> proportionality(const BiPoly& lead, const BiPoly& base) {
    const auto& e0 = base.terms().begin()->first;
    Scalar c = lead.coeff(e0.i, e0.j) / base.terms().begin()->second;
    if (c.is_zero()) return std::nullopt;
    if (lead != base.scaled(c)) return std::nullopt;
    return c;
}

}  // namespace detail

/// Degree-reduction decomposition into affine and elementary letters whose
/// composition equals f exactly. Rejects maps with zero or non-constant
/// Jacobian determinant, and maps whose leading forms fail the power-match
/// condition; those are exactly the non-automorphisms.
///
/// Reduction peels letters off the left: while deg(f) > 1 the
/// higher-degree component's leading form must be a scalar multiple of a
/// power of the other's, and subtracting that multiple (an elementary
/// letter, after an affine swap or a triangular tie-break where needed)
/// strictly reduces the degree. The leftover degree-one map is the final
/// affine letter.
inline Word decompose(const PolyMap& f) {
    BiPoly jd = jacobian_det(f);
    if (jd.is_zero() || !jd.is_constant())
        throw NotAnAutomorphism("Jacobian determinant is zero or non-constant");

    Word w(f.ctx());
    PolyMap m = f;
    const Scalar one = Scalar::one(f.ctx());
    int guard = 2 * (m.p().degree() + m.q().degree()) + 8;

    while (m.degree() > 1) {
        if (--guard < 0) throw InternalError("degree reduction failed to terminate");
        int dp = m.p().degree(), dq = m.q().degree();
        if (dp < 1 || dq < 1)
            throw NotAnAutomorphism("component collapsed during reduction");
        if (dp == dq) {
            auto c = detail::proportionality(leading_form(m.p()), leading_form(m.q()));
            if (!c) throw NotAnAutomorphism("tied leading forms are not proportional");
            w.push_inner(Letter(BasicMap(one, one, *c, Scalar::zero(f.ctx()),
                                         Scalar::zero(f.ctx()))));
            m = PolyMap(m.p() - m.q().scaled(*c), m.q());
        } else if (dp > dq) {
            if (dp % dq != 0)
                throw NotAnAutomorphism("leading-form degrees do not divide");
            int k = dp / dq;
            auto c = detail::proportionality(leading_form(m.p()),
                                             leading_form(m.q()).pow(k));
            if (!c) throw NotAnAutomorphism("leading form is not a power match");
            w.push_inner(Letter(ElementaryMap(one, one, Scalar::zero(f.ctx()),
                                              UniPoly::monomial(*c, k))));
            m = PolyMap(m.p() - m.q().pow(k).scaled(*c), m.q());
        } else {
            // Swap components with T = (0 1; 1 0) and retry.
            CosetRepA t{Scalar::zero(f.ctx())};
            w.push_inner(Letter(AffineMap(t.to_affine())));
            m = PolyMap(m.q(), m.p());
        }
    }

    auto aff = detail::match_affine(m);
    if (!aff) throw NotAnAutomorphism("reduction did not end in an affine map");
    if (!aff->is_identity()) w.push_inner(Letter(*aff));
    return w;
}

/// Exact inverse automorphism, via decomposition.
inline PolyMap invert_map(const PolyMap& f) {
    return word_to_polymap(decompose(f).inverse());
}

/// Decompose and normalize in one step.
inline NormalForm normal_form_of(const PolyMap& f) { return normalize(decompose(f)); }

}  // namespace ga2

#endif  // GA2_DECOMPOSE_HPP
