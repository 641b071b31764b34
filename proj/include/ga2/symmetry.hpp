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

#ifndef GA2_SYMMETRY_HPP
#define GA2_SYMMETRY_HPP

#include "conjugacy.hpp"

namespace ga2 {

/// Witness of an involutory symmetry: the map x' = -x + u, y' = -y + v
/// commutes with the element it certifies.
struct SymWitness {
    Scalar u, v;
};

inline PolyMap sym_witness_map(const SymWitness& w) {
    return to_polymap(AffineMap({w.u, w.v}, matrix_I(w.u.ctx())));
}

/// Exact test of s o f o s^-1 = f, rewritten inversion-free as
/// s o f = f o s. s must be an automorphism. When f is one too, the
/// comparison happens on normal forms, which never expands high-degree
/// words; otherwise the polynomial compositions are compared directly.
inline bool is_symmetry(const PolyMap& f, const PolyMap& s) {
    Word ws = decompose(s);  // rejects non-automorphisms
    std::optional<Word> wf;
    try {
        wf = decompose(f);
    } catch (const NotAnAutomorphism&) {
    }
    if (!wf) return compose(s, f) == compose(f, s);
    return normalize(ws.concat(*wf)) == normalize(wf->concat(ws));
}

inline bool is_symmetry_words(const Word& f, const Word& s) {
    return normalize(s.concat(f)) == normalize(f.concat(s));
}

/// Exact test of r o f o r^-1 = f^-1, rewritten inversion-free as
/// f o r o f = r and decided on normal forms. Both maps must be
/// automorphisms.
inline bool is_reversor_words(const Word& f, const Word& r) {
    return normalize(f.concat(r).concat(f)) == normalize(r);
}

inline bool is_reversor(const PolyMap& f, const PolyMap& r) {
    Word wr = decompose(r);
    Word wf = decompose(f);
    return is_reversor_words(wf, wr);
}

namespace detail {

inline Scalar binomial(const FieldCtx& c, int n, int k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return Scalar(c, b);
}

using MP2 = MPoly<2>;  // unknowns (u, v)

/// Coefficient equations (in u, v) of C(-x+u, -y+v) + C(x,y) - shift = 0,
/// where shift is u or v.
inline void commutation_equations(const BiPoly& comp, int shift_var,
                                  std::vector<MP2>& eqs) {
    const FieldCtx& c = comp.ctx();
    std::map<std::pair<int, int>, MP2> rows;
    auto row = [&](int a, int b) -> MP2& {
        auto it = rows.find({a, b});
        if (it == rows.end())
            it = rows.emplace(std::make_pair(a, b), MP2::zero(c)).first;
        return it->second;
    };
    for (const auto& [e, co] : comp.terms()) {
        row(e.i, e.j) = row(e.i, e.j) + MP2::constant(co);  // the +C(x,y) part
        for (int a = 0; a <= e.i; ++a)
            for (int b = 0; b <= e.j; ++b) {
                Scalar k = co * binomial(c, e.i, a) * binomial(c, e.j, b);
                if ((a + b) % 2 == 1) k = -k;
                MP2 mono = MP2::constant(k);
                for (int t = 0; t < e.i - a; ++t) mono = mono * MP2::variable(c, 0);
                for (int t = 0; t < e.j - b; ++t) mono = mono * MP2::variable(c, 1);
                row(a, b) = row(a, b) + mono;
            }
    }
    row(0, 0) = row(0, 0) - MP2::variable(c, shift_var);
    for (auto& [k, e] : rows)
        if (!e.is_zero()) eqs.push_back(e);
}

/// Unique solution of the degree-<=1 subsystem, if the linear part is
/// nonsingular. Outcomes: solved / inconsistent / underdetermined.
enum class LinSolve { solved, inconsistent, underdetermined };

struct LinRow {
    Scalar cu, cv, c0;  // cu u + cv v + c0 = 0
};

inline std::vector<LinRow> linear_rows(const FieldCtx& c, const std::vector<MP2>& eqs) {
    std::vector<LinRow> rows;
    for (const auto& e : eqs) {
        bool linear = true;
        for (const auto& [exp, co] : e.terms())
            if (exp[0] + exp[1] > 1) {
                linear = false;
                break;
            }
        if (!linear || e.is_zero()) continue;
        Scalar c0 = e.constant_value();
        Scalar cu = (e.substitute(0, Scalar::one(c)).substitute(1, Scalar::zero(c)))
                        .constant_value() - c0;
        Scalar cv = (e.substitute(1, Scalar::one(c)).substitute(0, Scalar::zero(c)))
                        .constant_value() - c0;
        rows.push_back({cu, cv, c0});
    }
    return rows;
}

inline LinSolve solve_linear_uv(const FieldCtx& c, const std::vector<MP2>& eqs,
                                Scalar& u, Scalar& v) {
    std::vector<LinRow> rows = linear_rows(c, eqs);
    std::optional<std::size_t> piv_u;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].cu.is_zero()) {
            piv_u = i;
            break;
        }
    if (piv_u)
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == *piv_u || rows[i].cu.is_zero()) continue;
            Scalar m = rows[i].cu / rows[*piv_u].cu;
            rows[i].cu = Scalar::zero(c);
            rows[i].cv = rows[i].cv - m * rows[*piv_u].cv;
            rows[i].c0 = rows[i].c0 - m * rows[*piv_u].c0;
        }
    std::optional<std::size_t> piv_v;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (i != piv_u && !rows[i].cv.is_zero()) {
            piv_v = i;
            break;
        }
    for (const LinRow& r : rows)
        if (r.cu.is_zero() && r.cv.is_zero() && !r.c0.is_zero())
            return LinSolve::inconsistent;
    if (!piv_u || !piv_v) return LinSolve::underdetermined;
    v = -rows[*piv_v].c0 / rows[*piv_v].cv;
    u = (-rows[*piv_u].c0 - rows[*piv_u].cv * v) / rows[*piv_u].cu;
    // Consistency of the full linear subsystem.
    for (const LinRow& r : rows)
        if (!(r.cu * u + r.cv * v + r.c0).is_zero()) return LinSolve::inconsistent;
    return LinSolve::solved;
}

inline bool witness_equations_hold(const std::vector<MP2>& eqs, const Scalar& u,
                                   const Scalar& v) {
    for (const auto& e : eqs)
        if (!e.substitute(0, u).substitute(1, v).is_zero()) return false;
    return true;
}

/// Rank-1 fallback: eliminate one unknown along a linear relation and
/// root-solve the nonlinear equations restricted to that line. Throws
/// Undecided only when a restricted equation is beyond the root patterns.
inline std::optional<SymWitness> solve_on_line(const FieldCtx& c,
                                               const std::vector<MP2>& eqs) {
    std::vector<LinRow> rows = linear_rows(c, eqs);
    const LinRow* pivot = nullptr;
    for (const auto& r : rows)
        if (!r.cu.is_zero() || !r.cv.is_zero()) {
            pivot = &r;
            break;
        }
    if (!pivot) {
        if (witness_equations_hold(eqs, Scalar::zero(c), Scalar::zero(c)))
            return SymWitness{Scalar::zero(c), Scalar::zero(c)};
        throw Undecided("witness system has no usable linear part");
    }
    // Express the pivoted variable in terms of the free one.
    int bound = pivot->cu.is_zero() ? 1 : 0;
    int free_var = 1 - bound;
    Scalar a = bound == 0 ? pivot->cu : pivot->cv;
    MP2 expr = MP2::constant(-pivot->c0 / a) +
               MP2::variable(c, free_var)
                   .scaled(-(bound == 0 ? pivot->cv : pivot->cu) / a);
    bool stalled = false;
    for (const auto& e : eqs) {
        MP2 restricted = e.substitute(bound, expr);
        if (restricted.is_zero()) continue;
        auto cf = restricted.as_univariate(free_var);
        if (!cf) throw InternalError("restriction is not univariate");
        auto roots = univariate_roots(c, *cf, stalled);
        if (!roots) continue;  // pattern not solvable; try another equation
        for (const Scalar& t : *roots) {
            Scalar other = expr.substitute(free_var, t).constant_value();
            Scalar u = bound == 0 ? other : t;
            Scalar v = bound == 0 ? t : other;
            if (witness_equations_hold(eqs, u, v)) return SymWitness{u, v};
        }
        return std::nullopt;  // roots enumerated exhaustively: no witness
    }
    if (witness_equations_hold(eqs, Scalar::zero(c), Scalar::zero(c)))
        return SymWitness{Scalar::zero(c), Scalar::zero(c)};
    throw Undecided("witness equations on the solution line resist root extraction");
}

}  // namespace detail

/// Search for (u, v) making x'=-x+u, y'=-y+v commute with the cyclically
/// reduced element g. Over Q the commutation identities are expanded with
/// symbolic (u, v); constant equations reject fast (even top-degree parts
/// cannot commute), the degree-one subsystem pins the candidate, and exact
/// substitution verifies it. A singular linear part raises Undecided.
/// Over F_p the finitely many candidate pairs are tested exhaustively.
inline std::optional<SymWitness> involutory_symmetry_of_crnf(const NormalForm& g) {
    const FieldCtx& c = g.ctx();
    if (c.characteristic() == 2) throw CharacteristicTwo("no involutions of this shape");
    detail::require_cr(g, "involutory_symmetry_of_crnf");
    PolyMap m = word_to_polymap(g);

    if (c.is_prime_field()) {
        unsigned long p = c.characteristic();
        PolyMap mx(BiPoly::var_x(c), BiPoly::var_y(c));
        for (unsigned long iu = 0; iu < p; ++iu)
            for (unsigned long iv = 0; iv < p; ++iv) {
                SymWitness w{Scalar(c, static_cast<long>(iu)),
                             Scalar(c, static_cast<long>(iv))};
                PolyMap s = sym_witness_map(w);
                bool screen = true;
                for (long t = 0; t < 4 && screen; ++t) {
                    Vec2 pt{Scalar(c, t), Scalar(c, t * t + 1)};
                    screen = apply(s, apply(m, pt)) == apply(m, apply(s, pt));
                }
                if (screen && compose(s, m) == compose(m, s)) return w;
            }
        return std::nullopt;
    }

    std::vector<detail::MP2> eqs;
    detail::commutation_equations(m.p(), 0, eqs);
    detail::commutation_equations(m.q(), 1, eqs);
    for (const auto& e : eqs)
        if (e.is_constant() && !e.is_zero()) return std::nullopt;
    Scalar u = Scalar::zero(c), v = Scalar::zero(c);
    switch (detail::solve_linear_uv(c, eqs, u, v)) {
        case detail::LinSolve::inconsistent:
            return std::nullopt;
        case detail::LinSolve::underdetermined:
            // Rank <= 1: restrict the system to the solution line of the
            // linear part and extract roots there.
            return detail::solve_on_line(c, eqs);
        case detail::LinSolve::solved:
            break;
    }
    if (!detail::witness_equations_hold(eqs, u, v)) return std::nullopt;
    return SymWitness{u, v};
}

/// Structural test of the symmetric normal form: every elementary letter
/// carries an odd polynomial (so all poly-degrees are odd and >= 3) and
/// the leading basic element is linear.
inline bool symmetry_nf_check(const NormalForm& g) {
    detail::require_cr(g, "symmetry_nf_check");
    if (!g.basic().is_linear()) return false;
    for (const auto& l : g.letters()) {
        if (is_a_letter(l)) continue;
        const CosetRepE& e = std::get<CosetRepE>(l);
        if (!is_odd_poly(e.p)) return false;
        if (e.degree() < 3 || e.degree() % 2 == 0) return false;
    }
    return true;
}

/// Necessary conditions for reversibility of a CR element: the reversed
/// poly-degree must be a cyclic permutation of the poly-degree, and the
/// leading basic element must have Jacobian determinant +-1.
inline bool reversibility_necessary(const NormalForm& g) {
    detail::require_cr(g, "reversibility_necessary");
    std::vector<int> pd = poly_degree(g);
    std::vector<int> rev(pd.rbegin(), pd.rend());
    if (!is_cyclic_permutation(pd, rev)) return false;
    Scalar det = g.basic().alpha() * g.basic().beta();
    return det.is_one() || (-det).is_one();
}

/// A verified reversor together with its exact (even) order.
struct ReversorWitness {
    Word r;
    unsigned long order;
};

struct ReversibleBuild {
    NormalForm f;
    ReversorWitness reversor;
};

enum class InvolutoryForm { TT, HatT, HatBar };

namespace detail {

/// Elementary involutions allowed inside the reversible normal forms:
///   swap-class: x' = -x + y^2 Q(y), y' = y   (Q != 0), or
///               x' =  x + P(y),     y' = -y  (P odd, deg >= 3);
///   I-class:    x' = -x + P(y),     y' = -y  (P even, deg >= 2).
inline bool characterized_elementary_involution(const ElementaryMap& e) {
    const FieldCtx& c = e.ctx();
    if (!compose(to_polymap(e), to_polymap(e)).is_identity()) return false;
    if (!e.v().is_zero()) return false;
    Scalar mone = -Scalar::one(c);
    if (e.alpha() == mone && e.beta().is_one())
        return e.p().degree() >= 2 && e.p().coeff(0).is_zero() && e.p().coeff(1).is_zero();
    if (e.alpha().is_one() && e.beta() == mone)
        return e.p().degree() >= 3 && is_odd_poly(e.p());
    if (e.alpha() == mone && e.beta() == mone)
        return e.p().degree() >= 2 && is_even_poly(e.p());
    return false;
}

inline Word palindrome_word(const Word& half, const Letter& mid, const Letter& tail) {
    Word w = half;
    w.push_inner(mid);
    w = w.concat(half.inverse());
    w.push_inner(tail);
    return w;
}

}  // namespace detail

/// Builds the cyclically reduced normal forms that are products of two
/// involutions: f = h o X o h^-1 o Y with (X, Y) = (T, T), (e_hat, T) or
/// (e_hat, e_bar). The reversor Y is returned with verified order 2.
inline ReversibleBuild build_reversible_involutory(
    InvolutoryForm form, const Word& half,
    const std::optional<ElementaryMap>& e_hat = std::nullopt,
    const std::optional<ElementaryMap>& e_bar = std::nullopt) {
    const FieldCtx& c = half.ctx();
    if (c.characteristic() == 2) throw CharacteristicTwo("reversible forms need ch != 2");
    Letter t_letter(AffineMap::linear(matrix_T(c)));

    Letter mid = t_letter, tail = t_letter;
    if (form != InvolutoryForm::TT) {
        if (!e_hat || !detail::characterized_elementary_involution(*e_hat))
            throw InvalidLetters("e_hat must be an elementary involution of the "
                                 "characterized shape");
        mid = Letter(*e_hat);
    }
    if (form == InvolutoryForm::HatBar) {
        if (!e_bar || !detail::characterized_elementary_involution(*e_bar))
            throw InvalidLetters("e_bar must be an elementary involution of the "
                                 "characterized shape");
        tail = Letter(*e_bar);
    }

    Word w = detail::palindrome_word(half, mid, tail);
    NormalForm f = normalize(w);
    if (!is_cyclically_reduced(f))
        throw InvalidLetters("letters collapse; the built word is not cyclically reduced");
    PolyMap rm = letter_to_polymap(tail);
    Word rword(c);
    rword.push_inner(tail);
    if (!compose(rm, rm).is_identity() || !is_reversor_words(w, rword))
        throw InvalidLetters("built word failed exact reversor verification");
    return {f, ReversorWitness{rword, 2}};
}

/// Builds the order-4-reversible normal form
/// f = e_m o ... o a_1 o e_1 o R o e_1^-1 o a_1^-1 o ... o e_m^-1 o R2
/// with R = (0 -1; 1 0), R2 = (alpha, -(alpha^2+1)/gamma; gamma, -alpha).
/// All elementary letters must carry odd polynomials, the field must have
/// no primitive fourth root of unity, and the resulting map has Jacobian
/// determinant 1, a verified reversor -R2 of order 4, and the involutory
/// symmetry witness (0, 0).
inline ReversibleBuild build_reversible_order4(const std::vector<CosetRepE>& es,
                                               const std::vector<CosetRepA>& as,
                                               const Scalar& alpha, const Scalar& gamma) {
    if (es.empty()) throw InvalidLetters("need at least one elementary letter");
    if (as.size() + 1 != es.size())
        throw InvalidLetters("need exactly one fewer affine letter than elementary");
    const FieldCtx& c = es.front().ctx();
    if (c.characteristic() == 2) throw CharacteristicTwo("reversible forms need ch != 2");
    if (has_primitive_fourth_root(c))
        throw FourthRootPresent("field contains a primitive fourth root of unity");
    if (gamma.is_zero()) throw ZeroGamma("gamma must be nonzero");
    for (const auto& e : es)
        if (!is_odd_poly(e.p)) throw EvenPolynomial("elementary letters must be odd");

    Scalar a2p1 = alpha * alpha + Scalar::one(c);
    Matrix2 r2{alpha, -a2p1 / gamma, gamma, -alpha};

    Word half(c);
    for (std::size_t i = 0; i < es.size(); ++i) {
        half.push_inner(Letter(ElementaryMap(es[i].to_elementary())));
        if (i < as.size()) half.push_inner(Letter(AffineMap(as[i].to_affine())));
    }
    Word w = detail::palindrome_word(half, Letter(AffineMap::linear(matrix_R(c))),
                                     Letter(AffineMap::linear(r2)));
    NormalForm f = normalize(w);
    if (!is_cyclically_reduced(f))
        throw InvalidLetters("letters collapse; the built word is not cyclically reduced");

    if (!nf_jacobian_det(f).is_one())
        throw InternalError("order-4 construction must preserve area");
    PolyMap rm = to_polymap(AffineMap::linear(-r2));
    PolyMap r2m = compose(rm, rm);
    if (r2m.is_identity() || !compose(r2m, r2m).is_identity())
        throw InternalError("reversor is not of order 4");
    Word rword(c);
    rword.push_inner(Letter(AffineMap::linear(-r2)));
    if (!is_reversor_words(w, rword))
        throw InternalError("order-4 reversor verification failed");
    Word iword(c);
    iword.push_inner(Letter(AffineMap::linear(matrix_I(c))));
    if (!is_symmetry_words(w, iword))
        throw InternalError("order-4 construction must commute with I");

    return {f, ReversorWitness{rword, 4}};
}

/// Exact order of a verified reversor of a CR element: always even, and
/// over Q always 2 or 4. A violation signals an implementation bug.
inline unsigned long reversor_order(const PolyMap& f, const PolyMap& r,
                                    unsigned long cap = 64) {
    if (!is_reversor(f, r)) throw NotAReversor("r does not invert f by conjugation");
    if (!std::holds_alternative<CRReduced>(cyclically_reduce(normal_form_of(f))))
        throw NotCyclicallyReduced("reversor_order needs a CR element");
    auto ord = order_of_element(normal_form_of(r), cap);
    if (!ord) throw CapExceeded("order of reversor exceeds cap");
    if (!ord->is_finite) throw TheoremViolation("reversor of infinite order");
    if (ord->n % 2 != 0) throw TheoremViolation("reversor of odd order");
    if (f.ctx().is_rationals() && ord->n != 2 && ord->n != 4)
        throw TheoremViolation("over Q a reversor has order 2 or 4");
    return ord->n;
}

/// Reciprocal-spectrum test at a fixed point a of f: the Jacobians at a
/// and at r(a) must have reciprocal eigenvalue multisets, i.e.
/// det1 * det2 = 1 and trace1 = trace2 / det2.
inline bool fixed_point_spectrum_check(const PolyMap& f, const PolyMap& r,
                                       const Vec2& a) {
    if (apply(f, a) != a) throw NotFixedPoint("a is not fixed by f");
    if (!is_reversor(f, r)) throw NotAReversor("r does not invert f by conjugation");
    Matrix2 j1 = jacobian_at(f, a);
    Matrix2 j2 = jacobian_at(f, apply(r, a));
    return (j1.det() * j2.det()).is_one() && j1.trace() * j2.det() == j2.trace();
}

enum class GroupStructureTag {
    Cinf,
    C2xCinf,
    Dinf,
    CinfRtimesC4,
    CinfxC2RtimesC2,
    UnknownOrIrreversible,
};

inline const char* to_string(GroupStructureTag t) {
    switch (t) {
        case GroupStructureTag::Cinf: return "Cinf";
        case GroupStructureTag::C2xCinf: return "C2xCinf";
        case GroupStructureTag::Dinf: return "Dinf";
        case GroupStructureTag::CinfRtimesC4: return "CinfRtimesC4";
        case GroupStructureTag::CinfxC2RtimesC2: return "CinfxC2RtimesC2";
        case GroupStructureTag::UnknownOrIrreversible: return "UnknownOrIrreversible";
    }
    return "?";
}

/// Best-consistent structure label for the reversing symmetry group of f,
/// given verified certificates. The label claims subgroup containment,
/// not completeness. Only meaningful over Q, where the unit group is C2.
inline GroupStructureTag classify_reversing_group(
    const PolyMap& f, const std::optional<SymWitness>& sym,
    const std::vector<ReversorWitness>& revs) {
    if (!f.ctx().is_rationals())
        throw NotRationalField("structure labels require the rational field");
    if (sym && !is_symmetry(f, sym_witness_map(*sym)))
        throw InconsistentCertificates("symmetry witness does not commute with f");
    bool has_order4 = false, has_involutory = false;
    for (const auto& rw : revs) {
        PolyMap rm = word_to_polymap(rw.r);
        if (!is_reversor(f, rm))
            throw InconsistentCertificates("reversor witness fails verification");
        auto ord = order_of_element(normal_form_of(rm), 64);
        if (!ord || !ord->is_finite || ord->n != rw.order)
            throw InconsistentCertificates("reversor order does not match certificate");
        if (rw.order == 2) has_involutory = true;
        if (rw.order == 4) {
            PolyMap r2 = compose(rm, rm);
            if (!is_symmetry(f, r2))
                throw InconsistentCertificates("square of order-4 reversor is not a symmetry");
            has_order4 = true;
        }
        if (rw.order != 2 && rw.order != 4)
            throw InconsistentCertificates("reversor of unexpected order over Q");
    }
    if (!sym && revs.empty()) return GroupStructureTag::UnknownOrIrreversible;
    if (revs.empty()) return GroupStructureTag::C2xCinf;
    if (has_order4)
        return has_involutory ? GroupStructureTag::CinfxC2RtimesC2
                              : GroupStructureTag::CinfRtimesC4;
    return sym ? GroupStructureTag::CinfxC2RtimesC2 : GroupStructureTag::Dinf;
}

}  // namespace ga2

#endif  // GA2_SYMMETRY_HPP
