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

#ifndef GA2_CONJUGACY_HPP
#define GA2_CONJUGACY_HPP

#include <numeric>

#include "decompose.hpp"
#include "mpoly.hpp"

namespace ga2 {

// ---------------------------------------------------------------------------
// Canonical matrices

inline Matrix2 matrix_I(const FieldCtx& c) {
    Scalar m1 = -Scalar::one(c);
    return {m1, Scalar::zero(c), Scalar::zero(c), m1};
}
inline Matrix2 matrix_S(const FieldCtx& c) {
    return {-Scalar::one(c), Scalar::zero(c), Scalar::zero(c), Scalar::one(c)};
}
inline Matrix2 matrix_T(const FieldCtx& c) {
    return {Scalar::zero(c), Scalar::one(c), Scalar::one(c), Scalar::zero(c)};
}
inline Matrix2 matrix_R(const FieldCtx& c) {
    return {Scalar::zero(c), -Scalar::one(c), Scalar::one(c), Scalar::zero(c)};
}

// ---------------------------------------------------------------------------
// Conjugacy of cyclically reduced normal forms

inline bool is_cyclic_permutation(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (std::size_t s = 0; s < a.size(); ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[(s + i) % a.size()] != b[i]) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

namespace detail {

inline void require_cr(const NormalForm& g, const char* who) {
    if (!is_cyclically_reduced(g))
        throw NotCyclicallyReduced(std::string(who) + ": length " +
                                   std::to_string(length(g)));
}

}  // namespace detail

/// Necessary condition for conjugacy of CR elements: equal length and
/// cyclically permuted poly-degrees.
inline bool crnf_conjugacy_necessary(const NormalForm& g1, const NormalForm& g2) {
    detail::require_cr(g1, "crnf_conjugacy_necessary");
    detail::require_cr(g2, "crnf_conjugacy_necessary");
    if (length(g1) != length(g2)) return false;
    return is_cyclic_permutation(poly_degree(g1), poly_degree(g2));
}

namespace detail {

using MP5 = MPoly<5>;

/// Basic map with symbolic parameters (p, q, r, s, t) standing for
/// x' = p x + r y + s, y' = q y + t.
struct SymBasic {
    MP5 p, q, r, s, t;
};

inline SymBasic sym_vars(const FieldCtx& c) {
    return {MP5::variable(c, 0), MP5::variable(c, 1), MP5::variable(c, 2),
            MP5::variable(c, 3), MP5::variable(c, 4)};
}

inline SymBasic sym_const(const BasicMap& b) {
    return {MP5::constant(b.alpha()), MP5::constant(b.beta()), MP5::constant(b.gamma()),
            MP5::constant(b.u()), MP5::constant(b.v())};
}

/// Same composition law as BasicMap::compose, on symbolic entries.
inline SymBasic sym_compose(const SymBasic& a, const SymBasic& b) {
    return {a.p * b.p, a.q * b.q, a.p * b.r + a.r * b.q,
            a.p * b.s + a.r * b.t + a.s, a.q * b.t + a.t};
}

using SymUni = std::vector<MP5>;  // univariate poly with symbolic coefficients

inline SymUni sym_uni_add(const FieldCtx& c, const SymUni& a, const SymUni& b) {
    SymUni r(std::max(a.size(), b.size()), MP5::zero(c));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

inline SymUni sym_uni_mul(const FieldCtx& c, const SymUni& a, const SymUni& b) {
    if (a.empty() || b.empty()) return {};
    SymUni r(a.size() + b.size() - 1, MP5::zero(c));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

/// F(arg) for a constant-coefficient F, by Horner.
inline SymUni sym_uni_compose(const FieldCtx& c, const UniPoly& f, const SymUni& arg) {
    SymUni acc;
    for (int k = f.degree(); k >= 0; --k) {
        acc = sym_uni_mul(c, acc, arg);
        if (acc.empty()) acc.assign(1, MP5::zero(c));
        acc[0] = acc[0] + MP5::constant(f.coeff(k));
    }
    if (acc.empty()) acc.assign(1, MP5::zero(c));
    return acc;
}

/// All x in the field with x^n = c.
inline std::vector<Scalar> nth_roots(const Scalar& c, int n, bool& stalled) {
    const FieldCtx& ctx = c.ctx();
    if (n <= 0) throw InternalError("nth_roots exponent");
    if (c.is_zero()) return {Scalar::zero(ctx)};
    if (n == 1) return {c};
    if (ctx.is_rationals()) {
        mpz_class num = c.value().get_num(), den = c.value().get_den();
        bool neg = num < 0;
        if (neg && n % 2 == 0) return {};
        mpz_class anum = abs(num), rn, rd;
        int exact_n = mpz_root(rn.get_mpz_t(), anum.get_mpz_t(), n);
        int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n);
        if (!exact_n || !exact_d) return {};
        Scalar root = Scalar::fraction(ctx, neg ? mpz_class(-rn) : rn, rd);
        if (n % 2 == 0) return {root, -root};
        return {root};
    }
    unsigned long p = ctx.characteristic();
    if (p > 10000) {
        stalled = true;
        return {};
    }
    std::vector<Scalar> roots;
    for (unsigned long u = 1; u < p; ++u) {
        Scalar s(ctx, static_cast<long>(u));
        if (s.pow(n) == c) roots.push_back(s);
    }
    return roots;
}

/// All roots of a dense univariate polynomial over the field. Over Q only
/// linear, monomial and binomial shapes are attempted; anything else
/// stalls (the conjugacy constraints are monomial-triangular in practice).
inline std::optional<std::vector<Scalar>> univariate_roots(const FieldCtx& ctx,
                                                           const std::vector<Scalar>& cf,
                                                           bool& stalled) {
    std::vector<int> nz;
    for (std::size_t i = 0; i < cf.size(); ++i)
        if (!cf[i].is_zero()) nz.push_back(static_cast<int>(i));
    if (nz.empty()) throw InternalError("zero equation reached root solver");
    std::vector<Scalar> roots;
    if (nz.size() == 1) {
        if (nz[0] == 0) return std::vector<Scalar>{};  // nonzero constant: no root
        return std::vector<Scalar>{Scalar::zero(ctx)};
    }
    if (nz.size() == 2) {
        int m = nz[0], n = nz[1];
        if (m > 0) roots.push_back(Scalar::zero(ctx));
        bool st = false;
        for (const Scalar& r : nth_roots(-cf[m] / cf[n], n - m, st)) roots.push_back(r);
        if (st) {
            stalled = true;
            return std::nullopt;
        }
        return roots;
    }
    if (ctx.is_prime_field() && ctx.characteristic() <= 10000) {
        for (unsigned long u = 0; u < ctx.characteristic(); ++u) {
            Scalar x(ctx, static_cast<long>(u));
            Scalar acc = Scalar::zero(ctx);
            for (auto it = cf.rbegin(); it != cf.rend(); ++it) acc = acc * x + *it;
            if (acc.is_zero()) roots.push_back(x);
        }
        return roots;
    }
    stalled = true;
    return std::nullopt;
}

/// Triangular solver for the basic-conjugator constraint system: forward
/// substitution via linear elimination plus root extraction on univariate
/// equations, with exhaustive enumeration as a last resort over small
/// prime fields. Honest about its limits: `stalled` means "cannot decide",
/// never "no solution".
class BasicParamSolver {
   public:
    BasicParamSolver(const FieldCtx& ctx, std::vector<MP5> eqs)
        : ctx_(ctx), initial_eqs_(std::move(eqs)) {}

    std::vector<std::array<Scalar, 5>> solve(bool& stalled) {
        State st;
        st.eqs = initial_eqs_;
        run(st);
        stalled = stalled_;
        return solutions_;
    }

   private:
    struct State {
        std::array<std::optional<Scalar>, 5> val;
        std::vector<std::pair<int, MP5>> elim;  // var := expression, in order
        std::vector<MP5> eqs;
    };

    void run(State st) {
        if (static_cast<int>(solutions_.size()) >= 8 || --budget_ < 0) {
            stalled_ = true;
            return;
        }
        // Drop satisfied equations; a nonzero constant kills the branch.
        std::vector<MP5> eqs;
        for (const auto& e : st.eqs) {
            if (e.is_zero()) continue;
            if (e.is_constant()) return;
            eqs.push_back(e);
        }
        st.eqs = std::move(eqs);
        if (st.eqs.empty()) {
            finish(st);
            return;
        }

        // 1) A univariate equation pins one variable (possibly branching).
        for (std::size_t i = 0; i < st.eqs.size(); ++i) {
            int var = single_var(st.eqs[i]);
            if (var < 0) continue;
            auto cf = st.eqs[i].as_univariate(var);
            bool stall_here = false;
            auto roots = univariate_roots(ctx_, *cf, stall_here);
            if (!roots) {
                if (stall_here) continue;  // maybe another equation helps
            } else {
                for (const Scalar& r : *roots) assign_and_run(st, i, var, r);
                if (stall_here) stalled_ = true;
                return;
            }
        }

        // 2) Eliminate a variable that occurs linearly with a constant
        //    coefficient: x := -B/A from A x + B = 0. Among the candidate
        //    (equation, variable) pairs, prefer the one whose residual B
        //    mentions the fewest other unknowns, so the system stays
        //    triangular and step 1 keeps receiving univariate equations.
        std::optional<std::tuple<std::size_t, int, MP5>> best;
        long best_score = 0;
        for (std::size_t i = 0; i < st.eqs.size(); ++i) {
            const MP5& e = st.eqs[i];
            for (int var = 0; var < 5; ++var) {
                if (st.val[var] || e.degree_in(var) != 1) continue;
                MP5 b = e.substitute(var, Scalar::zero(ctx_));
                MP5 a = e.substitute(var, Scalar::one(ctx_)) - b;
                if (!a.is_constant() || a.is_zero()) continue;
                long others = 0;
                for (int k = 0; k < 5; ++k)
                    if (k != var && b.mentions(k)) ++others;
                long score = others * 1000 + static_cast<long>(b.terms().size());
                if (!best || score < best_score) {
                    best = {i, var, b.scaled(-a.constant_value().inverse())};
                    best_score = score;
                }
            }
        }
        if (best) {
            auto [i, var, expr] = *best;
            State ns = st;
            ns.eqs.erase(ns.eqs.begin() + static_cast<long>(i));
            for (auto& q : ns.eqs) q = q.substitute(var, expr);
            ns.elim.emplace_back(var, expr);
            run(std::move(ns));
            return;
        }

        // 3) Exhaustive enumeration over a small prime field.
        if (ctx_.is_prime_field() && ctx_.characteristic() <= 101) {
            for (int var = 0; var < 5; ++var) {
                if (st.val[var] || is_eliminated(st, var) || !mentioned(st, var)) continue;
                for (unsigned long u = 0; u < ctx_.characteristic(); ++u)
                    assign_and_run(st, static_cast<std::size_t>(-1), var,
                                   Scalar(ctx_, static_cast<long>(u)));
                return;
            }
        }
        stalled_ = true;
    }

    static bool mentioned(const State& st, int var) {
        for (const auto& e : st.eqs)
            if (e.mentions(var)) return true;
        return false;
    }

    static bool is_eliminated(const State& st, int var) {
        for (const auto& [v, e] : st.elim)
            if (v == var) return true;
        return false;
    }

    static int single_var(const MP5& e) {
        int var = -1;
        for (int k = 0; k < 5; ++k)
            if (e.mentions(k)) {
                if (var >= 0) return -1;
                var = k;
            }
        return var;
    }

    void assign_and_run(const State& st, std::size_t drop, int var, const Scalar& value) {
        if ((var == 0 || var == 1) && value.is_zero()) return;  // alpha*beta != 0
        State ns = st;
        if (drop != static_cast<std::size_t>(-1))
            ns.eqs.erase(ns.eqs.begin() + static_cast<long>(drop));
        ns.val[var] = value;
        for (auto& q : ns.eqs) q = q.substitute(var, value);
        run(std::move(ns));
    }

    void finish(const State& st) {
        // Free variables default to 1 (multipliers) / 0 (shear and shifts).
        std::array<Scalar, 5> sol{Scalar::one(ctx_), Scalar::one(ctx_),
                                  Scalar::zero(ctx_), Scalar::zero(ctx_),
                                  Scalar::zero(ctx_)};
        for (int k = 0; k < 5; ++k)
            if (st.val[k]) sol[k] = *st.val[k];
        // Back-substitute eliminated variables, most recent first.
        for (auto it = st.elim.rbegin(); it != st.elim.rend(); ++it) {
            MP5 e = it->second;
            for (int k = 0; k < 5; ++k)
                if (e.mentions(k)) e = e.substitute(k, sol[k]);
            if (!e.is_constant()) throw InternalError("dangling elimination");
            sol[it->first] = e.constant_value();
        }
        if (sol[0].is_zero() || sol[1].is_zero()) return;
        solutions_.push_back(sol);
    }

    FieldCtx ctx_;
    std::vector<MP5> initial_eqs_;
    std::vector<std::array<Scalar, 5>> solutions_;
    bool stalled_ = false;
    int budget_ = 4096;
};

/// Letter-shape prefilter: conjugation by a basic element preserves the
/// type sequence and elementary degrees position by position.
inline bool shapes_match(const NormalForm& a, const NormalForm& b) {
    if (a.letters().size() != b.letters().size()) return false;
    for (std::size_t i = 0; i < a.letters().size(); ++i) {
        bool ta = is_a_letter(a.letters()[i]), tb = is_a_letter(b.letters()[i]);
        if (ta != tb) return false;
        if (!ta && std::get<CosetRepE>(a.letters()[i]).degree() !=
                       std::get<CosetRepE>(b.letters()[i]).degree())
            return false;
    }
    return true;
}

/// Solve b o w o b^-1 = g2 for b basic, given matching letter shapes.
/// Returns candidate values for D = b^-1 (the flowing seed).
inline std::vector<BasicMap> solve_basic_conjugation(const NormalForm& w,
                                                     const NormalForm& g2,
                                                     bool& stalled) {
    const FieldCtx& c = w.ctx();
    SymBasic flow = sym_vars(c);
    std::vector<MP5> eqs;
    const auto& wl = w.letters();
    const auto& gl = g2.letters();
    for (std::size_t idx = wl.size(); idx-- > 0;) {
        if (is_a_letter(wl[idx])) {
            const Scalar& mu = std::get<CosetRepA>(wl[idx]).beta;
            const Scalar& nu = std::get<CosetRepA>(gl[idx]).beta;
            eqs.push_back(flow.r + flow.q.scaled(mu) - flow.p.scaled(nu));
            flow = {flow.q, flow.p, MP5::zero(c), flow.t,
                    flow.s + flow.t.scaled(mu)};
        } else {
            UniPoly full = std::get<CosetRepE>(wl[idx]).p.shift_up_two();
            const UniPoly& target = std::get<CosetRepE>(gl[idx]).p;
            SymUni arg = {flow.t, flow.q};
            SymUni wsub = sym_uni_compose(c, full, arg);
            int top = std::max(target.degree() + 2, static_cast<int>(wsub.size()) - 1);
            for (int k = 2; k <= top; ++k) {
                MP5 lhs = k < static_cast<int>(wsub.size()) ? wsub[k] : MP5::zero(c);
                eqs.push_back(lhs - flow.p.scaled(target.coeff(k - 2)));
            }
            MP5 w1 = wsub.size() > 1 ? wsub[1] : MP5::zero(c);
            MP5 w0 = wsub.empty() ? MP5::zero(c) : wsub[0];
            flow = {flow.p, flow.q, flow.r + w1, flow.s + w0, flow.t};
        }
    }
    // Closing condition: d o flow o c2^-1 = D, i.e. the seed reproduces.
    SymBasic lhs = sym_compose(sym_const(w.basic()), flow);
    lhs = sym_compose(lhs, sym_const(g2.basic().inverse()));
    eqs.push_back(lhs.p - MP5::variable(c, 0));
    eqs.push_back(lhs.q - MP5::variable(c, 1));
    eqs.push_back(lhs.r - MP5::variable(c, 2));
    eqs.push_back(lhs.s - MP5::variable(c, 3));
    eqs.push_back(lhs.t - MP5::variable(c, 4));

    BasicParamSolver solver(c, std::move(eqs));
    std::vector<BasicMap> out;
    for (const auto& sol : solver.solve(stalled))
        out.emplace_back(sol[0], sol[1], sol[2], sol[3], sol[4]);
    return out;
}

}  // namespace detail

/// Search for h with h o g1 o h^-1 = g2, over all cyclic shifts of g1
/// followed by a basic conjugation. Every returned conjugator has been
/// verified by exact composition. Throws Undecided when the constraint
/// solver stalls on some shift and no other shift produces a witness.
inline std::optional<Word> crnf_conjugate(const NormalForm& g1, const NormalForm& g2) {
    detail::require_cr(g1, "crnf_conjugate");
    detail::require_cr(g2, "crnf_conjugate");
    if (!crnf_conjugacy_necessary(g1, g2)) return std::nullopt;

    Word g1w = g1.to_word();
    NormalForm w = g1;
    Word rho = Word::identity(g1.ctx());
    bool any_stalled = false;
    std::size_t k = length(g1);
    for (std::size_t shift = 0; shift < k; ++shift) {
        if (shift > 0) {
            Letter last = nf_letter_to_letter(w.letters().back());
            Word rotated(w.ctx());
            rotated.push_inner(last);
            rotated.push_inner(Letter(w.basic()));
            for (std::size_t i = 0; i + 1 < w.letters().size(); ++i)
                rotated.push_inner(nf_letter_to_letter(w.letters()[i]));
            w = normalize(rotated);
            Word step(w.ctx());
            step.push_inner(last);
            rho = step.concat(rho);
        }
        if (!detail::shapes_match(w, g2)) continue;
        bool stalled = false;
        for (const BasicMap& seed : detail::solve_basic_conjugation(w, g2, stalled)) {
            BasicMap b = seed.inverse();
            Word h(w.ctx());
            h.push_inner(Letter(b));
            h = h.concat(rho);
            // Exact verification on normal forms (no expansion needed).
            if (normalize(h.concat(g1w).concat(h.inverse())) == g2) return h;
        }
        any_stalled |= stalled;
    }
    if (any_stalled) throw Undecided("basic-conjugator system not triangular");
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Linear conjugacy in GL(2, K)

namespace detail {

/// Basis (v, Mv) turning a non-scalar matrix into its companion form.
inline Matrix2 cyclic_basis(const Matrix2& m) {
    const FieldCtx& c = m.ctx();
    Vec2 v{Scalar::one(c), Scalar::zero(c)};
    if (m.c.is_zero()) {
        if (!m.b.is_zero())
            v = {Scalar::zero(c), Scalar::one(c)};
        else
            v = {Scalar::one(c), Scalar::one(c)};  // diagonal, a != d
    }
    Vec2 mv = m * v;
    return {v.x, mv.x, v.y, mv.y};
}

}  // namespace detail

/// Some(C) with C A C^-1 = B iff A and B are conjugate in GL(2,K):
/// equal trace and determinant, and equal rational canonical form class
/// (scalar matrices are conjugate only to themselves).
inline std::optional<Matrix2> linear_conjugate(const Matrix2& a, const Matrix2& b) {
    if (a.det().is_zero() || b.det().is_zero())
        throw Singular("linear_conjugate needs invertible matrices");
    if (a.trace() != b.trace() || a.det() != b.det()) return std::nullopt;
    if (a.is_scalar() || b.is_scalar()) {
        if (a == b) return Matrix2::identity(a.ctx());
        return std::nullopt;
    }
    Matrix2 pa = detail::cyclic_basis(a), pb = detail::cyclic_basis(b);
    Matrix2 cc = pb * pa.inverse();
    if (cc * a * cc.inverse() != b) throw InternalError("companion conjugation failed");
    return cc;
}

// ---------------------------------------------------------------------------
// Linearization of involutions

enum class InvolutionClass { I, T };

struct InvolutionLinearization {
    Word conjugator;          // h with h o r o h^-1 = L
    InvolutionClass cls;      // L = diag(-1,-1) or the swap
};

namespace detail {

inline Word single_letter_word(const FieldCtx& c, const Letter& l) {
    Word w(c);
    w.push_inner(l);
    return w;
}

inline InvolutionLinearization linearize_affine_involution(const AffineMap& a) {
    const FieldCtx& c = a.ctx();
    const Matrix2& m = a.matrix();
    Scalar half = Scalar(c, 1) / Scalar(c, 2);
    Vec2 t = a.translation_part();
    AffineMap kill = AffineMap::translation({-t.x * half, -t.y * half});
    if (m == matrix_I(c))
        return {single_letter_word(c, Letter(kill)), InvolutionClass::I};
    Word h(c);
    if (m != matrix_T(c)) {
        auto cc = linear_conjugate(m, matrix_T(c));
        if (!cc) throw NotInvolution("affine letter is not an involution");
        h.push_inner(Letter(AffineMap::linear(*cc)));
    }
    if (!t.is_zero()) h.push_inner(Letter(kill));
    if (h.empty()) h.push_inner(Letter(AffineMap::identity(c)));
    return {h, InvolutionClass::T};
}

inline InvolutionLinearization linearize_elementary_involution(const ElementaryMap& e) {
    const FieldCtx& c = e.ctx();
    Scalar half = Scalar(c, 1) / Scalar(c, 2);
    Scalar one = Scalar::one(c);
    if (e.beta().is_one()) {
        // x' = -x + P(y), y' = y: conjugate by x -> x - P(y)/2 to reach
        // diag(-1, 1), then into the swap.
        if (!(-e.alpha()).is_one() || !e.v().is_zero())
            throw NotInvolution("unexpected elementary involution shape");
        ElementaryMap shift(one, one, Scalar::zero(c), (-e.p()).scaled(half));
        Word h(c);
        auto cc = linear_conjugate(matrix_S(c), matrix_T(c));
        h.push_inner(Letter(AffineMap::linear(*cc)));
        h.push_inner(Letter(shift));
        return {h, InvolutionClass::T};
    }
    // x' = alpha x + P(y), y' = -y + v with alpha = +-1 and P(v-y) = -alpha P(y):
    // conjugate by (x, y) -> (y - v/2, x + P(y)/(2 alpha)) to reach
    // diag(-1, alpha).
    if (!(-e.beta()).is_one()) throw NotInvolution("beta of an involution must be +-1");
    ElementaryMap inner(one, one, -e.v() * half, e.p().scaled(half / e.alpha()));
    Word h(c);
    h.push_inner(Letter(AffineMap::linear(matrix_T(c))));
    h.push_inner(Letter(inner));
    if (e.alpha().is_one()) {
        auto cc = linear_conjugate(matrix_S(c), matrix_T(c));
        Word pre(c);
        pre.push_inner(Letter(AffineMap::linear(*cc)));
        return {pre.concat(h), InvolutionClass::T};
    }
    return {h, InvolutionClass::I};
}

}  // namespace detail

/// Conjugates an involution r (given as a map lying in one of the factors,
/// possibly after cyclic reduction of its word) to the linear map
/// I = diag(-1,-1) or T = swap. The conjugator is verified by the caller's
/// tests via exact composition; the class matches sign(det dr).
inline InvolutionLinearization linearize_involution(const PolyMap& r) {
    const FieldCtx& c = r.ctx();
    if (c.characteristic() == 2)
        throw CharacteristicTwo("involutions over F_2 are not in scope");
    if (r.is_identity()) throw NotInvolution("identity has order 1");
    if (!compose(r, r).is_identity()) throw NotInvolution("map squared is not 1");

    CRStatus st = cyclically_reduce(normal_form_of(r));
    Word conj = Word::identity(c);
    Letter letter = Letter(AffineMap::identity(c));
    if (std::holds_alternative<CRBasic>(st)) {
        letter = Letter(std::get<CRBasic>(st).b.to_affine());
    } else if (std::holds_alternative<CRInFactor>(st)) {
        conj = std::get<CRInFactor>(st).conjugator;
        letter = std::get<CRInFactor>(st).letter;
    } else {
        throw NotInFactor("cyclic reduction did not reach a factor element");
    }

    InvolutionLinearization lin =
        std::holds_alternative<AffineMap>(letter)
            ? detail::linearize_affine_involution(std::get<AffineMap>(letter))
            : detail::linearize_elementary_involution(std::get<ElementaryMap>(letter));
    return {lin.conjugator.concat(conj.inverse()), lin.cls};
}

inline PolyMap involution_class_map(const FieldCtx& c, InvolutionClass cls) {
    return to_polymap(AffineMap::linear(cls == InvolutionClass::I ? matrix_I(c)
                                                                  : matrix_T(c)));
}

// ---------------------------------------------------------------------------
// Orders of basic and factor elements

struct OrderResult {
    static OrderResult finite(unsigned long k) { return {true, k}; }
    static OrderResult infinite() { return {false, 0}; }

    bool is_finite = false;
    unsigned long n = 0;

    bool operator==(const OrderResult& o) const {
        return is_finite == o.is_finite && (!is_finite || n == o.n);
    }
};

/// Exact order of a basic map (a, M): the matrix order follows the
/// lcm-of-unit-orders rule (with an extra ch(K) factor for a shear), and
/// the translation part is tested through the geometric sum
/// (1 + M + ... + M^{n-1}) a.
inline OrderResult order_of_basic(const BasicMap& b) {
    const FieldCtx& c = b.ctx();
    auto na = mult_order(b.alpha());
    auto nb = mult_order(b.beta());
    if (!na || !nb) return OrderResult::infinite();
    unsigned long n = std::lcm(*na, *nb);
    if (b.alpha() == b.beta() && !b.gamma().is_zero()) {
        if (c.is_rationals()) return OrderResult::infinite();
        n = std::lcm(n, c.characteristic());
    }
    Matrix2 m = b.to_affine().matrix();
    Matrix2 acc = Matrix2::identity(c);
    Matrix2 sum{Scalar::zero(c), Scalar::zero(c), Scalar::zero(c), Scalar::zero(c)};
    for (unsigned long i = 0; i < n; ++i) {
        sum = {sum.a + acc.a, sum.b + acc.b, sum.c + acc.c, sum.d + acc.d};
        acc = m * acc;
    }
    if (!acc.is_identity()) throw InternalError("matrix order mismatch");
    Vec2 w = sum * Vec2{b.u(), b.v()};
    if (w.is_zero()) return OrderResult::finite(n);
    if (c.is_rationals()) return OrderResult::infinite();
    return OrderResult::finite(n * c.characteristic());
}

namespace detail {

/// Order of a general affine map. Torsion in GL(2,Q) has order at most 6,
/// so the rationals never need the cap.
inline std::optional<OrderResult> affine_order(const AffineMap& a, unsigned long cap) {
    const FieldCtx& c = a.ctx();
    Matrix2 m = a.matrix();
    Matrix2 acc = m;
    unsigned long limit = c.is_rationals() ? 6 : cap;
    unsigned long n = 0;
    for (unsigned long k = 1; k <= limit; ++k) {
        if (acc.is_identity()) {
            n = k;
            break;
        }
        acc = m * acc;
    }
    if (n == 0) {
        if (c.is_rationals()) return OrderResult::infinite();
        return std::nullopt;
    }
    Matrix2 p = Matrix2::identity(c);
    Matrix2 sum{Scalar::zero(c), Scalar::zero(c), Scalar::zero(c), Scalar::zero(c)};
    for (unsigned long i = 0; i < n; ++i) {
        sum = {sum.a + p.a, sum.b + p.b, sum.c + p.c, sum.d + p.d};
        p = m * p;
    }
    Vec2 w = sum * a.translation_part();
    if (w.is_zero()) return OrderResult::finite(n);
    if (c.is_rationals()) return OrderResult::infinite();
    return OrderResult::finite(n * c.characteristic());
}

}  // namespace detail

/// Order of an arbitrary element given in normal form. CR elements have
/// infinite order; factor elements use the closed forms where available
/// and bounded powering otherwise. nullopt means the cap was exceeded.
inline std::optional<OrderResult> order_of_element(const NormalForm& nf,
                                                   unsigned long cap = 64) {
    if (cap < 1) throw ZeroInput("cap must be >= 1");
    CRStatus st = cyclically_reduce(nf);
    if (std::holds_alternative<CRReduced>(st)) return OrderResult::infinite();
    if (std::holds_alternative<CRBasic>(st))
        return order_of_basic(std::get<CRBasic>(st).b);
    const Letter& letter = std::get<CRInFactor>(st).letter;
    const FieldCtx& c = nf.ctx();
    if (std::holds_alternative<AffineMap>(letter)) {
        const AffineMap& a = std::get<AffineMap>(letter);
        if (a.matrix().is_upper_triangular())
            return order_of_basic(BasicMap::from_affine(a));
        return detail::affine_order(a, cap);
    }
    const ElementaryMap& e = std::get<ElementaryMap>(letter);
    PolyMap em = to_polymap(e);
    if (c.is_rationals()) {
        // Over Q a nontrivial elementary map of finite order is an involution.
        if (em.is_identity()) return OrderResult::finite(1);
        if (compose(em, em).is_identity()) return OrderResult::finite(2);
        return OrderResult::infinite();
    }
    PolyMap acc = em;
    for (unsigned long k = 1; k <= cap; ++k) {
        if (acc.is_identity()) return OrderResult::finite(k);
        acc = compose(acc, em);
    }
    return std::nullopt;
}

}  // namespace ga2

#endif  // GA2_CONJUGACY_HPP
