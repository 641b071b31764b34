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

#include <doctest.h>

#include "testutil.hpp"

using namespace ga2;
using testutil::Rng;

namespace {

PolyMap pm(const std::string& s, const FieldCtx& ctx) { return parse_map_expr(s, ctx); }

Word single(const FieldCtx& ctx, const Letter& l) {
    Word w(ctx);
    w.push_inner(l);
    return w;
}

ElementaryMap e_letter(const FieldCtx& ctx, const std::string& poly) {
    return ElementaryMap(Scalar::one(ctx), Scalar::one(ctx), Scalar::zero(ctx),
                         parse_unipoly(poly, ctx));
}

}  // namespace

TEST_CASE("symmetry and reversor predicates") {
    FieldCtx q = FieldCtx::rationals();
    PolyMap f = pm("(y, x + y^3)", q);
    PolyMap imap = to_polymap(AffineMap::linear(matrix_I(q)));
    CHECK(is_symmetry(f, imap));
    CHECK_FALSE(is_symmetry(pm("(y, x + y^2)", q), imap));
    CHECK(is_symmetry(f, f));
    CHECK_THROWS_AS(is_symmetry(f, pm("(x^3, x + y)", q)), NotAnAutomorphism);

    // f = e T e^-1 T with e = (x + y^3, y) has the swap as a reversor.
    PolyMap t = pm("(y, x)", q);
    PolyMap e = pm("(x + y^3, y)", q);
    PolyMap fr = compose(compose(compose(e, t), invert_map(e)), t);
    CHECK(is_reversor(fr, t));
    CHECK_FALSE(is_reversor(f, PolyMap::identity(q)));

    // f = r e r e^-1 with r the quarter turn.
    PolyMap r = pm("(-y, x)", q);
    PolyMap f2 = compose(compose(compose(r, e), r), invert_map(e));
    CHECK(is_reversor(f2, r));

    // Reversor relations transfer to inverses.
    CHECK(is_reversor(invert_map(fr), t));
    CHECK(is_reversor(fr, invert_map(t)));
}

TEST_CASE("involutory symmetry witness of a CRNF") {
    FieldCtx q = FieldCtx::rationals();

    auto w1 = involutory_symmetry_of_crnf(normal_form_of(pm("(y, x + y^3)", q)));
    REQUIRE(w1.has_value());
    CHECK(w1->u == Scalar(q, 0));
    CHECK(w1->v == Scalar(q, 0));

    CHECK_FALSE(
        involutory_symmetry_of_crnf(normal_form_of(pm("(y, x + y^2)", q))).has_value());

    // Conjugating by the translation (1,2) moves the witness to (2,4).
    PolyMap f = pm("(y, x + y^3 - y)", q);
    PolyMap t = to_polymap(AffineMap::translation({Scalar(q, 1), Scalar(q, 2)}));
    PolyMap g = compose(compose(t, f), invert_map(t));
    auto w2 = involutory_symmetry_of_crnf(normal_form_of(g));
    REQUIRE(w2.has_value());
    CHECK(w2->u == Scalar(q, 2));
    CHECK(w2->v == Scalar(q, 4));
    CHECK(is_symmetry(g, sym_witness_map(*w2)));

    NormalForm basic(BasicMap::identity(q), {});
    CHECK_THROWS_AS(involutory_symmetry_of_crnf(basic), NotCyclicallyReduced);

    // Conjugating by a basic element moves the witness by a translation
    // only; the detected witness must commute exactly.
    Rng rng(54);
    for (int it = 0; it < 10; ++it) {
        NormalForm core = testutil::rand_crnf(rng, q, 1, 3, false, true);
        BasicMap b = testutil::rand_basic(rng, q, 2);
        Word w(q);
        w.push_inner(Letter(b));
        w = w.concat(core.to_word());
        w.push_inner(Letter(b.inverse()));
        NormalForm g = normalize(w);
        REQUIRE(is_cyclically_reduced(g));
        auto wit = involutory_symmetry_of_crnf(g);
        REQUIRE(wit.has_value());
        CHECK(is_symmetry(word_to_polymap(g), sym_witness_map(*wit)));
    }
}

TEST_CASE("involutory symmetry witness over a prime field") {
    FieldCtx f3 = FieldCtx::prime_field(3);
    auto w = involutory_symmetry_of_crnf(normal_form_of(pm("(y, x + y^3 - y)", f3)));
    REQUIRE(w.has_value());
    CHECK(is_symmetry(pm("(y, x + y^3 - y)", f3), sym_witness_map(*w)));
}

TEST_CASE("symmetric normal form check") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(51);

    // Odd letters with a linear basic pass.
    NormalForm good(BasicMap(Scalar(q, 2), Scalar(q, 1), Scalar(q, 1), Scalar(q, 0),
                             Scalar(q, 0)),
                    {NFLetter(CosetRepA{Scalar(q, 1)}),
                     NFLetter(CosetRepE(parse_unipoly("y", q))),
                     NFLetter(CosetRepA{Scalar(q, 0)}),
                     NFLetter(CosetRepE(parse_unipoly("y^3 + y", q)))});
    CHECK(symmetry_nf_check(good));

    // The Henon form has even poly-degree (2).
    CHECK_FALSE(symmetry_nf_check(normal_form_of(pm("(y, -x + y^2 + 1)", q))));

    // A translation in the leading basic fails.
    NormalForm moved(BasicMap(Scalar(q, 1), Scalar(q, 1), Scalar(q, 0), Scalar(q, 1),
                              Scalar(q, 0)),
                     good.letters());
    CHECK_FALSE(symmetry_nf_check(moved));

    // Structural check implies the witness (0, 0).
    for (int it = 0; it < 10; ++it) {
        NormalForm g = testutil::rand_crnf(rng, q, static_cast<int>(rng.pick(1, 2)), 3,
                                           false, true);
        REQUIRE(symmetry_nf_check(g));
        auto w = involutory_symmetry_of_crnf(g);
        REQUIRE(w.has_value());
        CHECK(w->u == Scalar(q, 0));
        CHECK(w->v == Scalar(q, 0));
    }
}

TEST_CASE("poly-degree reversibility gate") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(52);

    NormalForm g234 = testutil::crnf_with_pd(rng, q, {2, 3, 4});
    CHECK_FALSE(reversibility_necessary(g234));
    CHECK(nf_degree(g234) == 24);

    NormalForm g2323 = testutil::crnf_with_pd(rng, q, {2, 3, 2, 3});
    CHECK(reversibility_necessary(g2323));

    NormalForm henon = normal_form_of(pm("(y, -x + y^2 + 1)", q));
    CHECK(reversibility_necessary(henon));

    // A leading basic with determinant other than +-1 fails the gate.
    NormalForm scaled(BasicMap(Scalar(q, 2), Scalar(q, 1), Scalar(q, 0), Scalar(q, 0),
                               Scalar(q, 0)),
                      g2323.letters());
    CHECK_FALSE(reversibility_necessary(scaled));
}

TEST_CASE("involutory reversible builder") {
    FieldCtx q = FieldCtx::rationals();

    // Degenerate m=1 palindrome: f = e T e^-1 T.
    Word half = single(q, Letter(e_letter(q, "y^3")));
    auto built = build_reversible_involutory(InvolutoryForm::TT, half);
    PolyMap fm = word_to_polymap(built.f);
    PolyMap rm = word_to_polymap(built.reversor.r);
    CHECK(built.reversor.order == 2);
    CHECK(is_reversor(fm, rm));
    CHECK(fm == compose(compose(compose(pm("(x + y^3, y)", q), pm("(y, x)", q)),
                                pm("(x - y^3, y)", q)),
                        pm("(y, x)", q)));

    // Factorization into V W^-1 with V^2 = W^2.
    PolyMap v = compose(fm, rm);
    CHECK(compose(v, v) == compose(rm, rm));
    CHECK(is_reversor(fm, v));

    // Form with two I-class elementary involutions has determinant +1.
    ElementaryMap ehat(-Scalar::one(q), -Scalar::one(q), Scalar::zero(q),
                       parse_unipoly("y^2", q));
    ElementaryMap ebar(-Scalar::one(q), -Scalar::one(q), Scalar::zero(q),
                       parse_unipoly("y^4 + 2*y^2", q));
    Word half2(q);
    half2.push_inner(Letter(AffineMap(CosetRepA{Scalar(q, 1)}.to_affine())));
    auto built2 = build_reversible_involutory(InvolutoryForm::HatBar, half2, ehat, ebar);
    PolyMap fm2 = word_to_polymap(built2.f);
    BiPoly jd = jacobian_det(fm2);
    REQUIRE(jd.is_constant());
    CHECK(jd.constant_term().is_one());
    CHECK(is_reversor(fm2, word_to_polymap(built2.reversor.r)));

    // Palindromic poly-degree.
    std::vector<int> pd = poly_degree(built2.f);
    std::vector<int> rev(pd.rbegin(), pd.rend());
    CHECK(is_cyclic_permutation(pd, rev));

    // Bad letters are rejected.
    ElementaryMap not_inv(Scalar::one(q), Scalar::one(q), Scalar::zero(q),
                          parse_unipoly("y^2", q));
    CHECK_THROWS_AS(
        build_reversible_involutory(InvolutoryForm::HatT, half, not_inv),
        InvalidLetters);
}

TEST_CASE("order-4 reversible builder") {
    FieldCtx q = FieldCtx::rationals();

    // Larger palindrome, checked structurally on the word level.
    std::vector<CosetRepE> es{CosetRepE(parse_unipoly("y^3", q)),
                              CosetRepE(parse_unipoly("y", q))};
    std::vector<CosetRepA> as{CosetRepA{Scalar(q, 2)}};
    auto big = build_reversible_order4(es, as, Scalar(q, 1), Scalar(q, 2));
    CHECK(big.reversor.order == 4);
    CHECK(poly_degree(big.f) == std::vector<int>{5, 3, 3, 5});
    CHECK(nf_jacobian_det(big.f).is_one());
    CHECK(is_reversor_words(big.f.to_word(), big.reversor.r));

    // Small instance, checked through full expansion as well.
    auto built = build_reversible_order4({CosetRepE(parse_unipoly("y", q))}, {},
                                         Scalar(q, 0), Scalar(q, 1));
    CHECK(poly_degree(built.f) == std::vector<int>{3, 3});
    PolyMap fm = word_to_polymap(built.f);
    PolyMap rm = word_to_polymap(built.reversor.r);
    CHECK(is_reversor(fm, rm));
    CHECK(reversor_order(fm, rm) == 4);
    BiPoly jd = jacobian_det(fm);
    REQUIRE(jd.is_constant());
    CHECK(jd.constant_term().is_one());

    // The square of the reversor is a symmetry that linearizes to the
    // point reflection class.
    PolyMap r2 = compose(rm, rm);
    CHECK(is_symmetry(fm, r2));
    auto lin = linearize_involution(r2);
    CHECK(lin.cls == InvolutionClass::I);

    // The built map commutes with I: witness (0,0).
    auto w = involutory_symmetry_of_crnf(built.f);
    REQUIRE(w.has_value());
    CHECK(w->u == Scalar(q, 0));
    CHECK(w->v == Scalar(q, 0));

    // Constraint violations raise typed errors.
    CHECK_THROWS_AS(build_reversible_order4({CosetRepE(parse_unipoly("y^2", q))}, {},
                                            Scalar(q, 0), Scalar(q, 1)),
                    EvenPolynomial);
    CHECK_THROWS_AS(build_reversible_order4(es, as, Scalar(q, 0), Scalar(q, 0)), ZeroGamma);
    FieldCtx f5 = FieldCtx::prime_field(5);
    CHECK_THROWS_AS(build_reversible_order4({CosetRepE(parse_unipoly("y", f5))}, {},
                                            Scalar(f5, 0), Scalar(f5, 1)),
                    FourthRootPresent);
}

TEST_CASE("composition of two reversors is a symmetry") {
    FieldCtx q = FieldCtx::rationals();
    Word half = single(q, Letter(e_letter(q, "y^3")));
    auto built = build_reversible_involutory(InvolutoryForm::TT, half);
    PolyMap fm = word_to_polymap(built.f);
    PolyMap r1 = word_to_polymap(built.reversor.r);
    PolyMap r2 = compose(fm, r1);  // also a reversor
    CHECK(is_reversor(fm, r2));
    CHECK(is_symmetry(fm, compose(r1, r2)));
    CHECK(is_symmetry(fm, compose(r2, r1)));
}

TEST_CASE("reversor order theorem checks") {
    FieldCtx q = FieldCtx::rationals();
    Word half = single(q, Letter(e_letter(q, "y^3")));
    auto tt = build_reversible_involutory(InvolutoryForm::TT, half);
    CHECK(reversor_order(word_to_polymap(tt.f), word_to_polymap(tt.reversor.r)) == 2);

    CHECK_THROWS_AS(reversor_order(word_to_polymap(tt.f), PolyMap::identity(q)),
                    NotAReversor);
}

TEST_CASE("higher even reversor orders occur over finite fields") {
    // Over Q a reversor of a CR element has order 2 or 4; with a larger
    // unit group even orders beyond 4 appear. Generalized standard form
    // x' = x + y^4, y' = y + x'^4 over F_13 is reversed by (4y, 4x):
    // its square is the scaling by 16 = 3, of multiplicative order 3.
    FieldCtx f13 = FieldCtx::prime_field(13);
    PolyMap f = compose(parse_map_expr("(x, y + x^4)", f13),
                        parse_map_expr("(x + y^4, y)", f13));
    PolyMap r = parse_map_expr("(4*y, 4*x)", f13);
    REQUIRE(is_cyclically_reduced(normal_form_of(f)));
    REQUIRE(is_reversor(f, r));
    CHECK(reversor_order(f, r) == 6);
}

TEST_CASE("reciprocal spectrum at fixed points") {
    FieldCtx q = FieldCtx::rationals();
    PolyMap t = pm("(y, x)", q);
    PolyMap e = pm("(x + y^3, y)", q);
    PolyMap f = compose(compose(compose(e, t), invert_map(e)), t);
    Vec2 origin{Scalar(q, 0), Scalar(q, 0)};
    REQUIRE(apply(f, origin) == origin);
    CHECK(fixed_point_spectrum_check(f, t, origin));

    CHECK_THROWS_AS(fixed_point_spectrum_check(f, t, {Scalar(q, 1), Scalar(q, 1)}),
                    NotFixedPoint);

    // Linear map with a linear reversor reduces to matrix similarity.
    PolyMap lin = pm("(2*x, 1/2*y)", q);
    CHECK(is_reversor(lin, t));
    CHECK(fixed_point_spectrum_check(lin, t, origin));
}

TEST_CASE("reversing group structure labels") {
    FieldCtx q = FieldCtx::rationals();

    // Order-4 construction with only the order-4 reversor supplied.
    auto o4 = build_reversible_order4({CosetRepE(parse_unipoly("y", q))}, {},
                                      Scalar(q, 0), Scalar(q, 1));
    PolyMap f4 = word_to_polymap(o4.f);
    CHECK(classify_reversing_group(f4, std::nullopt, {o4.reversor}) ==
          GroupStructureTag::CinfRtimesC4);

    // e T e^-1 T with an even-degree e: T reverses, I does not commute.
    Word half(q);
    half.push_inner(Letter(e_letter(q, "y^2")));
    auto tt = build_reversible_involutory(InvolutoryForm::TT, half);
    PolyMap ftt = word_to_polymap(tt.f);
    CHECK_FALSE(is_symmetry(ftt, to_polymap(AffineMap::linear(matrix_I(q)))));
    CHECK(classify_reversing_group(ftt, std::nullopt, {tt.reversor}) ==
          GroupStructureTag::Dinf);

    // Odd e: the same shape also commutes with I.
    Word halfodd(q);
    halfodd.push_inner(Letter(e_letter(q, "y^3")));
    auto tt2 = build_reversible_involutory(InvolutoryForm::TT, halfodd);
    PolyMap f2 = word_to_polymap(tt2.f);
    SymWitness sym{Scalar(q, 0), Scalar(q, 0)};
    REQUIRE(is_symmetry(f2, sym_witness_map(sym)));
    CHECK(classify_reversing_group(f2, sym, {tt2.reversor}) ==
          GroupStructureTag::CinfxC2RtimesC2);
    CHECK(classify_reversing_group(f2, sym, {}) == GroupStructureTag::C2xCinf);
    CHECK(classify_reversing_group(f2, std::nullopt, {}) ==
          GroupStructureTag::UnknownOrIrreversible);

    // Inconsistent certificates are rejected.
    CHECK_THROWS_AS(classify_reversing_group(f2, SymWitness{Scalar(q, 1), Scalar(q, 0)}, {}),
                    InconsistentCertificates);
    FieldCtx f3 = FieldCtx::prime_field(3);
    CHECK_THROWS_AS(
        classify_reversing_group(PolyMap::identity(f3), std::nullopt, {}),
        NotRationalField);
}

TEST_CASE("constructed reversible maps pass the necessary conditions") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(53);
    for (int it = 0; it < 10; ++it) {
        Word half(q);
        half.push_inner(Letter(e_letter(q, it % 2 == 0 ? "y^3" : "y^5 - y^3")));
        if (it % 3 == 0)
            half.push_inner(Letter(AffineMap(CosetRepA{Scalar(q, it)}.to_affine())));
        auto built = build_reversible_involutory(InvolutoryForm::TT, half);
        auto st = cyclically_reduce(built.f);
        REQUIRE(std::holds_alternative<CRReduced>(st));
        CHECK(reversibility_necessary(std::get<CRReduced>(st).crnf));
    }
    for (int it = 0; it < 5; ++it) {
        auto built = build_reversible_order4(
            {CosetRepE(testutil::rand_odd_unipoly(rng, q, 3))}, {},
            Scalar(q, rng.pick(0, 2)), Scalar(q, 1 + rng.pick(0, 2)));
        auto st = cyclically_reduce(built.f);
        REQUIRE(std::holds_alternative<CRReduced>(st));
        CHECK(reversibility_necessary(std::get<CRReduced>(st).crnf));
        // Reversor relations transfer to inverses, exactly.
        Word fw = built.f.to_word();
        CHECK(is_reversor_words(fw.inverse(), built.reversor.r));
        CHECK(is_reversor_words(fw, built.reversor.r.inverse()));
    }
}

TEST_CASE("parity-based operations reject characteristic two") {
    FieldCtx f2 = FieldCtx::prime_field(2);
    CHECK_THROWS_AS(linearize_involution(PolyMap::identity(f2)), CharacteristicTwo);
    Word half(f2);
    half.push_inner(Letter(ElementaryMap(Scalar::one(f2), Scalar::one(f2),
                                         Scalar::zero(f2), parse_unipoly("y^3", f2))));
    CHECK_THROWS_AS(build_reversible_involutory(InvolutoryForm::TT, half),
                    CharacteristicTwo);
    NormalForm nf(BasicMap::identity(f2),
                  {NFLetter(CosetRepA{Scalar(f2, 0)}),
                   NFLetter(CosetRepE(parse_unipoly("y", f2)))});
    CHECK_THROWS_AS(involutory_symmetry_of_crnf(nf), CharacteristicTwo);
}
