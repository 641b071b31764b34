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

}  // namespace

TEST_CASE("decompose the Henon map") {
    FieldCtx q = FieldCtx::rationals();
    PolyMap h = pm("(y, -x + y^2 + 1)", q);
    Word w = decompose(h);
    CHECK(w.size() == 3);
    CHECK(word_to_polymap(w) == h);

    NormalForm nf = normalize(w);
    CHECK(length(nf) == 2);
    CHECK(poly_degree(nf) == std::vector<int>{2});
    CHECK(nf_degree(nf) == 2);
    CHECK(word_to_polymap(nf) == h);

    BiPoly jd = jacobian_det(h);
    CHECK(jd == parse_bipoly("1", q));
}

TEST_CASE("decompose rejects non-automorphisms") {
    FieldCtx q = FieldCtx::rationals();
    CHECK_THROWS_AS(decompose(pm("(x^3, x + y)", q)), NotAnAutomorphism);
    CHECK_THROWS_AS(decompose(pm("(x*y, y)", q)), NotAnAutomorphism);
    CHECK_THROWS_AS(decompose(pm("(x + y, x + y)", q)), NotAnAutomorphism);
    CHECK(decompose(PolyMap::identity(q)).empty());
}

TEST_CASE("coset splitting during normalization") {
    FieldCtx q = FieldCtx::rationals();

    // A single affine letter with matrix (0 1; 1 5) is already a coset
    // representative: identity basic part.
    AffineMap a = AffineMap::linear({Scalar(q, 0), Scalar(q, 1), Scalar(q, 1), Scalar(q, 5)});
    Word w(q, {Letter(a)});
    NormalForm nf = normalize(w);
    CHECK(nf.basic().is_identity());
    REQUIRE(length(nf) == 1);
    CHECK(std::get<CosetRepA>(nf.letters().front()).beta == Scalar(q, 5));

    // Elementary letter splits as b o e' with the degree <= 1 tail absorbed.
    ElementaryMap e(Scalar(q, 2), Scalar(q, 1), Scalar(q, 0),
                    parse_unipoly("y^3 + y + 1", q));
    NormalForm nfe = normalize(Word(q, {Letter(e)}));
    CHECK(nfe.basic() == BasicMap(Scalar(q, 2), Scalar(q, 1), Scalar(q, 1), Scalar(q, 1),
                                  Scalar(q, 0)));
    REQUIRE(length(nfe) == 1);
    const CosetRepE& rep = std::get<CosetRepE>(nfe.letters().front());
    CHECK(rep.p == parse_unipoly("1/2*y", q));
    CHECK(to_polymap(nfe.basic().to_elementary()).ctx() == q);
    // b o e' reproduces e exactly.
    CHECK(word_to_polymap(nfe) == to_polymap(e));
}

TEST_CASE("normal form uniqueness on random words") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(31);
    for (int it = 0; it < 100; ++it) {
        Word w = testutil::rand_word(rng, q, 6, 32, 5);
        PolyMap m = word_to_polymap(w);
        NormalForm via_map = normalize(decompose(m));
        NormalForm via_word = normalize(w);
        CHECK(via_map == via_word);
        CHECK(word_to_polymap(via_word) == m);
        CHECK(nf_degree(via_word) == std::max(1, m.degree()));
    }
}

TEST_CASE("normal form uniqueness over a prime field") {
    FieldCtx f5 = FieldCtx::prime_field(5);
    Rng rng(32);
    for (int it = 0; it < 50; ++it) {
        Word w = testutil::rand_word(rng, f5, 5, 16, 3);
        PolyMap m = word_to_polymap(w);
        CHECK(normalize(decompose(m)) == normalize(w));
    }
}

TEST_CASE("length and poly-degree") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(33);

    NormalForm basic(testutil::rand_basic(rng, q), {});
    CHECK(length(basic) == 0);
    CHECK(nf_degree(basic) == 1);
    CHECK_THROWS_AS(poly_degree(basic), NoElementaryPart);

    NormalForm henon = normal_form_of(pm("(y, -x + y^2 + 1)", q));
    CHECK(length(henon) == 2);
    CHECK(poly_degree(henon) == std::vector<int>{2});

    // Word with elementary letters of degrees 4, 3, 2 (outermost first).
    NormalForm g = testutil::crnf_with_pd(rng, q, {4, 3, 2});
    CHECK(poly_degree(g) == std::vector<int>{4, 3, 2});
    CHECK(nf_degree(g) == 24);
    CHECK(nf_degree(g) == word_to_polymap(g).degree());

    NormalForm single = normal_form_of(pm("(x + y^3, y)", q));
    CHECK(poly_degree(single) == std::vector<int>{3});
}

TEST_CASE("inverse normal form reverses the poly-degree") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(34);
    NormalForm henon = normal_form_of(pm("(y, -x + y^2 + 1)", q));
    NormalForm inv = invert_nf(henon);
    CHECK(poly_degree(inv) == std::vector<int>{2});
    CHECK(compose(word_to_polymap(henon), word_to_polymap(inv)).is_identity());

    NormalForm g = testutil::crnf_with_pd(rng, q, {2, 3, 4});
    CHECK(poly_degree(invert_nf(g)) == std::vector<int>{4, 3, 2});

    BasicMap b = testutil::rand_basic(rng, q);
    NormalForm nb(b, {});
    CHECK(invert_nf(nb) == NormalForm(b.inverse(), {}));

    for (int it = 0; it < 30; ++it) {
        NormalForm r = testutil::rand_crnf(rng, q, static_cast<int>(rng.pick(1, 3)));
        std::vector<int> pd = poly_degree(r);
        std::vector<int> rev(pd.rbegin(), pd.rend());
        CHECK(poly_degree(invert_nf(r)) == rev);
        // g o g^-1 normalizes to the identity; checked on words so that
        // high-degree elements never get expanded.
        CHECK(normalize(r.to_word().concat(invert_nf(r).to_word())) == NormalForm(q));
    }
}

TEST_CASE("length power law for cyclically reduced elements") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(35);
    for (int it = 0; it < 20; ++it) {
        NormalForm g = testutil::rand_crnf(rng, q, static_cast<int>(rng.pick(1, 2)));
        REQUIRE(is_cyclically_reduced(g));
        for (long n = -3; n <= 3; ++n)
            CHECK(length(nf_power(g, n)) ==
                  static_cast<std::size_t>(std::abs(n)) * length(g));
    }
}

TEST_CASE("cyclic reduction") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(36);

    // Basic elements reduce to Basic.
    BasicMap b = testutil::rand_basic(rng, q);
    auto st = cyclically_reduce(NormalForm(b, {}));
    REQUIRE(std::holds_alternative<CRBasic>(st));
    CHECK(std::get<CRBasic>(st).b == b);

    // e^-1 a^-1 (a' e') a e is conjugate to a length-2 word; the stored
    // conjugator transports the reduced form back to the input.
    for (int it = 0; it < 25; ++it) {
        NormalForm core = testutil::rand_crnf(rng, q, 1, 2, false);
        CosetRepA a1 = testutil::rand_rep_a(rng, q);
        CosetRepE e1 = testutil::rand_rep_e(rng, q, 2);
        Word w(q);
        w.push_inner(Letter(ElementaryMap(e1.to_elementary()).inverse()));
        w.push_inner(Letter(AffineMap(a1.to_affine()).inverse()));
        w = w.concat(core.to_word());
        w.push_inner(Letter(AffineMap(a1.to_affine())));
        w.push_inner(Letter(ElementaryMap(e1.to_elementary())));
        NormalForm nf = normalize(w);
        PolyMap input = word_to_polymap(nf);
        auto red = cyclically_reduce(nf);
        REQUIRE(std::holds_alternative<CRReduced>(red));
        const auto& cr = std::get<CRReduced>(red);
        CHECK(length(cr.crnf) == 2);
        PolyMap conj = word_to_polymap(cr.conjugator);
        PolyMap back = compose(compose(conj, word_to_polymap(cr.crnf)),
                               word_to_polymap(cr.conjugator.inverse()));
        CHECK(back == input);
    }

    // h e h^-1 for an elementary involution-free letter reduces into the
    // elementary factor.
    for (int it = 0; it < 10; ++it) {
        CosetRepE e = testutil::rand_rep_e(rng, q, 2);
        Word h = testutil::rand_word(rng, q, 2, 8, 2);
        Word w = h;
        w.push_inner(Letter(ElementaryMap(e.to_elementary())));
        w = w.concat(h.inverse());
        NormalForm nf = normalize(w);
        auto red = cyclically_reduce(nf);
        if (std::holds_alternative<CRInFactor>(red)) {
            const auto& fac = std::get<CRInFactor>(red);
            PolyMap conj = word_to_polymap(fac.conjugator);
            PolyMap back = compose(compose(conj, letter_to_polymap(fac.letter)),
                                   word_to_polymap(fac.conjugator.inverse()));
            CHECK(back == word_to_polymap(nf));
        } else {
            CHECK(std::holds_alternative<CRBasic>(red));
        }
    }
}

TEST_CASE("decompose rejects random maps with non-constant Jacobian") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(37);
    int tested = 0;
    while (tested < 25) {
        BiPoly p(q), qq(q);
        for (int t = 0; t < 3; ++t) {
            p = p + BiPoly::monomial(testutil::rand_scalar(rng, q, 3),
                                     static_cast<int>(rng.pick(0, 2)),
                                     static_cast<int>(rng.pick(0, 2)));
            qq = qq + BiPoly::monomial(testutil::rand_scalar(rng, q, 3),
                                       static_cast<int>(rng.pick(0, 2)),
                                       static_cast<int>(rng.pick(0, 2)));
        }
        PolyMap m(p, qq);
        BiPoly jd = jacobian_det(m);
        if (jd.is_constant()) continue;
        ++tested;
        CHECK_THROWS_AS(decompose(m), NotAnAutomorphism);
    }
}

TEST_CASE("jacobian determinant from the normal form matches expansion") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(39);
    for (int it = 0; it < 50; ++it) {
        Word w = testutil::rand_word(rng, q, 5, 27, 4);
        NormalForm nf = normalize(w);
        BiPoly jd = jacobian_det(word_to_polymap(w));
        REQUIRE(jd.is_constant());
        CHECK(jd.constant_term() == nf_jacobian_det(nf));
    }
}

TEST_CASE("normal form serialization round-trips bit-exactly") {
    FieldCtx q = FieldCtx::rationals();
    Rng rng(38);
    for (int it = 0; it < 40; ++it) {
        NormalForm nf = it % 2 == 0
                            ? testutil::rand_crnf(rng, q, static_cast<int>(rng.pick(1, 2)))
                            : normalize(testutil::rand_word(rng, q, 4, 16, 3));
        std::string text = serialize(nf);
        NormalForm back = parse_normal_form(text, q);
        CHECK(back == nf);
        CHECK(serialize(back) == text);
    }
    // The identity element serializes as a lone basic line.
    CHECK(serialize(NormalForm(q)) == "B 1 1 0 0 0");
    CHECK(parse_normal_form("B 1 1 0 0 0", q) == NormalForm(q));
}
