#include "doctest.h"

#include <random>
#include <sstream>

#include "exactgt/steinberg.hpp"

using namespace exactgt;

TEST_CASE("relator list shape and validity on standard matrices") {
    for (int d : {3, 4, 5}) {
        auto rels = steinberg_relations(d);
        CHECK(rels.size() == steinberg_relator_count(d));
        IntCandidate id = identity_candidate(d);
        for (const Word& w : rels)
            CHECK(evaluate_word(id, w).is_identity());
    }
    CHECK(steinberg_relator_count(3) == 13);
    CHECK_THROWS_AS(steinberg_relations(2), DomainError);
}

TEST_CASE("word evaluation") {
    IntCandidate id3 = identity_candidate(3);
    CHECK(evaluate_word(id3, {}).is_identity());
    CHECK(evaluate_word(id3, {{{1, 2}, 1}}) == elementary(3, 1, 2));
    CHECK(evaluate_word(id3, commutator_word({1, 2}, {2, 3})) == elementary(3, 1, 3));
    CHECK_THROWS_AS(evaluate_word(id3, {{{1, 4}, 1}}), DomainError);

    // the inner order-4 word is a quarter turn in the top-left block
    Word inner = {{{1, 2}, 1}, {{2, 1}, -1}, {{1, 2}, 1}};
    IMat rot = evaluate_word(id3, inner);
    CHECK(matrix_order(rot, 10) == 4);
}

TEST_CASE("homomorphism verification") {
    for (int d : {3, 4, 5}) {
        CHECK(verify_hom(identity_candidate(d)).pass);
        CHECK(verify_hom(inverse_transpose_candidate(d)).pass);
    }

    // swapping in a wrong image breaks at least one relator
    IntCandidate bad = identity_candidate(3);
    bad.images.at(GenSymbol{1, 2}) = elementary(3, 1, 3);
    auto rep = verify_hom(bad);
    CHECK_FALSE(rep.pass);
    CHECK(rep.failures.size() >= 1);

    // homomorphism property on random words for a verified candidate
    std::mt19937_64 rng(424242);
    IntCandidate id4 = identity_candidate(4);
    std::uniform_int_distribution<int> idx(1, 4), len(0, 6), sign(0, 1);
    for (int t = 0; t < 50; ++t) {
        auto random_word = [&]() {
            Word w;
            int n = len(rng);
            for (int k = 0; k < n; ++k) {
                int i = idx(rng), j = idx(rng);
                if (i == j)
                    continue;
                w.push_back({{i, j}, sign(rng) ? 1 : -1});
            }
            return w;
        };
        Word w1 = random_word(), w2 = random_word();
        Word cat = w1;
        cat.insert(cat.end(), w2.begin(), w2.end());
        CHECK(evaluate_word(id4, cat) == evaluate_word(id4, w1) * evaluate_word(id4, w2));
    }
}

TEST_CASE("determinant failures are reported, not thrown") {
    IntCandidate bad = identity_candidate(3);
    bad.images.at(GenSymbol{1, 2}).at(0, 0) = 2;
    auto rep = verify_hom(bad);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.failures.size() >= 1);
    CHECK(rep.failures[0].find("determinant") != std::string::npos);
}

TEST_CASE("finite-image counterexample representation") {
    QuadCandidate c = build_counterexample_rep();
    CHECK(c.images.at(GenSymbol{1, 2}) == parse_quad_matrix("1,0,0;0,-1,0;0,0,-1", Int(-7)));
    CHECK(determinant(c.images.at(GenSymbol{2, 1})) == Quad::one(Int(-7)));
    for (const auto& [sym, img] : c.images)
        CHECK(matrix_order(img, 10) == 2);
    CHECK(verify_hom(c).pass);

    auto order = closure_order(c, 1000000);
    REQUIRE(order.has_value());
    CHECK(*order >= 2);
    MESSAGE("counterexample image order = ", *order);
}

TEST_CASE("closure orders of small groups") {
    // trivial candidate
    IntCandidate triv;
    triv.d = 3;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j)
                triv.images.emplace(GenSymbol{i, j}, imat_identity(3));
    CHECK(closure_order(triv, 10) == 1);

    // single generator -id: order two
    IntCandidate neg;
    neg.d = 2;
    neg.images.emplace(GenSymbol{1, 2}, IMat(-imat_identity(2)));
    CHECK(closure_order(neg, 10) == 2);

    // E_12 generates an infinite group: cap exceeded
    IntCandidate inf;
    inf.d = 2;
    inf.images.emplace(GenSymbol{1, 2}, elementary(2, 1, 2));
    CHECK(closure_order(inf, 100) == std::nullopt);
}

TEST_CASE("exceptional unipotent-group representations") {
    Int d3(-3);
    Quad one3 = Quad::one(d3);

    SUBCASE("size 2: central image is -id") {
        QuadCandidate c = u3_exceptional_rep(U3Case::m2, one3, one3);
        auto rep = verify_u3(c);
        CHECK(rep.commuting_relations);
        CHECK(rep.chain_relation);
        CHECK(rep.e13_central);
        CHECK_FALSE(rep.e13_unipotent);
        // commutator equals -id directly
        const KMat& e12 = c.images.at(GenSymbol{1, 2});
        const KMat& e23 = c.images.at(GenSymbol{2, 3});
        KMat comm = e12 * e23 * inverse(e12) * inverse(e23);
        CHECK(comm == KMat(-KMat::identity(2, one3)));
    }

    SUBCASE("size 3: central image is a cube root of unity") {
        QuadCandidate c = u3_exceptional_rep(U3Case::m3, one3, one3);
        auto rep = verify_u3(c);
        CHECK(rep.commuting_relations);
        CHECK(rep.chain_relation);
        CHECK(rep.e13_central);
        CHECK_FALSE(rep.e13_unipotent);
        Quad lambda(d3, make_rat(Int(-1), Int(2)), make_rat(Int(1), Int(2)));
        const KMat& e13 = c.images.at(GenSymbol{1, 3});
        CHECK(e13.at(0, 0) == lambda);
        CHECK(lambda * lambda * lambda == Quad::one(d3));
        CHECK_FALSE(lambda == Quad::one(d3));
    }

    SUBCASE("nontrivial parameters still satisfy the relations") {
        Quad mu(d3, Rat(2), Rat(1));
        Quad nu(d3, Rat(1), Rat(-1));
        for (U3Case cs : {U3Case::m2, U3Case::m3}) {
            auto rep = verify_u3(u3_exceptional_rep(cs, mu, nu));
            CHECK(rep.commuting_relations);
            CHECK(rep.chain_relation);
            CHECK_FALSE(rep.e13_unipotent);
        }
    }

    CHECK_THROWS_AS(u3_exceptional_rep(U3Case::m2, Quad::zero(d3), one3), DomainError);
    CHECK_THROWS_AS(u3_exceptional_rep(U3Case::m3, Quad::one(Int(-7)), Quad::one(Int(-7))),
                    DomainError);
}

TEST_CASE("candidate files round-trip with line-numbered errors") {
    IntCandidate id4 = identity_candidate(4);
    std::string text = serialize_candidate(id4);
    std::istringstream in(text);
    HomCandidate back = parse_candidate(in);
    CHECK(candidate_is_integer(back));
    CHECK(std::get<IntCandidate>(back).images == id4.images);

    QuadCandidate q = build_counterexample_rep();
    std::istringstream qin(serialize_candidate(q));
    HomCandidate qback = parse_candidate(qin);
    CHECK_FALSE(candidate_is_integer(qback));
    CHECK(std::get<QuadCandidate>(qback).images == q.images);

    SUBCASE("missing image") {
        std::istringstream bad("d = 3\ndomain = Z\nE 1 2 = 1,1,0;0,1,0;0,0,1\n");
        CHECK_THROWS_AS(parse_candidate(bad), ParseError);
    }
    SUBCASE("bad matrix text carries the line number") {
        std::string t = "d = 3\ndomain = Z\nE 1 2 = 1,1;0,1\nE 1 3 = x\n";
        std::istringstream bad(t);
        try {
            parse_candidate(bad);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
        }
    }
    SUBCASE("comments and blank lines are fine") {
        std::string t = "# candidate\n\nd = 3\ndomain = Z\n" ;
        IntCandidate id3 = identity_candidate(3);
        for (const auto& [sym, img] : id3.images)
            t += "E " + std::to_string(sym.i) + " " + std::to_string(sym.j) + " = " + render(img) + "\n";
        std::istringstream in2(t);
        CHECK(verify_hom(parse_candidate(in2)).pass);
    }
}
