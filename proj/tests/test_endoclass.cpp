#include "doctest.h"

#include <random>

#include "exactgt/endoclass.hpp"

using namespace exactgt;

namespace {

// Random element of GL_d(Z): product of elementary and sign-diagonal
// matrices, at most `len` factors.
IMat random_unimodular(std::mt19937_64& rng, int d, int len) {
    std::uniform_int_distribution<int> idx(1, d), coin(0, 4);
    IMat m = imat_identity(d);
    for (int t = 0; t < len; ++t) {
        if (coin(rng) == 0) {
            IMat s = imat_identity(d);
            int flips = std::uniform_int_distribution<int>(1, d)(rng);
            for (int f = 0; f < flips; ++f) {
                int p = idx(rng) - 1;
                s.at(p, p) = -s.at(p, p);
            }
            m = m * s;
        } else {
            int i = idx(rng), j = idx(rng);
            if (i != j)
                m = m * elementary(d, i, j);
        }
    }
    return m;
}

IMat sign_normalized(IMat c) {
    for (int i = 0; i < c.rows(); ++i) {
        if (c.at(i, 0) == 0)
            continue;
        if (c.at(i, 0) < 0)
            c = -c;
        break;
    }
    return c;
}

std::vector<Rat> rat_vec(std::initializer_list<int> xs) {
    std::vector<Rat> v;
    for (int x : xs)
        v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("generator profiles") {
    IntCandidate id3 = identity_candidate(3);
    RankOneProfile p = profile_generators(id3);
    CHECK(p.all_rank_one_unipotent());
    Subspace h12 = *p.entries.at(GenSymbol{1, 2}).fixed_hyperplane;
    CHECK(h12 == Subspace(3, {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)}}));

    IntCandidate triv;
    triv.d = 3;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j)
                triv.images.emplace(GenSymbol{i, j}, imat_identity(3));
    RankOneProfile pt = profile_generators(triv);
    for (const auto& [sym, gp] : pt.entries) {
        CHECK(gp.unipotent);
        CHECK(gp.defect_rank == 0);
        CHECK_FALSE(gp.fixed_hyperplane.has_value());
    }

    SUBCASE("profile of a conjugated candidate transports the fixed spaces") {
        std::mt19937_64 rng(31337);
        IMat c = random_unimodular(rng, 3, 12);
        RankOneProfile pc = profile_generators(conjugated_candidate(3, c));
        CHECK(pc.all_rank_one_unipotent());
        QMat cq = to_rational(c);
        for (int k = 1; k <= 3; ++k)
            for (int i = 1; i <= 3; ++i) {
                if (i == k)
                    continue;
                // the fixed set of the image of E_ik is c * {x_k = 0}
                std::vector<std::vector<Rat>> moved;
                for (int b = 1; b <= 3; ++b) {
                    if (b == k)
                        continue;
                    std::vector<Rat> col(3, Rat(0));
                    for (int r = 0; r < 3; ++r)
                        col[r] = cq.at(r, b - 1);
                    moved.push_back(std::move(col));
                }
                CHECK(*pc.entries.at(GenSymbol{i, k}).fixed_hyperplane == Subspace(3, moved));
            }
    }

    SUBCASE("unverifiable candidate is a precondition error") {
        IntCandidate bad = identity_candidate(3);
        bad.images.at(GenSymbol{1, 2}) = elementary(3, 1, 3);
        CHECK_THROWS_AS(profile_generators(bad), DomainError);
    }
}

TEST_CASE("column hyperplanes and the transpose pattern") {
    RankOneProfile p = profile_generators(identity_candidate(3));
    auto hyps = column_hyperplanes(p);
    REQUIRE(hyps.has_value());
    CHECK((*hyps)[0] == Subspace(3, {{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}}));

    // without precomposition the inverse-transpose candidate coincides along
    // rows, not columns
    RankOneProfile pt = profile_generators(inverse_transpose_candidate(3));
    CHECK(pt.all_rank_one_unipotent());
    CHECK_FALSE(column_hyperplanes(pt).has_value());
}

TEST_CASE("line recovery") {
    std::vector<Subspace> std_hyps;
    for (int i = 0; i < 3; ++i) {
        std::vector<std::vector<Rat>> basis;
        for (int b = 0; b < 3; ++b) {
            if (b == i)
                continue;
            std::vector<Rat> e(3, Rat(0));
            e[b] = 1;
            basis.push_back(std::move(e));
        }
        std_hyps.emplace_back(3, basis);
    }
    auto lines = recover_lines(std_hyps);
    REQUIRE(lines.has_value());
    for (int i = 0; i < 3; ++i) {
        std::vector<Rat> e(3, Rat(0));
        e[i] = 1;
        CHECK((*lines)[i] == Subspace(3, {e}));
    }

    // all hyperplanes equal: degenerate
    std::vector<Subspace> same = {std_hyps[0], std_hyps[0], std_hyps[0]};
    CHECK_FALSE(recover_lines(same).has_value());
}

TEST_CASE("basis recovery for the identity candidate") {
    IntCandidate id3 = identity_candidate(3);
    auto hyps = column_hyperplanes(profile_generators(id3));
    auto lines = recover_lines(*hyps);
    auto basis = recover_basis(id3, *lines);
    REQUIRE(basis.has_value());
    CHECK((*basis)[2] == std::vector<Int>{Int(0), Int(0), Int(1)});
    CHECK((*basis)[1] == std::vector<Int>{Int(0), Int(1), Int(0)});
    CHECK((*basis)[0] == std::vector<Int>{Int(1), Int(0), Int(0)});
}

TEST_CASE("classifier on pinned candidates") {
    auto v = classify_endomorphism(identity_candidate(4));
    CHECK(v.kind == ClassifierVerdict::Kind::Automorphism);
    CHECK_FALSE(v.used_inverse_transpose);
    CHECK(*v.conjugator == imat_identity(4));

    auto vt = classify_endomorphism(inverse_transpose_candidate(3));
    CHECK(vt.kind == ClassifierVerdict::Kind::Automorphism);
    CHECK(vt.used_inverse_transpose);
    CHECK(*vt.conjugator == imat_identity(3));

    IntCandidate triv;
    triv.d = 3;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j)
                triv.images.emplace(GenSymbol{i, j}, imat_identity(3));
    CHECK(classify_endomorphism(triv).kind == ClassifierVerdict::Kind::Trivial);

    SUBCASE("too-small and too-large images are rejected with a reason") {
        IntCandidate small;
        small.d = 4;
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                if (i != j)
                    small.images.emplace(GenSymbol{i, j}, imat_identity(3));
        auto r = classify_endomorphism(small);
        CHECK(r.kind == ClassifierVerdict::Kind::Rejected);
        CHECK(r.reason.find("image size") != std::string::npos);
    }

    SUBCASE("relator failure is rejected") {
        IntCandidate bad = identity_candidate(3);
        bad.images.at(GenSymbol{1, 2}) = elementary(3, 1, 3);
        auto r = classify_endomorphism(bad);
        CHECK(r.kind == ClassifierVerdict::Kind::Rejected);
        CHECK(r.reason.find("relation verification") != std::string::npos);
    }

    SUBCASE("quadratic-domain candidates are a domain error") {
        CHECK_THROWS_AS(classify_endomorphism(HomCandidate(build_counterexample_rep())),
                        DomainError);
    }
}

TEST_CASE("classifier round-trip on random conjugations") {
    std::mt19937_64 rng(123457);
    for (int d : {3, 4, 5}) {
        for (int t = 0; t < 12; ++t) {
            IMat c = random_unimodular(rng, d, 30);
            IMat expect = sign_normalized(c);

            auto v = classify_endomorphism(conjugated_candidate(d, c));
            REQUIRE(v.kind == ClassifierVerdict::Kind::Automorphism);
            CHECK_FALSE(v.used_inverse_transpose);
            CHECK(*v.conjugator == expect);

            auto vt = classify_endomorphism(
                precompose_inverse_transpose(conjugated_candidate(d, c)));
            REQUIRE(vt.kind == ClassifierVerdict::Kind::Automorphism);
            CHECK(vt.used_inverse_transpose);
            CHECK(*vt.conjugator == expect);
        }
    }
}

TEST_CASE("rank-one unipotent commutator case table") {
    // u = id + v f^T with f(v) = 0; [u, u'] follows the subspace case split.
    auto comm = [](const QMat& a, const QMat& b) { return QMat(a * b * inverse(a) * inverse(b)); };

    std::vector<Rat> v = rat_vec({1, 0, 0}), f = rat_vec({0, 0, 1});
    std::vector<Rat> v2 = rat_vec({0, 1, 0}), f2 = rat_vec({1, 0, 0});
    QMat u = rank_one_unipotent(v, f);   // L = <e1>, H = e3-perp
    QMat u2 = rank_one_unipotent(v2, f2); // L' = <e2>, H' = e1-perp

    // L not in H', L' in H: commutator is u_{H, L'} up to the scalar in the class
    QMat k = comm(u, u2);
    CHECK(is_unipotent(k));
    QMat defect = k - qmat_identity(3);
    CHECK(rank(defect) == 1);
    CHECK(kernel(defect) == kernel(QMat(u - qmat_identity(3))));

    CHECK_THROWS_AS(rank_one_unipotent(rat_vec({1, 0, 0}), rat_vec({1, 0, 0})), DomainError);
}
