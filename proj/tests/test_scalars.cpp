#include "doctest.h"

#include <random>

#include "exactgt/scalars.hpp"

using namespace exactgt;

namespace {

// Independent oracle: the classical recurrence sum_{j=0}^{m} C(m+1,j) B_j = 0
// with B_0 = 1, solved for B_m. Deliberately a different algorithm from the
// library's Worpitzky sum.
Rat bernoulli_oracle(unsigned n) {
    std::vector<Rat> b;
    b.emplace_back(1);
    for (unsigned m = 1; m <= n; ++m) {
        Rat acc(0);
        for (unsigned j = 0; j < m; ++j)
            acc += Rat(binomial(m + 1, j)) * b[j];
        b.push_back(Rat(-acc / Rat(Int(m + 1))));
    }
    return b[n];
}

Rat random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 30);
    return make_rat(Int(num(rng)), Int(den(rng)));
}

} // namespace

TEST_CASE("bernoulli matches definition and oracle") {
    CHECK(bernoulli(0) == Rat(1));
    CHECK(bernoulli(4) == make_rat(Int(-1), Int(30)));
    CHECK(bernoulli(10) == make_rat(Int(5), Int(66)));
    CHECK(bernoulli(2) == make_rat(Int(1), Int(6)));
    for (unsigned n = 0; n <= 30; n += 2)
        CHECK(bernoulli(n) == bernoulli_oracle(n));
    // Odd indices >= 3 vanish in the recurrence; the API refuses them.
    for (unsigned n = 3; n <= 29; n += 2)
        CHECK(bernoulli_oracle(n) == Rat(0));
    CHECK_THROWS_AS(bernoulli(7), DomainError);
    CHECK_THROWS_AS(bernoulli(202), ResourceError);
    CHECK_NOTHROW(bernoulli(200));
}

TEST_CASE("rational field axioms on random values") {
    std::mt19937_64 rng(20240811);
    for (int t = 0; t < 200; ++t) {
        Rat r = random_rat(rng);
        Rat s = random_rat(rng);
        CHECK(Rat((r + s) - s) == r);
        if (s != 0)
            CHECK(Rat((r * s) / s) == r);
    }
}

TEST_CASE("rational canonical form and text round-trip") {
    Rat r = make_rat(Int(-6), Int(8));
    CHECK(numerator(r) == -3);
    CHECK(denominator(r) == 4);
    CHECK(to_string(r) == "-3/4");
    CHECK(parse_rational("-3/4") == r);
    CHECK(parse_rational("7") == Rat(7));
    CHECK(to_string(make_rat(Int(14), Int(2))) == "7");
    CHECK_THROWS_AS(make_rat(Int(1), Int(0)), DomainError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("quadratic arithmetic over explicit fields") {
    Int d7(-7);
    Quad root = Quad::sqrt_d(d7);
    CHECK(root * root == Quad::from_rational(d7, Rat(-7)));

    Quad x(d7, Rat(1), Rat(1));  // 1 + sqrt(-7)
    Quad y(d7, Rat(1), Rat(-1)); // 1 - sqrt(-7)
    CHECK(x * y == Quad::from_rational(d7, Rat(8)));

    Int d3(-3);
    Quad omega(d3, make_rat(Int(-1), Int(2)), make_rat(Int(1), Int(2)));
    Quad omega_bar(d3, make_rat(Int(-1), Int(2)), make_rat(Int(-1), Int(2)));
    CHECK(omega * omega == omega_bar);

    CHECK(Quad::from_rational(d7, Rat(2)).inverse() == Quad::from_rational(d7, make_rat(Int(1), Int(2))));
    CHECK(root.inverse() == Quad(d7, Rat(0), make_rat(Int(-1), Int(7))));
    CHECK(x.inverse() == Quad(d7, make_rat(Int(1), Int(8)), make_rat(Int(-1), Int(8))));

    CHECK_THROWS_AS(Quad::zero(d7).inverse(), DomainError);
    CHECK_THROWS_AS(x + Quad::one(d3), DomainError);
    CHECK_THROWS_AS(Quad(Int(0), Rat(1), Rat(1)), DomainError);
}

TEST_CASE("quadratic norm identity and inverses on random values") {
    std::mt19937_64 rng(7);
    Int d5(5);
    for (int t = 0; t < 100; ++t) {
        Quad q(d5, random_rat(rng), random_rat(rng));
        CHECK(q * q.conj() == Quad::from_rational(d5, q.norm()));
        if (!q.is_zero())
            CHECK(q * q.inverse() == Quad::one(d5));
    }
}

TEST_CASE("quadratic text round-trip") {
    Int d7(-7);
    Quad q(d7, make_rat(Int(-1), Int(4)), make_rat(Int(-1), Int(4)));
    CHECK(to_string(q) == "-1/4-1/4*sqrt(-7)");
    CHECK(parse_quad(to_string(q), d7) == q);
    CHECK(parse_quad("3", d7) == Quad::from_rational(d7, Rat(3)));
    CHECK(parse_quad("sqrt(-7)", d7) == Quad::sqrt_d(d7));
    CHECK(parse_quad("-sqrt(-7)", d7) == -Quad::sqrt_d(d7));
    CHECK(parse_quad("1/2+sqrt(-7)", d7) == Quad(d7, make_rat(Int(1), Int(2)), Rat(1)));
    CHECK(to_string(Quad(d7, Rat(0), Rat(2))) == "2*sqrt(-7)");
    CHECK(parse_quad("2*sqrt(-7)", d7) == Quad(d7, Rat(0), Rat(2)));
    CHECK_THROWS_AS(parse_quad("sqrt(-3)", d7), ParseError);

    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        Quad q2(d7, random_rat(rng), random_rat(rng));
        CHECK(parse_quad(to_string(q2), d7) == q2);
    }
}

TEST_CASE("field parameter validation") {
    CHECK_NOTHROW(validate_field_param(Int(-7)));
    CHECK_NOTHROW(validate_field_param(Int(-3)));
    CHECK_NOTHROW(validate_field_param(Int(5)));
    CHECK_THROWS_AS(validate_field_param(Int(12)), DomainError);
    CHECK_THROWS_AS(validate_field_param(Int(1)), DomainError);
    CHECK_THROWS_AS(validate_field_param(Int(0)), DomainError);
}
