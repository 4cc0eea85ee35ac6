#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "orelocal/parser.hpp"
#include "orelocal/polynomial.hpp"

using namespace orelocal;

namespace {

PolyRingPtr ringXYZ() {
    return PolyRing::make({"x", "y", "z"}, MonomialOrder::degrevlex());
}

Polynomial randomPoly(std::mt19937_64& rng, const PolyRingPtr& R, int maxTerms, int maxDeg) {
    std::uniform_int_distribution<int> nt(0, maxTerms);
    std::uniform_int_distribution<int32_t> de(0, maxDeg);
    std::uniform_int_distribution<long> co(-9, 9);
    std::vector<Term> ts;
    int k = nt(rng);
    for (int t = 0; t < k; ++t) {
        std::vector<int32_t> v(R->nvars());
        for (auto& e : v) e = de(rng);
        ts.push_back({Exponent(std::move(v)), Rational(co(rng))});
    }
    return Polynomial::fromTerms(R, ts);
}

}  // namespace

TEST_CASE("parser handles the basic grammar") {
    auto R = ringXYZ();
    CHECK(parsePolynomial(R, "x^4 - y*z").termCount() == 2);
    CHECK(parsePolynomial(R, "0").isZero());
    CHECK(parsePolynomial(R, "x - x").isZero());

    auto Rs = PolyRing::make({"s"}, MonomialOrder::degrevlex());
    auto f = parsePolynomial(Rs, "25*s^2+25*s+6");
    CHECK(f.termCount() == 3);
    auto g = parsePolynomial(Rs, "(5*s+2)*(5*s+3)");
    CHECK(f == g);

    CHECK(parsePolynomial(R, "1/2*x + 1/2*x") == parsePolynomial(R, "x"));
    CHECK(parsePolynomial(R, "-x + 2*x") == parsePolynomial(R, "x"));
}

TEST_CASE("parser rejects bad input") {
    auto R = ringXYZ();
    CHECK_THROWS_AS(parsePolynomial(R, "w + 1"), ParseError);        // unknown variable
    CHECK_THROWS_AS(parsePolynomial(R, "x y"), ParseError);          // juxtaposition
    CHECK_THROWS_AS(parsePolynomial(R, "x / y"), ParseError);        // division
    CHECK_THROWS_AS(parsePolynomial(R, "x +"), ParseError);
    CHECK_THROWS_AS(parsePolynomial(R, "(x"), ParseError);
}

TEST_CASE("print-parse round trip is the identity") {
    auto R = ringXYZ();
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial p = randomPoly(rng, R, 6, 4);
        CHECK(parsePolynomial(R, p.toString()) == p);
    }
    CHECK(parsePolynomial(R, "x^4 - y*z").toString() == "x^4 - y*z");
}

TEST_CASE("arithmetic examples") {
    auto R = ringXYZ();
    auto x = parsePolynomial(R, "x");
    auto y = parsePolynomial(R, "y");
    CHECK((x + y) * (x - y) == parsePolynomial(R, "x^2 - y^2"));
    CHECK((x * Polynomial::zero(R)).isZero());

    auto Rs = PolyRing::make({"s"}, MonomialOrder::degrevlex());
    CHECK(parsePolynomial(Rs, "(5*s+2)") * parsePolynomial(Rs, "(5*s+3)") ==
          parsePolynomial(Rs, "25*s^2+25*s+6"));
}

TEST_CASE("ring axioms on random samples") {
    auto R = ringXYZ();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Polynomial a = randomPoly(rng, R, 4, 3);
        Polynomial b = randomPoly(rng, R, 4, 3);
        Polynomial c = randomPoly(rng, R, 4, 3);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("leading exponent of a product of monomials adds") {
    auto R = ringXYZ();
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Polynomial a = randomPoly(rng, R, 3, 3);
        Polynomial b = randomPoly(rng, R, 3, 3);
        if (a.isZero() || b.isZero()) continue;
        CHECK((a * b).leadingExp() == a.leadingExp().plus(b.leadingExp()));
    }
}

TEST_CASE("exact division and primitive normalization") {
    auto R = ringXYZ();
    auto f = parsePolynomial(R, "x^2 - y^2");
    auto g = parsePolynomial(R, "x - y");
    CHECK(f.divideExact(g) == parsePolynomial(R, "x + y"));
    CHECK_THROWS(parsePolynomial(R, "x^2 + y").divideExact(g));

    auto h = parsePolynomial(R, "4/6*x - 2/6*y");
    CHECK(h.primitive() == parsePolynomial(R, "2*x - y"));
    CHECK(h.monic() == parsePolynomial(R, "x - 1/2*y"));
}

TEST_CASE("derivatives") {
    auto R = ringXYZ();
    auto f = parsePolynomial(R, "x^3*y + z");
    CHECK(f.derivative(0) == parsePolynomial(R, "3*x^2*y"));
    CHECK(f.derivative(1) == parsePolynomial(R, "x^3"));
    CHECK(f.derivative(2) == parsePolynomial(R, "1"));
}

TEST_CASE("ring mismatch is reported") {
    auto R = ringXYZ();
    auto S = PolyRing::make({"x", "y"}, MonomialOrder::degrevlex());
    CHECK_THROWS_AS(parsePolynomial(R, "x") + parsePolynomial(S, "x"), RingMismatchError);
}
