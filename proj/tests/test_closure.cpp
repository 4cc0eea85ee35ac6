#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "orelocal/closure.hpp"
#include "orelocal/parser.hpp"

using namespace orelocal;

namespace {

PolyRingPtr ring(std::vector<std::string> vars) {
    return PolyRing::make(std::move(vars), MonomialOrder::degrevlex());
}

Polynomial pp(const PolyRingPtr& R, const std::string& s) { return parsePolynomial(R, s); }

Ideal ideal(const PolyRingPtr& R, std::initializer_list<std::string> gens) {
    std::vector<Polynomial> ps;
    for (const auto& g : gens) ps.push_back(pp(R, g));
    return Ideal(R, std::move(ps));
}

Ideal idealFrom(const PolyRingPtr& R, const std::vector<std::string>& gens) {
    std::vector<Polynomial> ps;
    for (const auto& g : gens) ps.push_back(pp(R, g));
    return Ideal(R, std::move(ps));
}

// Small catalog of primary ideals with known radicals in Q[x,y], used to
// assemble random decomposable fixtures.
struct CatalogEntry {
    std::vector<std::string> Q, P;
};

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> c = {
        {{"x"}, {"x"}},
        {{"x^2"}, {"x"}},
        {{"y"}, {"y"}},
        {{"y^3"}, {"y"}},
        {{"x+y"}, {"x+y"}},
        {{"(x+y)^2"}, {"x+y"}},
        {{"x-1"}, {"x-1"}},
        {{"x^2", "x*y", "y^2"}, {"x", "y"}},
        {{"x^2", "y"}, {"x", "y"}},
    };
    return c;
}

PrimaryDecomposition decompFrom(const QuotientRingPtr& R, const std::vector<std::size_t>& picks) {
    std::vector<PrimaryDecomposition::Component> comps;
    std::optional<Ideal> meet;
    for (std::size_t k : picks) {
        Ideal Q = idealFrom(R->base(), catalog()[k].Q);
        Ideal P = idealFrom(R->base(), catalog()[k].P);
        comps.push_back({Q, P});
        meet = meet ? idealIntersect(*meet, Q) : Q;
    }
    return PrimaryDecomposition(R, *meet, comps);
}

MultiplicativeSetSpec randomSet(std::mt19937_64& rng, const PolyRingPtr& R) {
    std::uniform_int_distribution<int> kind(0, 2);
    switch (kind(rng)) {
        case 0: {
            std::uniform_int_distribution<int> pick(0, 2);
            std::vector<Polynomial> gens;
            const char* cands[] = {"x", "y", "x+y+1"};
            gens.push_back(pp(R, cands[pick(rng)]));
            return MultiplicativeSetSpec::monoidal(std::move(gens));
        }
        case 1: {
            std::uniform_int_distribution<int> pick(0, 2);
            const char* primes[] = {"x", "y", "x+y"};
            return MultiplicativeSetSpec::geometric(Ideal(R, {pp(R, primes[pick(rng)])}));
        }
        default: {
            std::uniform_int_distribution<int> pick(0, 1);
            return MultiplicativeSetSpec::rational({static_cast<std::size_t>(pick(rng))});
        }
    }
}

}  // namespace

TEST_CASE("decomposition construction verifies the intersection") {
    auto R = ring({"x", "y"});
    auto Q = QuotientRing::trivial(R);
    CHECK_THROWS_AS(PrimaryDecomposition(Q, ideal(R, {"x*y"}),
                                         {{ideal(R, {"x"}), ideal(R, {"x"})}}),
                    DecompositionMismatchError);
    PrimaryDecomposition D(Q, ideal(R, {"x*y"}),
                           {{ideal(R, {"x"}), ideal(R, {"x"})},
                            {ideal(R, {"y"}), ideal(R, {"y"})}});
    CHECK(D.components().size() == 2);
}

TEST_CASE("closureDecomp worked examples") {
    auto R = ring({"x", "y"});
    auto Q = QuotientRing::trivial(R);
    SECTION("primary ideal not meeting S is already closed") {
        PrimaryDecomposition D(Q, ideal(R, {"x^2"}), {{ideal(R, {"x^2"}), ideal(R, {"x"})}});
        auto out = closureDecomp(D, MultiplicativeSetSpec::monoidal({pp(R, "y")}));
        CHECK(idealEqual(out.closure, ideal(R, {"x^2"})));
    }
    SECTION("<xy> localized at the y-monoid closes to <x>") {
        PrimaryDecomposition D(Q, ideal(R, {"x*y"}),
                               {{ideal(R, {"x"}), ideal(R, {"x"})},
                                {ideal(R, {"y"}), ideal(R, {"y"})}});
        auto out = closureDecomp(D, MultiplicativeSetSpec::monoidal({pp(R, "y")}));
        CHECK(idealEqual(out.closure, ideal(R, {"x"})));
        // oracle: y*x lies in <xy>, so x belongs to the closure; 1 does not
        CHECK(idealContains(ideal(R, {"x*y"}), pp(R, "y") * pp(R, "x")));
        CHECK_FALSE(out.closure.isWholeRing());
        // multiplier audit: multiplier * closure inside <xy>
        for (const auto& g : out.closure.generators())
            CHECK(idealContains(ideal(R, {"x*y"}), out.multiplier * g));
    }
    SECTION("ideal meeting its own monoid closes to the whole ring") {
        PrimaryDecomposition D(Q, ideal(R, {"x"}), {{ideal(R, {"x"}), ideal(R, {"x"})}});
        auto out = closureDecomp(D, MultiplicativeSetSpec::monoidal({pp(R, "x")}));
        CHECK(out.closure.isWholeRing());
        // witness soundness still holds: the multiplier lies in <x>
        CHECK(idealContains(ideal(R, {"x"}), out.multiplier));
    }
}

TEST_CASE("complementaryPart satisfies I = I^S cap J") {
    auto R = ring({"x", "y"});
    auto Q = QuotientRing::trivial(R);
    PrimaryDecomposition D(Q, ideal(R, {"x*y"}),
                           {{ideal(R, {"x"}), ideal(R, {"x"})},
                            {ideal(R, {"y"}), ideal(R, {"y"})}});
    auto S = MultiplicativeSetSpec::monoidal({pp(R, "y")});
    Ideal J = complementaryPart(D, S);
    CHECK(idealEqual(J, ideal(R, {"y"})));
    auto out = closureDecomp(D, S);
    CHECK(idealEqual(idealIntersect(out.closure, J), ideal(R, {"x*y"})));

    PrimaryDecomposition Dx(Q, ideal(R, {"x"}), {{ideal(R, {"x"}), ideal(R, {"x"})}});
    CHECK(complementaryPart(Dx, MultiplicativeSetSpec::monoidal({pp(R, "y")})).isWholeRing());
    CHECK(idealEqual(complementaryPart(Dx, MultiplicativeSetSpec::monoidal({pp(R, "x")})),
                     ideal(R, {"x"})));
}

TEST_CASE("closure laws on random decomposable fixtures") {
    auto R = ring({"x", "y"});
    auto Q = QuotientRing::trivial(R);
    std::mt19937_64 rng(321);
    std::uniform_int_distribution<std::size_t> pick(0, catalog().size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::size_t> picks{pick(rng), pick(rng)};
        if (picks[0] == picks[1]) picks.pop_back();
        PrimaryDecomposition D = decompFrom(Q, picks);
        MultiplicativeSetSpec S = randomSet(rng, R);
        auto out = closureDecomp(D, S);
        Ideal target = D.target();

        // containment
        CHECK(idealContains(out.closure, target));

        // idempotence: close the surviving components again
        std::vector<PrimaryDecomposition::Component> surv;
        for (std::size_t i = 0; i < D.components().size(); ++i)
            if (!out.componentMeetsS[i]) surv.push_back(D.components()[i]);
        if (!surv.empty()) {
            PrimaryDecomposition D2(Q, out.closure, surv);
            auto out2 = closureDecomp(D2, S);
            CHECK(idealEqual(out2.closure, out.closure));
        }

        // complementary identity
        Ideal J = complementaryPart(D, S);
        CHECK(idealEqual(idealIntersect(out.closure, J), target));

        // witness soundness
        for (const auto& g : out.closure.generators())
            CHECK(idealContains(target, out.multiplier * g));
    }
}

TEST_CASE("finite intersection law for closures") {
    auto R = ring({"x", "y"});
    auto Q = QuotientRing::trivial(R);
    std::mt19937_64 rng(654);
    std::uniform_int_distribution<std::size_t> pick(0, catalog().size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t a = pick(rng), b = pick(rng);
        PrimaryDecomposition D1 = decompFrom(Q, {a});
        PrimaryDecomposition D2 = decompFrom(Q, {b});
        MultiplicativeSetSpec S = randomSet(rng, R);
        auto c1 = closureDecomp(D1, S);
        auto c2 = closureDecomp(D2, S);

        std::vector<PrimaryDecomposition::Component> comps = D1.components();
        for (const auto& c : D2.components()) comps.push_back(c);
        Ideal meet = idealIntersect(D1.target(), D2.target());
        PrimaryDecomposition D12(Q, meet, comps);
        auto c12 = closureDecomp(D12, S);
        CHECK(idealEqual(c12.closure, idealIntersect(c1.closure, c2.closure)));
    }
}

TEST_CASE("symbolicPower worked examples") {
    SECTION("principal prime power") {
        auto R = ring({"x", "y"});
        auto Q = QuotientRing::trivial(R);
        PrimaryDecomposition D(Q, ideal(R, {"x^3"}), {{ideal(R, {"x^3"}), ideal(R, {"x"})}});
        Ideal P3 = symbolicPower(Q, ideal(R, {"x"}), 3, {ideal(R, {"x"})}, D);
        CHECK(idealEqual(P3, ideal(R, {"x^3"})));
    }
    SECTION("maximal ideal squared") {
        auto R = ring({"x", "y"});
        auto Q = QuotientRing::trivial(R);
        Ideal m = ideal(R, {"x", "y"});
        Ideal m2 = idealPower(m, 2);
        PrimaryDecomposition D(Q, m2, {{m2, m}});
        Ideal S2 = symbolicPower(Q, m, 2, {m}, D);
        CHECK(idealEqual(S2, m2));
    }
    SECTION("decomposition-mismatch is reported") {
        auto R = ring({"x", "y"});
        auto Q = QuotientRing::trivial(R);
        Ideal m = ideal(R, {"x", "y"});
        PrimaryDecomposition D(Q, ideal(R, {"x^2"}), {{ideal(R, {"x^2"}), ideal(R, {"x"})}});
        CHECK_THROWS_AS(symbolicPower(Q, m, 2, {m}, D), DecompositionMismatchError);
    }
    SECTION("the classical space-curve example") {
        auto R = ring({"x", "y", "z"});
        auto Q = QuotientRing::trivial(R);
        Ideal p = ideal(R, {"x^4-y*z", "y^2-x*z", "x^3*y-z^2"});
        Ideal p2 = idealPower(p, 2);
        Ideal symb = ideal(R, {"y^4-2*x*y^2*z+x^2*z^2",
                               "x^3*y^3-x^4*y*z-y^2*z^2+x*z^3",
                               "x^4*y^2-x^5*z-y^3*z+x*y*z^2",
                               "x^7+x^2*y^3-3*x^3*y*z+z^3"});
        Ideal emb = ideal(R, {"z", "y^4", "x^3*y^3", "x^4*y^2", "x^7*y", "x^8"});
        PrimaryDecomposition D(Q, p2, {{symb, p}, {emb, ideal(R, {"x", "y", "z"})}});
        Ideal result = symbolicPower(Q, p, 2, {p}, D);
        CHECK(idealEqual(result, symb));
        // strictness: the symbolic square is larger than the ordinary square
        CHECK_FALSE(idealEqual(result, p2));
        for (const auto& g : p2.generators()) CHECK(idealContains(result, g));
    }
}

TEST_CASE("splitByElement worked examples") {
    auto R = ring({"x", "y"});
    SECTION("<x^2 y> split along x") {
        auto res = splitByElement(ideal(R, {"x^2*y"}), pp(R, "x"));
        CHECK(res.index == 2);
        CHECK(idealEqual(res.withPower, ideal(R, {"x^2*y", "x^2"})));
        CHECK(idealEqual(res.quotient, ideal(R, {"y"})));
        CHECK(idealEqual(idealIntersect(res.withPower, res.quotient), ideal(R, {"x^2*y"})));
    }
    SECTION("nonzerodivisor: index 0 gives R cap I") {
        auto res = splitByElement(ideal(R, {"y"}), pp(R, "x"));
        CHECK(res.index == 0);
        CHECK(res.withPower.isWholeRing());
        CHECK(idealEqual(res.quotient, ideal(R, {"y"})));
    }
    SECTION("element already inside") {
        auto res = splitByElement(ideal(R, {"x"}), pp(R, "x"));
        CHECK(res.index == 1);
        CHECK(idealEqual(res.withPower, ideal(R, {"x"})));
        CHECK(res.quotient.isWholeRing());
        CHECK(idealEqual(idealIntersect(res.withPower, res.quotient), ideal(R, {"x"})));
    }
    SECTION("split identity on random ideals") {
        std::mt19937_64 rng(987);
        std::uniform_int_distribution<int> pick(0, 2);
        const char* qs[] = {"x", "y", "x+y"};
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Polynomial> gens;
            for (int g = 0; g < 2; ++g) {
                std::uniform_int_distribution<int> e(0, 2);
                Polynomial f = pp(R, qs[pick(rng)]).pow(static_cast<unsigned>(e(rng))) *
                               pp(R, qs[pick(rng)]);
                gens.push_back(f);
            }
            Ideal I(R, gens);
            Polynomial q = pp(R, qs[pick(rng)]);
            auto res = splitByElement(I, q);
            CHECK(idealEqual(idealIntersect(res.withPower, res.quotient), I));
        }
    }
}
