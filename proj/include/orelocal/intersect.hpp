#pragma once

#include "orelocal/quotient.hpp"

namespace orelocal {

struct UnsupportedCombinationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Commutative multiplicative set over R = K[x]/J, one of three kinds:
//   monoidal   - generated by finitely many residue classes
//   geometric  - complement of a prime ideal (primality is caller-asserted)
//   rational   - nonzero elements of the subalgebra on a variable subset
struct MultiplicativeSetSpec {
    enum class Kind { Monoidal, Geometric, Rational };

    Kind kind = Kind::Monoidal;
    std::vector<Polynomial> monoidGens;      // base-ring representatives
    Ideal geometricPrime;                    // base-ring representatives
    std::vector<std::size_t> rationalVars;   // indices into the base ring

    static MultiplicativeSetSpec monoidal(std::vector<Polynomial> gens) {
        MultiplicativeSetSpec s;
        s.kind = Kind::Monoidal;
        s.monoidGens = std::move(gens);
        return s;
    }

    static MultiplicativeSetSpec geometric(Ideal prime) {
        MultiplicativeSetSpec s;
        s.kind = Kind::Geometric;
        s.geometricPrime = std::move(prime);
        return s;
    }

    static MultiplicativeSetSpec rational(std::vector<std::size_t> vars) {
        MultiplicativeSetSpec s;
        s.kind = Kind::Rational;
        s.rationalVars = std::move(vars);
        return s;
    }

    std::string describe(const PolyRingPtr& R) const {
        switch (kind) {
            case Kind::Monoidal: {
                std::string s = "monoid[";
                for (std::size_t i = 0; i < monoidGens.size(); ++i)
                    s += (i ? ", " : "") + monoidGens[i].toString();
                return s + "]";
            }
            case Kind::Geometric: {
                std::string s = "complement-of-prime[";
                for (std::size_t i = 0; i < geometricPrime.generators().size(); ++i)
                    s += (i ? ", " : "") + geometricPrime.generators()[i].toString();
                return s + "]";
            }
            case Kind::Rational: {
                std::string s = "subalgebra[";
                for (std::size_t i = 0; i < rationalVars.size(); ++i)
                    s += (i ? ", " : "") + R->varName(rationalVars[i]);
                return s + "]\\{0}";
            }
        }
        return "?";
    }
};

namespace detail {

// psi: K[t_1..t_m] -> K[x]/J, t_i |-> f_i + J, as a RingMap.
inline RingMap monoidMap(const QuotientRingPtr& R, const std::vector<Polynomial>& F,
                         PolyRingPtr* sourceOut) {
    auto tnames = detail::freshNames(F.size(), "t", {R->base()->varNames()});
    auto S = PolyRing::make(tnames, MonomialOrder::degrevlex());
    if (sourceOut) *sourceOut = S;
    return RingMap::make(S, Ideal::zero(S), R->base(), R->modulus(), F);
}

}  // namespace detail

// Decides whether the monoid generated by F contains 0 in R = K[x]/J:
// some product f^alpha lies in J iff 1 lies in ker(psi) : (t_1...t_m)^inf.
inline bool zeroInMonoid(const QuotientRingPtr& R, const std::vector<Polynomial>& F,
                         const GBLimits& limits = {}) {
    if (F.empty()) throw std::invalid_argument("zeroInMonoid: empty generating set");
    PolyRingPtr S;
    RingMap psi = detail::monoidMap(R, F, &S);
    Ideal H = kernelOfRingMap(psi, limits);
    Polynomial prod = Polynomial::one(S);
    for (std::size_t i = 0; i < S->nvars(); ++i) prod = prod * Polynomial::variable(S, i);
    Ideal M = saturate(H, prod, 50, limits).saturation;
    return M.isWholeRing();
}

// The biggest monomial ideal contained in L + J, via the Laurent-style
// substitution x_i -> q_i x_i realized as K[x, q, u]/<q_i u_i - 1> followed by
// elimination of all q and u.
inline Ideal biggestMonomialIdeal(const QuotientRingPtr& R, const Ideal& L,
                                  const GBLimits& limits = {}) {
    const PolyRingPtr B = R->base();
    const std::size_t n = B->nvars();
    Ideal Lfull = R->lift(L.generators());

    std::vector<std::vector<std::string>> taken{B->varNames()};
    auto qnames = detail::freshNames(n, "q", taken);
    taken.push_back(qnames);
    auto unames = detail::freshNames(n, "u", taken);

    std::vector<std::string> vars = qnames;
    vars.insert(vars.end(), unames.begin(), unames.end());
    vars.insert(vars.end(), B->varNames().begin(), B->varNames().end());
    auto E = PolyRing::make(vars, MonomialOrder::block(MonomialOrder::degrevlex(), 2 * n,
                                                       MonomialOrder::degrevlex()));
    std::vector<Polynomial> gens;
    // phi(g): substitute x_i -> q_i x_i
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i)
        images.push_back(Polynomial::variable(E, i) * Polynomial::variable(E, 2 * n + i));
    for (const auto& g : Lfull.generators()) gens.push_back(g.substitute(E, images));
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back(Polynomial::variable(E, i) * Polynomial::variable(E, n + i) -
                       Polynomial::one(E));
    Ideal tagged(E, std::move(gens));
    std::vector<std::string> dropNames = qnames;
    dropNames.insert(dropNames.end(), unames.begin(), unames.end());
    Ideal N = eliminate(tagged, dropNames, limits);
    std::vector<Polynomial> back;
    for (const auto& g : N.generators()) {
        Polynomial m = g.mapTo(B).monic();
        if (m.termCount() != 1)
            throw std::logic_error("contraction produced a non-monomial generator");
        back.push_back(std::move(m));
    }
    // generators are the minimal monomials; the ideal is taken modulo J
    return Ideal(B, std::move(back));
}

// Result of an intersection query: empty, or a witness element of I cap S.
struct IntersectionWitness {
    bool empty = true;
    Polynomial witness;                 // nonzero representative when nonempty
    std::vector<Polynomial> monomials;  // monoidal case: t^alpha generators in K[t]
};

// Intersection of an ideal with a finitely generated monoid in a commutative
// quotient ring. Returns the monomial generators of the biggest monomial
// ideal of psi^{-1}(I) and the corresponding witnesses f^alpha.
inline IntersectionWitness intersectMonoid(const QuotientRingPtr& R, const Ideal& I,
                                           const std::vector<Polynomial>& F,
                                           const GBLimits& limits = {}) {
    if (F.empty()) throw std::invalid_argument("intersectMonoid: empty generating set");
    PolyRingPtr S;
    RingMap psi = detail::monoidMap(R, F, &S);
    Ideal Ifull = R->lift(I.generators());
    Ideal L = preimage(psi, Ifull, limits);
    Ideal ker = kernelOfRingMap(psi, limits);
    // if psi(L) = 0, i.e. L subset ker(psi), the intersection is empty
    if (idealContains(ker, L)) return {};

    auto Rt = QuotientRing::make(S, ker);
    Ideal M = biggestMonomialIdeal(Rt, L, limits);
    if (M.isZeroIdeal()) return {};

    IntersectionWitness w;
    w.empty = false;
    w.monomials = M.generators();  // minimal monomials t^alpha
    if (!w.monomials.empty()) w.witness = psi.apply(w.monomials.front());
    return w;
}

// Geometric intersection: returns a generator of I outside p (then it lies in
// I cap S for S = R \ p), or reports empty when I is contained in p.
inline IntersectionWitness intersectGeometric(const QuotientRingPtr& R, const Ideal& I,
                                              const Ideal& p) {
    Ideal q = R->lift(p.generators());
    for (const auto& h : I.generators()) {
        if (!normalForm(h, q).isZero()) {
            IntersectionWitness w;
            w.empty = false;
            w.witness = R->project(h);
            return w;
        }
    }
    return {};
}

// Rational intersection with the essential subalgebra on the given variables:
// a nonzero image of a preimage generator, or empty.
inline IntersectionWitness intersectRational(const QuotientRingPtr& R, const Ideal& I,
                                             const std::vector<std::size_t>& subVars,
                                             const GBLimits& limits = {}) {
    const PolyRingPtr B = R->base();
    std::vector<Polynomial> images;
    auto tnames = detail::freshNames(subVars.size(), "t", {B->varNames()});
    auto S = PolyRing::make(tnames, MonomialOrder::degrevlex());
    for (std::size_t k : subVars) images.push_back(Polynomial::variable(B, k));
    RingMap phi = RingMap::make(S, Ideal::zero(S), B, R->modulus(), images);
    Ideal pre = preimage(phi, R->lift(I.generators()), limits);
    for (const auto& wgen : pre.generators()) {
        Polynomial img = phi.apply(wgen);
        if (!img.isZero()) {
            IntersectionWitness w;
            w.empty = false;
            w.witness = img;
            return w;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Monoid intersection in a PBW algebra

// Preimage of a left ideal under psi: K[t_1..t_m] -> A, t_a |-> f_a, for
// pairwise commuting f_a. The t-variables are adjoined with the commutation
// behavior of their images ([t_a, x_k] = [f_a, x_k]), the graph ideal
// <I, t_a - f_a> is formed, and the A-variables are eliminated under a
// weight-searched admissible ordering.
struct NCPreimage {
    PolyRingPtr tRing;
    Ideal preimage;  // psi^{-1}(I) in K[t]
    Ideal kernel;    // psi^{-1}(0) in K[t]
};

inline NCPreimage ncPreimage(const LeftSubmodule& I, const std::vector<PBWElement>& F,
                             int64_t weightBound = 4, const GBLimits& limits = {}) {
    if (I.rank() != 1) throw DimensionError("ncPreimage needs a left ideal");
    const PBWAlgebraPtr A = I.algebra();
    const std::size_t n = A->nvars();
    const std::size_t m = F.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (!(F[a] * F[b] == F[b] * F[a]))
                throw std::invalid_argument("monoid generators do not commute pairwise");

    // commutator tails for the adjoined variables
    std::vector<std::vector<std::vector<Term>>> tails(m, std::vector<std::vector<Term>>(n));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t k = 0; k < n; ++k) {
            PBWElement xk = PBWElement::variable(A, k);
            tails[a][k] = (F[a] * xk - xk * F[a]).terms();
        }

    // candidate elimination orders: weight >= 1 on the A-variables, 0 on t's
    auto admissible = [&](const MonomialOrder& cand) {
        auto widen = [&](const Exponent& e) {
            std::vector<int32_t> v(e.span().begin(), e.span().end());
            v.resize(n + m, 0);
            return Exponent(std::move(v));
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Exponent prod = Exponent::unit(n + m, i).plus(Exponent::unit(n + m, j));
                for (const auto& t : A->relD(i, j))
                    if (cand.compare(widen(t.exp), prod) >= 0) return false;
            }
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t k = 0; k < n; ++k) {
                Exponent prod = Exponent::unit(n + m, k).plus(Exponent::unit(n + m, n + a));
                for (const auto& t : tails[a][k])
                    if (cand.compare(widen(t.exp), prod) >= 0) return false;
            }
        return true;
    };

    std::optional<MonomialOrder> elim;
    std::vector<int64_t> w(n + m, 0);
    for (std::size_t i = 0; i < n; ++i) w[i] = 1;
    MonomialOrder first = MonomialOrder::weighted(w, MonomialOrder::degrevlex());
    if (admissible(first)) {
        elim = first;
    } else {
        std::vector<int64_t> ws(n, 1);
        while (!elim) {
            std::size_t pos = 0;
            while (pos < ws.size() && ws[pos] == weightBound) ws[pos++] = 1;
            if (pos == ws.size()) break;
            ++ws[pos];
            for (std::size_t i = 0; i < n; ++i) w[i] = ws[i];
            MonomialOrder cand = MonomialOrder::weighted(w, MonomialOrder::degrevlex());
            if (admissible(cand)) elim = cand;
        }
    }
    if (!elim)
        throw NoPreimageOrderingError(
            "no admissible elimination ordering for the preimage within weight bound " +
            std::to_string(weightBound));

    std::vector<std::string> tnames =
        detail::freshNames(m, "t", {A->varNames()});
    PBWAlgebraPtr Ext = PBWAlgebra::extend(*A, tnames, tails, *elim);

    auto embed = [&](const PBWElement& e) {
        std::vector<Term> ts;
        for (const auto& t : e.terms()) {
            std::vector<int32_t> v(t.exp.span().begin(), t.exp.span().end());
            v.resize(n + m, 0);
            ts.push_back({Exponent(std::move(v)), t.coeff});
        }
        return PBWElement::fromTerms(Ext, ts);
    };

    auto tRing = PolyRing::make(tnames, MonomialOrder::degrevlex());
    ModuleOrder morder = algebraModuleOrder(Ext);
    auto extract = [&](const std::vector<PBWVector>& gens) {
        auto gb = reduceBasis(leftBuchberger(gens, morder, limits), morder);
        std::vector<Polynomial> out;
        for (const auto& g : gb) {
            bool inT = true;
            for (const auto& t : g[0].terms())
                for (std::size_t i = 0; i < n && inT; ++i)
                    if (t.exp[i] > 0) inT = false;
            if (inT) out.push_back(g[0].toPolynomial(tRing));
        }
        return Ideal(tRing, std::move(out));
    };

    std::vector<PBWVector> graphGens;
    for (std::size_t a = 0; a < m; ++a)
        graphGens.push_back(
            PBWVector::single(PBWElement::variable(Ext, n + a) - embed(F[a])));
    Ideal kernel = extract(graphGens);
    for (const auto& g : I.generators()) graphGens.push_back(PBWVector::single(embed(g[0])));
    Ideal pre = extract(graphGens);
    return {tRing, pre, kernel};
}

// Intersection of a left ideal with the monoid generated by pairwise
// commuting elements of a PBW algebra. Witness monomials t^alpha map to
// elements f^alpha of I cap S.
inline IntersectionWitness intersectMonoidPBW(const LeftSubmodule& I,
                                              const std::vector<PBWElement>& F,
                                              int64_t weightBound = 4,
                                              const GBLimits& limits = {}) {
    NCPreimage pre = ncPreimage(I, F, weightBound, limits);
    if (idealContains(pre.kernel, pre.preimage)) return {};
    auto Rt = QuotientRing::make(pre.tRing, pre.kernel);
    Ideal M = biggestMonomialIdeal(Rt, pre.preimage, limits);
    if (M.isZeroIdeal()) return {};
    IntersectionWitness w;
    w.empty = false;
    w.monomials = M.generators();
    return w;
}

// Image f^alpha of a witness monomial t^alpha under psi (the generators
// commute pairwise, so the order of the factors does not matter).
inline PBWElement monoidWitnessElement(const std::vector<PBWElement>& F,
                                       const Polynomial& mono) {
    if (mono.termCount() != 1) throw std::invalid_argument("witness is not a monomial");
    PBWElement acc = PBWElement::one(F.front().algebra());
    const Exponent& e = mono.leadingExp();
    for (std::size_t a = 0; a < F.size(); ++a)
        if (e[a] > 0) acc = acc * F[a].pow(static_cast<unsigned>(e[a]));
    return acc;
}

// Does a primary ideal Q meet the multiplicative set? Decided through the
// radical P: Q cap S is empty iff P cap S is empty. When P is not supplied it
// is replaced by radical membership tests (monoidal case only).
inline bool primaryMeetsSet(const QuotientRingPtr& R, const Ideal& Q,
                            const std::optional<Ideal>& P, const MultiplicativeSetSpec& S,
                            const GBLimits& limits = {}) {
    switch (S.kind) {
        case MultiplicativeSetSpec::Kind::Monoidal: {
            if (P) {
                Ideal Pfull = R->lift(P->generators());
                for (const auto& s : S.monoidGens)
                    if (normalForm(s, Pfull).isZero()) return true;
                return false;
            }
            Ideal Qfull = R->lift(Q.generators());
            for (const auto& s : S.monoidGens)
                if (radicalContains(Qfull, s, limits)) return true;
            return false;
        }
        case MultiplicativeSetSpec::Kind::Geometric: {
            if (!P) throw UnsupportedCombinationError("geometric test needs the radical");
            Ideal pfull = R->lift(S.geometricPrime.generators());
            for (const auto& g : P->generators())
                if (!normalForm(g, pfull).isZero()) return true;  // P not inside p
            return false;
        }
        case MultiplicativeSetSpec::Kind::Rational: {
            if (!P) throw UnsupportedCombinationError("rational test needs the radical");
            // P cap T = 0 iff eliminating the non-subalgebra variables from P
            // (plus modulus) leaves nothing
            const PolyRingPtr B = R->base();
            std::vector<bool> keep(B->nvars(), false);
            for (std::size_t k : S.rationalVars) keep[k] = true;
            std::vector<std::string> drop;
            for (std::size_t i = 0; i < B->nvars(); ++i)
                if (!keep[i]) drop.push_back(B->varName(i));
            Ideal E = eliminate(R->lift(P->generators()), drop, limits);
            return !E.isZeroIdeal();
        }
    }
    return false;
}

// Witness element of Q cap S (assumes the intersection is nonempty); found
// with the direct intersection algorithms rather than the radical shortcut.
inline Polynomial witnessInSet(const QuotientRingPtr& R, const Ideal& Q,
                               const MultiplicativeSetSpec& S, const GBLimits& limits = {}) {
    IntersectionWitness w;
    switch (S.kind) {
        case MultiplicativeSetSpec::Kind::Monoidal:
            w = intersectMonoid(R, Q, S.monoidGens, limits);
            break;
        case MultiplicativeSetSpec::Kind::Geometric:
            w = intersectGeometric(R, Q, S.geometricPrime);
            break;
        case MultiplicativeSetSpec::Kind::Rational:
            w = intersectRational(R, Q, S.rationalVars, limits);
            break;
    }
    if (w.empty) throw std::logic_error("witnessInSet called on an empty intersection");
    return w.witness;
}

}  // namespace orelocal
