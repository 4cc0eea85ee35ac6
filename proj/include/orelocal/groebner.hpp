#pragma once

#include "orelocal/pbw.hpp"

namespace orelocal {

namespace detail {

inline PBWAlgebraPtr trivialAlgebra(const PolyRingPtr& ring, const MonomialOrder& order) {
    return PBWAlgebra::make(ring->varNames(), order, {});
}

inline std::vector<PBWVector> ringToVectors(const PBWAlgebraPtr& alg,
                                            const std::vector<Polynomial>& ps) {
    std::vector<PBWVector> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(PBWVector::single(PBWElement::fromPolynomial(alg, p)));
    return out;
}

inline std::vector<Polynomial> vectorsToRing(const PolyRingPtr& ring,
                                             const std::vector<PBWVector>& vs) {
    std::vector<Polynomial> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(v[0].toPolynomial(ring));
    return out;
}

}  // namespace detail

// Ideal of a commutative polynomial ring, with a per-instance cache of
// reduced Groebner bases keyed by order. Zero generators are dropped at
// construction; copies share generators and cache.
class Ideal {
  public:
    Ideal() : data_(std::make_shared<Data>()) {}

    Ideal(PolyRingPtr ring, std::vector<Polynomial> gens) : data_(std::make_shared<Data>()) {
        data_->ring = std::move(ring);
        for (auto& g : gens) {
            if (!g.ring()->sameAs(*data_->ring)) throw RingMismatchError("ideal generator ring");
            if (!g.isZero()) data_->gens.push_back(std::move(g));
        }
    }

    static Ideal zero(PolyRingPtr ring) { return Ideal(std::move(ring), {}); }

    static Ideal whole(PolyRingPtr ring) {
        Ideal i(ring, {Polynomial::one(ring)});
        return i;
    }

    const PolyRingPtr& ring() const { return data_->ring; }
    const std::vector<Polynomial>& generators() const { return data_->gens; }

    const std::vector<Polynomial>& groebnerBasis() const {
        return groebnerBasis(data_->ring->order());
    }

    const std::vector<Polynomial>& groebnerBasis(const MonomialOrder& order,
                                                 const GBLimits& limits = {}) const {
        std::lock_guard<std::mutex> lock(data_->mutex);
        auto it = data_->gbCache.find(order.name());
        if (it == data_->gbCache.end()) {
            auto ringWithOrder = PolyRing::make(data_->ring->varNames(), order);
            auto alg = detail::trivialAlgebra(ringWithOrder, order);
            ModuleOrder morder(order);
            auto gb = reduceBasis(
                leftBuchberger(detail::ringToVectors(alg, data_->gens), morder, limits), morder);
            auto polys = std::make_shared<std::vector<Polynomial>>(
                detail::vectorsToRing(data_->ring, gb));
            it = data_->gbCache.emplace(order.name(), std::move(polys)).first;
        }
        return *it->second;
    }

    bool isZeroIdeal() const { return groebnerBasis().empty(); }

    bool isWholeRing() const {
        const auto& gb = groebnerBasis();
        return gb.size() == 1 && gb[0].isConstant() && !gb[0].isZero();
    }

  private:
    struct Data {
        PolyRingPtr ring;
        std::vector<Polynomial> gens;
        mutable std::mutex mutex;
        mutable std::map<std::string, std::shared_ptr<const std::vector<Polynomial>>> gbCache;
    };
    std::shared_ptr<Data> data_;
};

// Total normal form against an arbitrary finite set G: no term of the result
// is divisible by any leading monomial of G.
inline Polynomial normalForm(const Polynomial& f, const std::vector<Polynomial>& G,
                             const MonomialOrder& order) {
    auto ringWithOrder = PolyRing::make(f.ring()->varNames(), order);
    auto alg = detail::trivialAlgebra(ringWithOrder, order);
    ModuleOrder morder(order);
    auto r = leftNFTotal(PBWVector::single(PBWElement::fromPolynomial(alg, f)),
                         detail::ringToVectors(alg, G), morder);
    return r[0].toPolynomial(f.ring());
}

inline Polynomial normalForm(const Polynomial& f, const Ideal& I) {
    return normalForm(f, I.groebnerBasis(), I.ring()->order());
}

inline bool idealContains(const Ideal& I, const Polynomial& f) {
    return normalForm(f, I).isZero();
}

inline bool idealContains(const Ideal& I, const Ideal& J) {
    for (const auto& g : J.generators())
        if (!idealContains(I, g)) return false;
    return true;
}

inline bool idealEqual(const Ideal& I, const Ideal& J) {
    if (!I.ring()->sameAs(*J.ring())) throw RingMismatchError("idealEqual: ring mismatch");
    const auto& a = I.groebnerBasis();
    const auto& b = J.groebnerBasis();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

inline Ideal idealSum(const Ideal& I, const Ideal& J) {
    std::vector<Polynomial> gens = I.generators();
    for (const auto& g : J.generators()) gens.push_back(g);
    return Ideal(I.ring(), std::move(gens));
}

inline Ideal idealProduct(const Ideal& I, const Ideal& J) {
    std::vector<Polynomial> gens;
    for (const auto& a : I.generators())
        for (const auto& b : J.generators()) gens.push_back(a * b);
    return Ideal(I.ring(), std::move(gens));
}

inline Ideal idealPower(const Ideal& I, unsigned n) {
    if (n == 0) return Ideal::whole(I.ring());
    Ideal r = I;
    for (unsigned k = 1; k < n; ++k) r = idealProduct(r, I);
    return r;
}

namespace detail {

// Fresh variable names not clashing with any name in the given lists.
inline std::vector<std::string> freshNames(std::size_t count, const std::string& stem,
                                           const std::vector<std::vector<std::string>>& taken) {
    std::vector<std::string> out;
    std::size_t suffix = 0;
    auto clashes = [&](const std::string& n) {
        for (const auto& list : taken)
            for (const auto& v : list)
                if (v == n) return true;
        for (const auto& v : out)
            if (v == n) return true;
        return false;
    };
    while (out.size() < count) {
        std::string cand = stem + (suffix == 0 && count == 1 ? "" : std::to_string(suffix));
        ++suffix;
        if (!clashes(cand)) out.push_back(cand);
    }
    return out;
}

}  // namespace detail

// Generators of I restricted to the kept variables, computed with a block
// elimination order. The result lives in a ring on the kept names only.
inline Ideal eliminate(const Ideal& I, const std::vector<std::string>& dropNames,
                       const GBLimits& limits = {}) {
    const PolyRingPtr R = I.ring();
    std::vector<bool> dropped(R->nvars(), false);
    for (const auto& n : dropNames) {
        auto i = R->varIndex(n);
        if (!i) throw RingMismatchError("eliminate: unknown variable " + n);
        dropped[*i] = true;
    }
    std::vector<std::string> order1, order2;
    for (std::size_t i = 0; i < R->nvars(); ++i)
        (dropped[i] ? order1 : order2).push_back(R->varName(i));

    std::vector<std::string> permuted = order1;
    permuted.insert(permuted.end(), order2.begin(), order2.end());
    MonomialOrder blockOrder = MonomialOrder::block(MonomialOrder::degrevlex(), order1.size(),
                                                    MonomialOrder::degrevlex());
    auto P = PolyRing::make(permuted, blockOrder);
    std::vector<Polynomial> mapped;
    for (const auto& g : I.generators()) mapped.push_back(g.mapTo(P));
    Ideal J(P, std::move(mapped));

    MonomialOrder keptOrder = R->order().kind() == MonomialOrder::Kind::Lex
                                  ? MonomialOrder::lex()
                                  : MonomialOrder::degrevlex();
    auto keptRing = PolyRing::make(order2, keptOrder);
    std::vector<Polynomial> kept;
    for (const auto& g : J.groebnerBasis(blockOrder, limits)) {
        bool inKept = true;
        for (const auto& t : g.terms())
            for (std::size_t i = 0; i < order1.size() && inKept; ++i)
                if (t.exp[i] > 0) inKept = false;
        if (inKept) kept.push_back(g.restrictTo(keptRing));
    }
    return Ideal(keptRing, std::move(kept));
}

// Intersection via the tag-variable construction: eliminate t from
// t*I + (1-t)*J.
inline Ideal idealIntersect(const Ideal& I, const Ideal& J, const GBLimits& limits = {}) {
    if (!I.ring()->sameAs(*J.ring())) throw RingMismatchError("intersect: ring mismatch");
    const PolyRingPtr R = I.ring();
    auto tname = detail::freshNames(1, "t", {R->varNames()})[0];
    std::vector<std::string> vars{tname};
    vars.insert(vars.end(), R->varNames().begin(), R->varNames().end());
    auto E = PolyRing::make(vars, MonomialOrder::block(MonomialOrder::degrevlex(), 1,
                                                       MonomialOrder::degrevlex()));
    Polynomial t = Polynomial::variable(E, 0);
    Polynomial oneMinusT = Polynomial::one(E) - t;
    std::vector<Polynomial> gens;
    for (const auto& f : I.generators()) gens.push_back(t * f.mapTo(E));
    for (const auto& g : J.generators()) gens.push_back(oneMinusT * g.mapTo(E));
    Ideal tagged(E, std::move(gens));
    Ideal elim = eliminate(tagged, {tname}, limits);
    std::vector<Polynomial> back;
    for (const auto& g : elim.generators()) back.push_back(g.mapTo(R));
    return Ideal(R, std::move(back));
}

// Ideal quotient I : f = (I cap <f>) / f.
inline Ideal idealQuotient(const Ideal& I, const Polynomial& f, const GBLimits& limits = {}) {
    if (f.isZero()) throw std::invalid_argument("quotient by zero");
    Ideal meet = idealIntersect(I, Ideal(I.ring(), {f}), limits);
    std::vector<Polynomial> gens;
    for (const auto& g : meet.groebnerBasis()) gens.push_back(g.divideExact(f));
    return Ideal(I.ring(), std::move(gens));
}

struct SaturationResult {
    Ideal saturation;
    unsigned index = 0;  // first n with I : f^n = I : f^infinity
};

// Iterated quotients until stabilization, detected by ideal equality.
inline SaturationResult saturate(const Ideal& I, const Polynomial& f, unsigned cap = 50,
                                 const GBLimits& limits = {}) {
    if (f.isZero()) throw std::invalid_argument("saturation by zero");
    Ideal cur = I;
    for (unsigned n = 0; n <= cap; ++n) {
        Ideal next = idealQuotient(cur, f, limits);
        if (idealEqual(next, cur)) return {cur, n};
        cur = next;
    }
    throw ResourceLimitError("saturation index exceeded cap " + std::to_string(cap));
}

// Ring map K[source]/I -> K[target]/J, source variable i |-> images[i].
struct RingMap {
    PolyRingPtr source;
    Ideal sourceModulus;  // may be the zero ideal
    PolyRingPtr target;
    Ideal targetModulus;  // may be the zero ideal
    std::vector<Polynomial> images;  // in the target base ring

    static RingMap make(PolyRingPtr source, Ideal sourceModulus, PolyRingPtr target,
                        Ideal targetModulus, std::vector<Polynomial> images) {
        if (images.size() != source->nvars())
            throw std::invalid_argument("ring map image count mismatch");
        for (const auto& f : images)
            if (!f.ring()->sameAs(*target)) throw RingMismatchError("ring map image ring");
        return RingMap{std::move(source), std::move(sourceModulus), std::move(target),
                       std::move(targetModulus), std::move(images)};
    }

    Polynomial apply(const Polynomial& p) const {
        Polynomial img = p.substitute(target, images);
        return normalForm(img, targetModulus);
    }
};

// Preimage of the ideal L + J under the map: eliminate the target variables
// from <sourceModulus, targetModulus, L, x_i - f_i> in the combined ring.
inline Ideal preimage(const RingMap& phi, const Ideal& L, const GBLimits& limits = {}) {
    for (const auto& v : phi.source->varNames())
        if (phi.target->varIndex(v))
            throw RingMismatchError("preimage: source/target share variable " + v);
    std::vector<std::string> vars = phi.target->varNames();
    vars.insert(vars.end(), phi.source->varNames().begin(), phi.source->varNames().end());
    auto C = PolyRing::make(vars, MonomialOrder::block(MonomialOrder::degrevlex(),
                                                       phi.target->nvars(),
                                                       MonomialOrder::degrevlex()));
    std::vector<Polynomial> gens;
    for (const auto& h : phi.sourceModulus.generators()) gens.push_back(h.mapTo(C));
    for (const auto& g : phi.targetModulus.generators()) gens.push_back(g.mapTo(C));
    for (const auto& l : L.generators()) gens.push_back(l.mapTo(C));
    for (std::size_t i = 0; i < phi.source->nvars(); ++i) {
        Polynomial x = Polynomial::variable(C, *C->varIndex(phi.source->varName(i)));
        gens.push_back(x - phi.images[i].mapTo(C));
    }
    Ideal H(C, std::move(gens));
    Ideal elim = eliminate(H, phi.target->varNames(), limits);
    std::vector<Polynomial> back;
    for (const auto& g : elim.generators()) back.push_back(g.mapTo(phi.source));
    return Ideal(phi.source, std::move(back));
}

inline Ideal kernelOfRingMap(const RingMap& phi, const GBLimits& limits = {}) {
    return preimage(phi, Ideal::zero(phi.target), limits);
}

// Module of syzygies of a polynomial tuple: generators of
// { (a_1..a_k) : sum a_i v_i = 0 }, as a submodule of R^k over the trivially
// commutative algebra on the same ring. The value slot sits at the highest
// position so the ascending POT order eliminates it.
inline LeftSubmodule syzygyModule(const std::vector<Polynomial>& v, const GBLimits& limits = {}) {
    if (v.empty()) throw std::invalid_argument("syzygies of an empty tuple");
    const PolyRingPtr R = v.front().ring();
    auto alg = detail::trivialAlgebra(R, R->order());
    const std::size_t k = v.size();
    std::vector<PBWVector> gens;
    for (std::size_t i = 0; i < k; ++i) {
        PBWVector w(alg, k + 1);
        w[i] = PBWElement::one(alg);
        w[k] = PBWElement::fromPolynomial(alg, v[i]);
        gens.push_back(std::move(w));
    }
    ModuleOrder morder(R->order());
    auto gb = reduceBasis(leftBuchberger(gens, morder, limits), morder);
    std::vector<PBWVector> syz;
    for (const auto& g : gb) {
        if (!g[k].isZero()) continue;
        PBWVector s(alg, k);
        for (std::size_t i = 0; i < k; ++i) s[i] = g[i];
        if (!s.isZero()) syz.push_back(std::move(s));
    }
    return LeftSubmodule(alg, k, std::move(syz));
}

// Radical membership by the Rabinowitsch trick: f in sqrt(I) iff
// <I, 1 - t f> is the whole extended ring.
inline bool radicalContains(const Ideal& I, const Polynomial& f, const GBLimits& limits = {}) {
    const PolyRingPtr R = I.ring();
    auto tname = detail::freshNames(1, "t", {R->varNames()})[0];
    std::vector<std::string> vars{tname};
    vars.insert(vars.end(), R->varNames().begin(), R->varNames().end());
    auto E = PolyRing::make(vars, MonomialOrder::block(MonomialOrder::degrevlex(), 1,
                                                       MonomialOrder::degrevlex()));
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(g.mapTo(E));
    gens.push_back(Polynomial::one(E) - Polynomial::variable(E, 0) * f.mapTo(E));
    Ideal J(E, std::move(gens));
    (void)limits;
    return J.isWholeRing();
}

// ---------------------------------------------------------------------------
// gcd, lcm and the square-free part, UFD-style but without factorization

// lcm as the generator of the (principal) intersection <f> cap <g>.
inline Polynomial polyLcm(const Polynomial& f, const Polynomial& g) {
    if (f.isZero() || g.isZero()) return Polynomial::zero(f.ring());
    Ideal meet = idealIntersect(Ideal(f.ring(), {f}), Ideal(f.ring(), {g}));
    const auto& gb = meet.groebnerBasis();
    if (gb.size() != 1)
        throw std::logic_error("intersection of principal ideals is not principal");
    return gb[0].primitive();
}

inline Polynomial polyGcd(const Polynomial& f, const Polynomial& g) {
    if (f.isZero()) return g.primitive();
    if (g.isZero()) return f.primitive();
    if (f.isConstant() || g.isConstant()) return Polynomial::one(f.ring());
    return (f * g).divideExact(polyLcm(f, g)).primitive();
}

// Square-free part: f divided by gcd(f, all first partials), iterated to
// stability, monic-normalized. No factorization involved.
inline Polynomial squarefreePart(const Polynomial& f) {
    if (f.isConstant()) throw std::invalid_argument("square-free part of a constant");
    Polynomial cur = f.primitive();
    while (true) {
        Polynomial d = cur;
        for (std::size_t i = 0; i < f.ring()->nvars(); ++i)
            d = polyGcd(d, cur.derivative(i));
        if (d.isConstant()) break;
        Polynomial next = cur.divideExact(d).primitive();
        if (next == cur) break;
        cur = next;
    }
    return cur.monic();
}

}  // namespace orelocal
