#pragma once

#include "orelocal/closure.hpp"

namespace orelocal {

struct NonCentralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotMultipleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Central element with verified certification: it commutes with every
// algebra generator.
class CentralElement {
  public:
    static CentralElement certify(const PBWElement& value) {
        const PBWAlgebraPtr A = value.algebra();
        for (std::size_t i = 0; i < A->nvars(); ++i) {
            PBWElement xi = PBWElement::variable(A, i);
            if (!(value * xi == xi * value))
                throw NonCentralError("element does not commute with " + A->varName(i));
        }
        CentralElement c;
        c.value_ = value;
        return c;
    }

    const PBWElement& value() const { return value_; }

  private:
    PBWElement value_;
};

// Exact right division w = f / q (f = w * q) in a G-algebra; q need not be a
// monomial but the quotient must be exact. Leading exponents are additive in
// a domain, which drives the loop.
inline PBWElement divideExactRight(const PBWElement& f, const PBWElement& q) {
    if (q.isZero()) throw std::invalid_argument("division by zero element");
    const PBWAlgebraPtr A = f.algebra();
    PBWElement rem = f;
    PBWElement quot = PBWElement::zero(A);
    while (!rem.isZero()) {
        if (!q.leadingExp().divides(rem.leadingExp()))
            throw std::domain_error("divideExactRight: not divisible");
        Exponent m = rem.leadingExp().minus(q.leadingExp());
        PBWElement u = PBWElement::monomial(A, m, 1) * q;
        Rational c = rem.leadingCoeff() / u.leadingCoeff();
        quot = quot + PBWElement::monomial(A, m, c);
        rem = rem - c * u;
    }
    return quot;
}

// Central quotient I : q = { f : q f in I }, computed as the intersection
// I cap A^r q followed by exact division of the generators by q.
inline LeftSubmodule centralQuotient(const LeftSubmodule& I, const CentralElement& q,
                                     const GBLimits& limits = {}) {
    if (q.value().isZero()) throw std::invalid_argument("central quotient by zero");
    const PBWAlgebraPtr A = I.algebra();
    const std::size_t r = I.rank();
    std::vector<PBWVector> qgens;
    for (std::size_t i = 0; i < r; ++i)
        qgens.push_back(PBWVector::unit(A, r, i, q.value()));
    LeftSubmodule Aq(A, r, std::move(qgens));
    LeftSubmodule meet = moduleIntersect(I, Aq, limits);
    std::vector<PBWVector> out;
    for (const auto& g : meet.generators()) {
        PBWVector v(A, r);
        for (std::size_t i = 0; i < r; ++i)
            if (!g[i].isZero()) v[i] = divideExactRight(g[i], q.value());
        out.push_back(std::move(v));
    }
    return LeftSubmodule(A, r, std::move(out));
}

struct SatIndexResult {
    unsigned index = 0;
    LeftSubmodule saturation;
};

// First n with I : q^n = I : q^infinity, found by iterating quotients until
// the module stabilizes.
inline SatIndexResult satIndex(const LeftSubmodule& I, const CentralElement& q,
                               unsigned cap = 50, const GBLimits& limits = {}) {
    LeftSubmodule cur = I;
    for (unsigned n = 0; n <= cap; ++n) {
        LeftSubmodule next = centralQuotient(cur, q, limits);
        if (moduleEquals(next, cur)) return {n, cur};
        cur = next;
    }
    throw ResourceLimitError("central saturation index exceeded cap " + std::to_string(cap));
}

// Closure data: the saturated module, the index, the saturating central
// candidate, and a per-generator multiplier (minimal power of the candidate
// that pushes the generator back into the input).
struct CentralClosureResult {
    LeftSubmodule closure;
    unsigned saturationIndex = 0;
    PBWElement candidate;
    std::vector<PBWElement> witnessMultipliers;
};

namespace detail {

inline std::vector<PBWElement> witnessPowers(const LeftSubmodule& input,
                                             const LeftSubmodule& closure,
                                             const PBWElement& candidate, unsigned maxPower) {
    ModuleOrder morder = algebraModuleOrder(input.algebra());
    const auto& gb = input.reducedGB(morder);
    std::vector<PBWElement> out;
    for (const auto& g : closure.reducedGB(morder)) {
        PBWElement mult = PBWElement::one(input.algebra());
        unsigned j = 0;
        while (j <= maxPower) {
            if (leftNFTotal(mult * g, gb, morder).isZero()) break;
            mult = mult * candidate;
            ++j;
        }
        out.push_back(mult);
    }
    return out;
}

}  // namespace detail

// Monoidal central closure: for S generated by pairwise commuting f_1..f_k
// and a central z that is a (left) multiple of f_1 * ... * f_k, the closure
// I^S equals the central saturation I : z^infinity.
inline CentralClosureResult monoidalCentralClosure(const LeftSubmodule& I,
                                                   const std::vector<PBWElement>& F,
                                                   const PBWElement& z, unsigned cap = 50,
                                                   const GBLimits& limits = {}) {
    if (F.empty()) throw std::invalid_argument("empty monoid generating set");
    for (std::size_t a = 0; a < F.size(); ++a)
        for (std::size_t b = a + 1; b < F.size(); ++b)
            if (!(F[a] * F[b] == F[b] * F[a]))
                throw std::invalid_argument("monoid generators do not commute pairwise");
    CentralElement zc = CentralElement::certify(z);
    PBWElement prod = PBWElement::one(I.algebra());
    for (const auto& f : F) prod = prod * f;
    try {
        (void)divideExactRight(z, prod);
    } catch (const std::domain_error&) {
        throw NotMultipleError("z is not a multiple of the product of the generators");
    }
    auto [index, sat] = satIndex(I, zc, cap, limits);
    CentralClosureResult res;
    res.closure = sat;
    res.saturationIndex = index;
    res.candidate = z;
    res.witnessMultipliers = detail::witnessPowers(I, sat, z, index);
    return res;
}

// ---------------------------------------------------------------------------
// Central essential rational closure

// The declared central block: the first split() variables of an antiblock
// order. Verified central.
inline std::size_t centralBlockSize(const PBWAlgebraPtr& A) {
    if (A->order().kind() != MonomialOrder::Kind::Antiblock)
        throw NonCentralError("algebra order is not an antiblock order");
    std::size_t k = A->order().split();
    if (k == 0 || k > A->centralPrefixSize())
        throw NonCentralError("the first ordering block is not a central variable block");
    return k;
}

inline PolyRingPtr centralBlockRing(const PBWAlgebraPtr& A) {
    std::size_t k = centralBlockSize(A);
    std::vector<std::string> names(A->varNames().begin(), A->varNames().begin() + k);
    return PolyRing::make(names, MonomialOrder::degrevlex());
}

// Leading coefficient of a vector with respect to the second-block order:
// the K[x-block] polynomial attached to the POT-largest (position, y-exponent).
inline Polynomial leadingCoeffSecondBlock(const PBWVector& g, const PolyRingPtr& blockRing) {
    const PBWAlgebraPtr A = g.algebra();
    const std::size_t k = centralBlockSize(A);
    const std::size_t n = A->nvars();
    const MonomialOrder& second = A->order().second();

    auto ySpan = [&](const Exponent& e) { return e.span().subspan(k); };
    bool found = false;
    std::size_t bestPos = 0;
    const Term* bestTerm = nullptr;
    for (std::size_t pos = g.rank(); pos-- > 0;) {
        if (g[pos].isZero()) continue;
        for (const auto& t : g[pos].terms()) {
            if (!found || second.compareSpan(ySpan(t.exp), ySpan(bestTerm->exp)) > 0) {
                found = true;
                bestPos = pos;
                bestTerm = &t;
            }
        }
        break;  // ascending POT: the highest nonzero position dominates
    }
    if (!found) throw std::domain_error("leading data of zero vector");

    std::vector<Term> coeffTerms;
    for (const auto& t : g[bestPos].terms()) {
        bool sameY = true;
        for (std::size_t i = k; i < n && sameY; ++i)
            if (t.exp[i] != bestTerm->exp[i]) sameY = false;
        if (!sameY) continue;
        std::vector<int32_t> v(t.exp.span().begin(), t.exp.span().begin() + k);
        coeffTerms.push_back({Exponent(std::move(v)), t.coeff});
    }
    return Polynomial::fromTerms(blockRing, coeffTerms);
}

// The saturation candidate of a basis: square-free part of the product of
// all second-block leading coefficients (1 when the product is constant).
inline Polynomial saturationCandidate(const std::vector<PBWVector>& basis,
                                      const PolyRingPtr& blockRing) {
    Polynomial prod = Polynomial::one(blockRing);
    for (const auto& g : basis) prod = prod * leadingCoeffSecondBlock(g, blockRing);
    if (prod.isConstant()) return Polynomial::one(blockRing);
    return squarefreePart(prod);
}

// Closure of I with respect to S = K[x-block] \ {0}: compute a left GB, read
// off the square-free candidate h from the second-block leading coefficients,
// saturate at h, and return a left GB of the result.
inline CentralClosureResult centralEssentialRationalClosure(const LeftSubmodule& I,
                                                            unsigned cap = 50,
                                                            const GBLimits& limits = {}) {
    const PBWAlgebraPtr A = I.algebra();
    PolyRingPtr blockRing = centralBlockRing(A);
    ModuleOrder morder = algebraModuleOrder(A);
    const auto& H = I.reducedGB(morder);

    CentralClosureResult res;
    if (H.empty()) {
        res.closure = I;
        res.candidate = PBWElement::one(A);
        return res;
    }
    Polynomial h = saturationCandidate(H, blockRing);
    PBWElement hE = PBWElement::fromPolynomial(A, h);
    res.candidate = hE;
    if (hE.isConstant()) {
        res.closure = I;
        res.saturationIndex = 0;
        res.witnessMultipliers.assign(H.size(), PBWElement::one(A));
        return res;
    }
    CentralElement hc = CentralElement::certify(hE);
    auto [index, sat] = satIndex(I, hc, cap, limits);
    res.closure = sat;
    res.saturationIndex = index;
    res.witnessMultipliers = detail::witnessPowers(I, sat, hE, index);
    return res;
}

// ---------------------------------------------------------------------------
// Central geometric equality test

// Annihilator of (I^S / I) inside the central block B: the intersection over
// the closure generators g of { b in B : b g in I }.
inline Ideal centralBlockAnnihilator(const LeftSubmodule& I, const LeftSubmodule& closure,
                                     const GBLimits& limits = {}) {
    const PBWAlgebraPtr A = I.algebra();
    const std::size_t k = centralBlockSize(A);
    const std::size_t r = I.rank();
    PolyRingPtr blockRing = centralBlockRing(A);
    ModuleOrder morder = algebraModuleOrder(A);

    std::vector<std::size_t> keepVars(k);
    for (std::size_t i = 0; i < k; ++i) keepVars[i] = i;

    std::optional<Ideal> acc;
    for (const auto& g : closure.reducedGB(morder)) {
        // transporter { a in A : a g in I } via a tagged module: the tag sits
        // at position 0, the data block at higher (dominant) positions
        std::vector<PBWVector> gens;
        PBWVector tagged(A, r + 1);
        tagged[0] = PBWElement::one(A);
        for (std::size_t i = 0; i < r; ++i) tagged[1 + i] = g[i];
        gens.push_back(std::move(tagged));
        for (const auto& m : I.generators()) {
            PBWVector v(A, r + 1);
            for (std::size_t i = 0; i < r; ++i) v[1 + i] = m[i];
            gens.push_back(std::move(v));
        }
        auto gb = reduceBasis(leftBuchberger(gens, morder, limits), morder);
        std::vector<PBWVector> transporter;
        for (const auto& u : gb) {
            bool dataZero = true;
            for (std::size_t i = 0; i < r && dataZero; ++i)
                if (!u[1 + i].isZero()) dataZero = false;
            if (dataZero && !u[0].isZero()) transporter.push_back(PBWVector::single(u[0]));
        }
        LeftSubmodule T(A, 1, std::move(transporter));
        Ideal TB(blockRing, subalgebraIntersect(T, keepVars, blockRing, 4, limits));
        acc = acc ? idealIntersect(*acc, TB, limits) : TB;
    }
    return acc ? *acc : Ideal::whole(blockRing);
}

// I^T = I^S for T = K[x-block] \ p exactly when the block annihilator of
// I^S / I is not contained in p.
inline bool centralGeometricEqualityTest(const LeftSubmodule& I, const Ideal& p,
                                         unsigned cap = 50, const GBLimits& limits = {}) {
    auto closure = centralEssentialRationalClosure(I, cap, limits);
    Ideal ann = centralBlockAnnihilator(I, closure.closure, limits);
    for (const auto& g : ann.generators())
        if (!normalForm(g.mapTo(p.ring()), p).isZero()) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Iterated closures and the split identity

// Central multiplicative set specification for composition: a monoidal set
// with a certified central multiple, or the essential rational set of the
// central block.
struct CentralSetSpec {
    enum class Kind { MonoidalCentral, EssentialRational };
    Kind kind = Kind::EssentialRational;
    std::vector<PBWElement> monoidGens;
    PBWElement z;

    static CentralSetSpec monoidalCentral(std::vector<PBWElement> gens, PBWElement z) {
        CentralSetSpec s;
        s.kind = Kind::MonoidalCentral;
        s.monoidGens = std::move(gens);
        s.z = std::move(z);
        return s;
    }

    static CentralSetSpec essentialRational() { return {}; }
};

inline CentralClosureResult closeBy(const LeftSubmodule& I, const CentralSetSpec& S,
                                    unsigned cap = 50, const GBLimits& limits = {}) {
    switch (S.kind) {
        case CentralSetSpec::Kind::MonoidalCentral:
            return monoidalCentralClosure(I, S.monoidGens, S.z, cap, limits);
        case CentralSetSpec::Kind::EssentialRational:
            return centralEssentialRationalClosure(I, cap, limits);
    }
    throw UnsupportedCombinationError("unknown central set kind");
}

// P^{S1 S2} = (P^{S1})^{S2}: valid since both supported kinds consist of
// central elements, so S1 S2 = S2 S1 holds structurally.
inline LeftSubmodule iteratedClosure(const LeftSubmodule& I, const CentralSetSpec& S1,
                                     const CentralSetSpec& S2, unsigned cap = 50,
                                     const GBLimits& limits = {}) {
    LeftSubmodule first = closeBy(I, S1, cap, limits).closure;
    return closeBy(first, S2, cap, limits).closure;
}

struct ModuleSplitResult {
    LeftSubmodule withPower;  // I + A^r q^n
    LeftSubmodule quotient;   // I : q^n
    unsigned index = 0;
};

// I = <I, q^n> cap (I : q^n) at the saturation index n (central q).
inline ModuleSplitResult splitByCentralElement(const LeftSubmodule& I, const CentralElement& q,
                                               unsigned cap = 50, const GBLimits& limits = {}) {
    auto [index, sat] = satIndex(I, q, cap, limits);
    PBWElement qn = q.value().pow(index);
    std::vector<PBWVector> gens = I.generators();
    for (std::size_t i = 0; i < I.rank(); ++i)
        gens.push_back(PBWVector::unit(I.algebra(), I.rank(), i, qn));
    return {LeftSubmodule(I.algebra(), I.rank(), std::move(gens)), sat, index};
}

// ---------------------------------------------------------------------------
// Reduction over the fraction field of the central block

// Second-block leading data: (position, y-exponent) plus its K[x-block]
// coefficient polynomial.
struct SecondBlockLead {
    std::size_t pos = 0;
    Exponent yexp;
    Polynomial coeff;
};

inline SecondBlockLead secondBlockLead(const PBWVector& g, const PolyRingPtr& blockRing) {
    const PBWAlgebraPtr A = g.algebra();
    const std::size_t k = centralBlockSize(A);
    const MonomialOrder& second = A->order().second();
    for (std::size_t pos = g.rank(); pos-- > 0;) {
        if (g[pos].isZero()) continue;
        const Term* best = nullptr;
        for (const auto& t : g[pos].terms())
            if (!best ||
                second.compareSpan(t.exp.span().subspan(k), best->exp.span().subspan(k)) > 0)
                best = &t;
        SecondBlockLead lead;
        lead.pos = pos;
        std::vector<int32_t> y(best->exp.span().begin() + k, best->exp.span().end());
        lead.yexp = Exponent(std::move(y));
        lead.coeff = leadingCoeffSecondBlock(g, blockRing);
        return lead;
    }
    throw std::domain_error("second-block lead of zero vector");
}

// Left normal form allowing division by nonzero central-block coefficients,
// i.e. reduction inside the localization at K[x-block] \ {0}. Returns the
// (pseudo-)remainder; members of the localized module reduce to zero.
inline PBWVector leftNFOverCentralFractions(const PBWVector& f, const std::vector<PBWVector>& G,
                                            std::size_t maxSteps = 10000) {
    const PBWAlgebraPtr A = f.algebra();
    const std::size_t k = centralBlockSize(A);
    PolyRingPtr blockRing = centralBlockRing(A);
    PBWVector h = f;
    std::size_t steps = 0;
    while (!h.isZero()) {
        if (++steps > maxSteps)
            throw ResourceLimitError("fraction-coefficient reduction exceeded step limit");
        SecondBlockLead lh = secondBlockLead(h, blockRing);
        bool reduced = false;
        for (const auto& g : G) {
            if (g.isZero()) continue;
            SecondBlockLead lg = secondBlockLead(g, blockRing);
            if (lg.pos != lh.pos || !lg.yexp.divides(lh.yexp)) continue;
            std::vector<int32_t> shift(A->nvars(), 0);
            for (std::size_t i = k; i < A->nvars(); ++i)
                shift[i] = lh.yexp[i - k] - lg.yexp[i - k];
            PBWVector u = PBWElement::monomial(A, Exponent(std::move(shift)), 1) * g;
            SecondBlockLead lu = secondBlockLead(u, blockRing);
            // cross-multiply by the central-block leading coefficients
            PBWElement cu = PBWElement::fromPolynomial(A, lu.coeff);
            PBWElement ch = PBWElement::fromPolynomial(A, lh.coeff);
            h = cu * h - ch * u;
            reduced = true;
            break;
        }
        if (!reduced) return h;
    }
    return h;
}

}  // namespace orelocal
