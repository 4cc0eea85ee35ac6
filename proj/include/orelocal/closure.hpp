#pragma once

#include "orelocal/intersect.hpp"

namespace orelocal {

struct DecompositionMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller-supplied primary decomposition of an ideal. The intersection of the
// components is verified against the target at construction; primarity of the
// components and correctness of the radicals are asserted by the caller and
// recorded as unchecked.
class PrimaryDecomposition {
  public:
    struct Component {
        Ideal Q;  // primary component (base-ring representatives)
        Ideal P;  // its asserted radical
    };

    PrimaryDecomposition(const QuotientRingPtr& R, Ideal target, std::vector<Component> components)
        : ring_(R), target_(std::move(target)), components_(std::move(components)) {
        if (components_.empty())
            throw DecompositionMismatchError("decomposition needs at least one component");
        Ideal meet = R->lift(components_.front().Q.generators());
        for (std::size_t i = 1; i < components_.size(); ++i)
            meet = idealIntersect(meet, R->lift(components_[i].Q.generators()));
        if (!idealEqual(meet, R->lift(target_.generators())))
            throw DecompositionMismatchError(
                "intersection of the components does not equal the target ideal");
    }

    const QuotientRingPtr& ring() const { return ring_; }
    const Ideal& target() const { return target_; }
    const std::vector<Component>& components() const { return components_; }

  private:
    QuotientRingPtr ring_;
    Ideal target_;
    std::vector<Component> components_;
};

// Outcome of a closure computation, including the audit trail: which
// components met S, their witnesses, and the combined multiplier s with
// s * closure inside the original ideal.
struct ClosureOutcome {
    Ideal closure;
    Polynomial multiplier;              // element of S with multiplier*closure in target
    std::vector<bool> componentMeetsS;  // aligned with the decomposition
    std::vector<Polynomial> componentWitnesses;  // meaningful where componentMeetsS
};

// Local closure from a primary decomposition: keep exactly the components
// whose intersection with S is empty; components that meet S close to the
// whole ring and drop out.
inline ClosureOutcome closureDecomp(const PrimaryDecomposition& D, const MultiplicativeSetSpec& S,
                                    const GBLimits& limits = {}) {
    const QuotientRingPtr R = D.ring();
    ClosureOutcome out;
    out.multiplier = Polynomial::one(R->base());
    std::optional<Ideal> acc;
    for (const auto& comp : D.components()) {
        bool meets = primaryMeetsSet(R, comp.Q, comp.P, S, limits);
        out.componentMeetsS.push_back(meets);
        if (meets) {
            // witness w in Q cap S; the product of all witnesses multiplies
            // the closure back into the target (it lies in every dropped Q)
            Polynomial w = witnessInSet(R, comp.Q, S, limits);
            out.componentWitnesses.push_back(w);
            out.multiplier = out.multiplier * w;
            continue;
        }
        out.componentWitnesses.push_back(Polynomial::zero(R->base()));
        Ideal Qfull = R->lift(comp.Q.generators());
        acc = acc ? idealIntersect(*acc, Qfull, limits) : Qfull;
    }
    out.closure = acc ? *acc : Ideal::whole(R->base());
    return out;
}

// The complementary factor J with target = closure cap J: the intersection of
// the components that do meet S.
inline Ideal complementaryPart(const PrimaryDecomposition& D, const MultiplicativeSetSpec& S,
                               const GBLimits& limits = {}) {
    const QuotientRingPtr R = D.ring();
    std::optional<Ideal> acc;
    for (const auto& comp : D.components()) {
        if (!primaryMeetsSet(R, comp.Q, comp.P, S, limits)) continue;
        Ideal Qfull = R->lift(comp.Q.generators());
        acc = acc ? idealIntersect(*acc, Qfull, limits) : Qfull;
    }
    return acc ? *acc : Ideal::whole(R->base());
}

// Symbolic power I^(n) from a caller-supplied decomposition of I^n and the
// associated primes of I: a component Q_i survives exactly when its radical
// q_i is contained in some associated prime p_j (each component is kept at
// most once).
inline Ideal symbolicPower(const QuotientRingPtr& R, const Ideal& I, unsigned n,
                           const std::vector<Ideal>& assocPrimesOfI,
                           const PrimaryDecomposition& decompOfIn,
                           const GBLimits& limits = {}) {
    if (n == 0) throw std::invalid_argument("symbolic power needs n >= 1");
    Ideal In = R->lift(idealPower(Ideal(R->base(), I.generators()), n).generators());
    if (!idealEqual(R->lift(decompOfIn.target().generators()), In))
        throw DecompositionMismatchError("supplied decomposition does not decompose I^n");

    std::optional<Ideal> acc;
    for (const auto& comp : decompOfIn.components()) {
        Ideal qfull = R->lift(comp.P.generators());
        bool keep = false;
        for (const auto& p : assocPrimesOfI) {
            Ideal pfull = R->lift(p.generators());
            bool contained = true;
            for (const auto& g : comp.P.generators())
                if (!normalForm(g, pfull).isZero()) { contained = false; break; }
            if (contained) { keep = true; break; }  // intersect once, then stop
        }
        if (!keep) continue;
        Ideal Qfull = R->lift(comp.Q.generators());
        acc = acc ? idealIntersect(*acc, Qfull, limits) : Qfull;
    }
    Ideal result = acc ? *acc : Ideal::whole(R->base());
    // I^n is contained in I^(n) by construction; fail loudly if not
    for (const auto& g : In.generators())
        if (!idealContains(result, g))
            throw std::logic_error("symbolic power lost a generator of I^n");
    return result;
}

struct SplitResult {
    Ideal withPower;   // <I, q^n>
    Ideal quotient;    // I : q^n
    unsigned index = 0;
};

// Decomposition I = <I, q^n> cap (I : q^n) at the saturation index n.
// For n = 0 this degenerates to I = R cap I.
inline SplitResult splitByElement(const Ideal& I, const Polynomial& q,
                                  const GBLimits& limits = {}) {
    if (q.isZero()) throw std::invalid_argument("split by zero element");
    auto [sat, index] = saturate(I, q, 50, limits);
    Polynomial qn = q.pow(index);
    std::vector<Polynomial> gens = I.generators();
    gens.push_back(qn);
    return {Ideal(I.ring(), std::move(gens)), sat, index};
}

}  // namespace orelocal
