#pragma once

#include "orelocal/groebner.hpp"

namespace orelocal {

class QuotientRing;
using QuotientRingPtr = std::shared_ptr<const QuotientRing>;

// K[x]/J with elements represented by their total normal form against the
// reduced Groebner basis of J, so equality of residue classes is syntactic.
class QuotientRing {
  public:
    static QuotientRingPtr make(PolyRingPtr base, Ideal modulus) {
        if (!modulus.ring()->sameAs(*base)) throw RingMismatchError("quotient modulus ring");
        return QuotientRingPtr(new QuotientRing(std::move(base), std::move(modulus)));
    }

    static QuotientRingPtr trivial(PolyRingPtr base) {
        Ideal z = Ideal::zero(base);
        return make(std::move(base), std::move(z));
    }

    const PolyRingPtr& base() const { return base_; }
    const Ideal& modulus() const { return modulus_; }

    // Canonical representative of f + J.
    Polynomial project(const Polynomial& f) const { return normalForm(f, modulus_); }

    bool isZeroMod(const Polynomial& f) const { return project(f).isZero(); }

    // The ideal of R generated by base-ring representatives, lifted back to
    // the base ring: always carries the modulus generators along.
    Ideal lift(const std::vector<Polynomial>& reps) const {
        std::vector<Polynomial> gens = reps;
        for (const auto& g : modulus_.generators()) gens.push_back(g);
        return Ideal(base_, std::move(gens));
    }

  private:
    QuotientRing(PolyRingPtr base, Ideal modulus)
        : base_(std::move(base)), modulus_(std::move(modulus)) {}

    PolyRingPtr base_;
    Ideal modulus_;
};

}  // namespace orelocal
