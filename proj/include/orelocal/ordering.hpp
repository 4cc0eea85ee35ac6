#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "orelocal/exponent.hpp"

namespace orelocal {

// Admissible term ordering on exponent vectors. All supported kinds are
// global (0 is least) and translation-invariant by construction.
//
//   lex            first differing coordinate decides
//   degrevlex      total degree, then reverse-lex tiebreak
//   wdeg(w; tie)   weighted degree, then tiebreak order
//   block(o1,k,o2) coordinates [0,k) compared first by o1, rest by o2
//   antiblock(o1,o2,k)  the SECOND block [k,n) is compared first by o2,
//                       ties broken on [0,k) by o1
class MonomialOrder {
  public:
    enum class Kind { Lex, DegRevLex, WDeg, Block, Antiblock };

    static MonomialOrder lex() { return MonomialOrder(Kind::Lex); }
    static MonomialOrder degrevlex() { return MonomialOrder(Kind::DegRevLex); }

    static MonomialOrder weighted(std::vector<int64_t> weights, const MonomialOrder& tiebreak) {
        MonomialOrder o(Kind::WDeg);
        for (int64_t w : weights)
            if (w < 0) throw std::invalid_argument("negative order weight");
        o.weights_ = std::move(weights);
        o.sub1_ = std::make_shared<MonomialOrder>(tiebreak);
        return o;
    }

    static MonomialOrder block(const MonomialOrder& first, std::size_t split,
                               const MonomialOrder& second) {
        MonomialOrder o(Kind::Block);
        o.sub1_ = std::make_shared<MonomialOrder>(first);
        o.sub2_ = std::make_shared<MonomialOrder>(second);
        o.split_ = split;
        return o;
    }

    // Factory is the only way to build antiblock orders; it records the split
    // so the second-block projection property holds structurally.
    static MonomialOrder antiblock(const MonomialOrder& first, const MonomialOrder& second,
                                   std::size_t split) {
        MonomialOrder o(Kind::Antiblock);
        o.sub1_ = std::make_shared<MonomialOrder>(first);
        o.sub2_ = std::make_shared<MonomialOrder>(second);
        o.split_ = split;
        return o;
    }

    Kind kind() const { return kind_; }
    std::size_t split() const { return split_; }
    const MonomialOrder& first() const { return *sub1_; }
    const MonomialOrder& second() const { return *sub2_; }

    // -1: a < b, 0: equal, 1: a > b.
    int compare(const Exponent& a, const Exponent& b) const {
        if (a.size() != b.size()) throw DimensionError("compare: length mismatch");
        if (kind_ == Kind::DegRevLex) {
            // fast path via the cached degree
            if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
        }
        return compareSpan(a.span(), b.span());
    }

    int compareSpan(std::span<const int32_t> a, std::span<const int32_t> b) const {
        switch (kind_) {
            case Kind::Lex: {
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
                return 0;
            }
            case Kind::DegRevLex: {
                int64_t da = 0, db = 0;
                for (std::size_t i = 0; i < a.size(); ++i) { da += a[i]; db += b[i]; }
                if (da != db) return da < db ? -1 : 1;
                for (std::size_t i = a.size(); i-- > 0;)
                    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
                return 0;
            }
            case Kind::WDeg: {
                if (a.size() != weights_.size())
                    throw DimensionError("weighted order: weight count mismatch");
                int64_t da = 0, db = 0;
                for (std::size_t i = 0; i < a.size(); ++i) {
                    da += weights_[i] * a[i];
                    db += weights_[i] * b[i];
                }
                if (da != db) return da < db ? -1 : 1;
                return sub1_->compareSpan(a, b);
            }
            case Kind::Block: {
                if (split_ > a.size()) throw DimensionError("block order: bad split");
                int c = sub1_->compareSpan(a.subspan(0, split_), b.subspan(0, split_));
                if (c != 0) return c;
                return sub2_->compareSpan(a.subspan(split_), b.subspan(split_));
            }
            case Kind::Antiblock: {
                if (split_ > a.size()) throw DimensionError("antiblock order: bad split");
                int c = sub2_->compareSpan(a.subspan(split_), b.subspan(split_));
                if (c != 0) return c;
                return sub1_->compareSpan(a.subspan(0, split_), b.subspan(0, split_));
            }
        }
        return 0;
    }

    bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

    std::string name() const {
        switch (kind_) {
            case Kind::Lex: return "lex";
            case Kind::DegRevLex: return "degrevlex";
            case Kind::WDeg: {
                std::ostringstream os;
                os << "wdeg([";
                for (std::size_t i = 0; i < weights_.size(); ++i)
                    os << (i ? "," : "") << weights_[i];
                os << "]," << sub1_->name() << ")";
                return os.str();
            }
            case Kind::Block: return "block(" + sub1_->name() + "," + std::to_string(split_) +
                                     "," + sub2_->name() + ")";
            case Kind::Antiblock: return "antiblock(" + sub1_->name() + "," + sub2_->name() +
                                         "," + std::to_string(split_) + ")";
        }
        return "?";
    }

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
        return a.name() == b.name();
    }

  private:
    explicit MonomialOrder(Kind k) : kind_(k) {}

    Kind kind_;
    std::vector<int64_t> weights_;
    std::shared_ptr<const MonomialOrder> sub1_, sub2_;
    std::size_t split_ = 0;
};

// Module monomial (i, alpha): component position (0-based) plus term exponent.
struct ModuleMonomial {
    std::size_t position = 0;
    Exponent exp;
};

// Ascending position-over-term extension of a term order:
// (i,a) <= (j,b)  iff  i < j, or i = j and a <= b.
class ModuleOrder {
  public:
    explicit ModuleOrder(MonomialOrder base) : base_(std::move(base)) {}

    const MonomialOrder& base() const { return base_; }

    int compare(std::size_t ia, const Exponent& a, std::size_t ib, const Exponent& b) const {
        if (ia != ib) return ia < ib ? -1 : 1;
        return base_.compare(a, b);
    }

    int compare(const ModuleMonomial& a, const ModuleMonomial& b) const {
        return compare(a.position, a.exp, b.position, b.exp);
    }

    std::string name() const { return "pot(" + base_.name() + ")"; }

  private:
    MonomialOrder base_;
};

}  // namespace orelocal
