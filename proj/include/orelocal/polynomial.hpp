#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "orelocal/ordering.hpp"
#include "orelocal/rational.hpp"

namespace orelocal {

struct RingMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PolyRing;
using PolyRingPtr = std::shared_ptr<const PolyRing>;

// Commutative polynomial ring: an ordered list of variable names plus a term
// order. Rings are immutable and shared; two rings are compatible when their
// names and order coincide.
class PolyRing {
  public:
    static PolyRingPtr make(std::vector<std::string> vars, MonomialOrder order) {
        for (const auto& v : vars) {
            if (v.empty()) throw std::invalid_argument("empty variable name");
            if (!(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
                throw std::invalid_argument("variable must start with letter: " + v);
            for (char c : v)
                if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                    throw std::invalid_argument("bad character in variable name: " + v);
        }
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (std::size_t j = i + 1; j < vars.size(); ++j)
                if (vars[i] == vars[j])
                    throw std::invalid_argument("duplicate variable name: " + vars[i]);
        return PolyRingPtr(new PolyRing(std::move(vars), std::move(order)));
    }

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& varNames() const { return vars_; }
    const std::string& varName(std::size_t i) const { return vars_.at(i); }
    const MonomialOrder& order() const { return order_; }

    std::optional<std::size_t> varIndex(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        return std::nullopt;
    }

    bool sameAs(const PolyRing& o) const {
        return this == &o || (vars_ == o.vars_ && order_ == o.order_);
    }

  private:
    PolyRing(std::vector<std::string> vars, MonomialOrder order)
        : vars_(std::move(vars)), order_(std::move(order)) {}

    std::vector<std::string> vars_;
    MonomialOrder order_;
};

struct Term {
    Exponent exp;
    Rational coeff;
};

namespace detail {

struct ExpGreater {
    const MonomialOrder* order;
    bool operator()(const Exponent& a, const Exponent& b) const {
        return order->compare(a, b) > 0;
    }
};

// Merge two term vectors sorted descending under ord; drops cancellations.
inline std::vector<Term> mergeTerms(const std::vector<Term>& a, const std::vector<Term>& b,
                                    const MonomialOrder& ord, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = ord.compare(a[i].exp, b[j].exp);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j]);
            if (subtract) out.back().coeff = -out.back().coeff;
            ++j;
        } else {
            Rational s = a[i].coeff;
            if (subtract) s -= b[j].coeff; else s += b[j].coeff;
            if (!isZero(s)) out.push_back({a[i].exp, std::move(s)});
            ++i; ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) {
        out.push_back(b[j]);
        if (subtract) out.back().coeff = -out.back().coeff;
    }
    return out;
}

inline std::vector<Term> normalizeTerms(const std::vector<Term>& ts, const MonomialOrder& ord) {
    std::map<Exponent, Rational, ExpGreater> acc{ExpGreater{&ord}};
    for (const auto& t : ts) acc[t.exp] += t.coeff;
    std::vector<Term> out;
    for (auto& [e, c] : acc)
        if (!isZero(c)) out.push_back({e, c});
    return out;
}

inline std::string renderTerms(const std::vector<std::string>& names,
                               const std::vector<Term>& terms) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        Rational c = t.coeff;
        if (first) {
            if (sgn(c) < 0) { os << "-"; c = -c; }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
            if (sgn(c) < 0) c = -c;
        }
        first = false;
        bool hasVars = !t.exp.isZero();
        if (!hasVars || !isOne(c)) {
            os << c.get_str();
            if (hasVars) os << "*";
        }
        bool firstVar = true;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (t.exp[i] == 0) continue;
            if (!firstVar) os << "*";
            firstVar = false;
            os << names[i];
            if (t.exp[i] > 1) os << "^" << t.exp[i];
        }
    }
    return os.str();
}

}  // namespace detail

// Sparse multivariate polynomial over Q. Terms are kept sorted descending
// under the ring order with no zero coefficients, so the representation is
// canonical and the leading term is terms().front().
class Polynomial {
  public:
    Polynomial() = default;

    static Polynomial zero(PolyRingPtr ring) {
        Polynomial p;
        p.ring_ = std::move(ring);
        return p;
    }

    static Polynomial constant(PolyRingPtr ring, Rational c) {
        Polynomial p = zero(std::move(ring));
        if (!orelocal::isZero(c)) p.terms_.push_back({Exponent::zero(p.ring_->nvars()), std::move(c)});
        return p;
    }

    static Polynomial one(PolyRingPtr ring) { return constant(std::move(ring), 1); }

    static Polynomial variable(PolyRingPtr ring, std::size_t i, int32_t k = 1) {
        Polynomial p = zero(std::move(ring));
        if (k < 0) throw std::invalid_argument("negative variable power");
        if (k == 0) return one(p.ring_);
        p.terms_.push_back({Exponent::unit(p.ring_->nvars(), i, k), 1});
        return p;
    }

    static Polynomial monomial(PolyRingPtr ring, Exponent e, Rational c) {
        Polynomial p = zero(std::move(ring));
        if (e.size() != p.ring_->nvars()) throw DimensionError("monomial exponent length");
        if (!orelocal::isZero(c)) p.terms_.push_back({std::move(e), std::move(c)});
        return p;
    }

    // Terms need not come sorted or combined.
    static Polynomial fromTerms(PolyRingPtr ring, const std::vector<Term>& ts) {
        Polynomial p = zero(ring);
        for (const auto& t : ts)
            if (t.exp.size() != ring->nvars()) throw DimensionError("term exponent length");
        p.terms_ = detail::normalizeTerms(ts, p.ring_->order());
        return p;
    }

    const PolyRingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    std::size_t termCount() const { return terms_.size(); }

    bool isConstant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.isZero());
    }

    const Exponent& leadingExp() const { return lead().exp; }
    const Rational& leadingCoeff() const { return lead().coeff; }

    int64_t totalDegree() const {
        int64_t d = -1;
        for (const auto& t : terms_) d = std::max(d, t.exp.degree());
        return d;
    }

    Rational constantTerm() const {
        for (const auto& t : terms_)
            if (t.exp.isZero()) return t.coeff;
        return Rational(0);
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.checkRing(b);
        Polynomial r = zero(a.ring_);
        r.terms_ = detail::mergeTerms(a.terms_, b.terms_, a.ring_->order(), false);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        a.checkRing(b);
        Polynomial r = zero(a.ring_);
        r.terms_ = detail::mergeTerms(a.terms_, b.terms_, a.ring_->order(), true);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.checkRing(b);
        Polynomial r = zero(a.ring_);
        if (a.isZero() || b.isZero()) return r;
        std::map<Exponent, Rational, detail::ExpGreater> acc{detail::ExpGreater{&a.ring_->order()}};
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_)
                acc[ta.exp.plus(tb.exp)] += ta.coeff * tb.coeff;
        for (auto& [e, c] : acc)
            if (!orelocal::isZero(c)) r.terms_.push_back({e, c});
        return r;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& a) {
        Polynomial r = a;
        if (orelocal::isZero(c)) return zero(a.ring_);
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    Polynomial pow(unsigned n) const {
        Polynomial r = one(ring_);
        Polynomial base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = (n >>= 1) ? base * base : base;
        }
        return r;
    }

    // Multiply by a single term without building a Polynomial for it.
    Polynomial timesTerm(const Exponent& e, const Rational& c) const {
        Polynomial r = zero(ring_);
        if (orelocal::isZero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.exp.plus(e), t.coeff * c});
        return r;  // order is preserved: translation invariance of admissible orders
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (!a.ring_->sameAs(*b.ring_)) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].exp == b.terms_[i].exp && a.terms_[i].coeff == b.terms_[i].coeff))
                return false;
        return true;
    }

    Polynomial derivative(std::size_t var) const {
        std::vector<Term> ts;
        for (const auto& t : terms_) {
            int32_t e = t.exp[var];
            if (e == 0) continue;
            std::vector<int32_t> v(t.exp.span().begin(), t.exp.span().end());
            v[var] -= 1;
            ts.push_back({Exponent(std::move(v)), t.coeff * e});
        }
        return fromTerms(ring_, ts);
    }

    // Scale so the leading coefficient is 1.
    Polynomial monic() const {
        if (isZero()) return *this;
        Rational inv = 1 / leadingCoeff();
        return inv * *this;
    }

    // Scale by the inverse of the rational content: integer coefficients with
    // gcd 1 and positive leading coefficient. Keeps numbers small inside GB loops.
    Polynomial primitive() const {
        if (isZero()) return *this;
        mpz_class num = 0, den = 1;
        for (const auto& t : terms_) {
            num = gcd(num, t.coeff.get_num());
            den = lcm(den, t.coeff.get_den());
        }
        Rational scale(den, num);
        scale.canonicalize();
        if (sgn(leadingCoeff()) < 0) scale = -scale;
        return scale * *this;
    }

    // Exact division; throws when the divisor does not divide exactly.
    Polynomial divideExact(const Polynomial& g) const {
        checkRing(g);
        if (g.isZero()) throw std::invalid_argument("division by zero polynomial");
        Polynomial rem = *this;
        Polynomial quot = zero(ring_);
        while (!rem.isZero()) {
            if (!g.leadingExp().divides(rem.leadingExp()))
                throw std::domain_error("divideExact: not divisible");
            Exponent e = rem.leadingExp().minus(g.leadingExp());
            Rational c = rem.leadingCoeff() / g.leadingCoeff();
            quot = quot + monomial(ring_, e, c);
            rem = rem - g.timesTerm(e, c);
        }
        return quot;
    }

    // Transport into a ring that contains (at least) the same variable names.
    Polynomial mapTo(const PolyRingPtr& target) const {
        std::vector<std::size_t> idx(ring_->nvars());
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            auto j = target->varIndex(ring_->varName(i));
            if (!j) throw RingMismatchError("mapTo: missing variable " + ring_->varName(i));
            idx[i] = *j;
        }
        std::vector<Term> ts;
        ts.reserve(terms_.size());
        for (const auto& t : terms_) {
            std::vector<int32_t> v(target->nvars(), 0);
            for (std::size_t i = 0; i < ring_->nvars(); ++i) v[idx[i]] = t.exp[i];
            ts.push_back({Exponent(std::move(v)), t.coeff});
        }
        return fromTerms(target, ts);
    }

    // Restriction to a subring; every term must only use variables present there.
    Polynomial restrictTo(const PolyRingPtr& target) const {
        std::vector<std::optional<std::size_t>> idx(ring_->nvars());
        for (std::size_t i = 0; i < ring_->nvars(); ++i)
            idx[i] = target->varIndex(ring_->varName(i));
        std::vector<Term> ts;
        for (const auto& t : terms_) {
            std::vector<int32_t> v(target->nvars(), 0);
            for (std::size_t i = 0; i < ring_->nvars(); ++i) {
                if (t.exp[i] == 0) continue;
                if (!idx[i])
                    throw RingMismatchError("restrictTo: term uses dropped variable " +
                                            ring_->varName(i));
                v[*idx[i]] = t.exp[i];
            }
            ts.push_back({Exponent(std::move(v)), t.coeff});
        }
        return fromTerms(target, ts);
    }

    bool usesOnly(const std::vector<bool>& allowed) const {
        for (const auto& t : terms_)
            for (std::size_t i = 0; i < ring_->nvars(); ++i)
                if (t.exp[i] > 0 && !allowed[i]) return false;
        return true;
    }

    // Ring-map substitution: variable i is replaced by images[i].
    Polynomial substitute(const PolyRingPtr& target,
                          const std::vector<Polynomial>& images) const {
        if (images.size() != ring_->nvars())
            throw std::invalid_argument("substitute: image count mismatch");
        Polynomial r = zero(target);
        for (const auto& t : terms_) {
            Polynomial m = constant(target, t.coeff);
            for (std::size_t i = 0; i < ring_->nvars(); ++i)
                if (t.exp[i] > 0) m = m * images[i].pow(static_cast<unsigned>(t.exp[i]));
            r = r + m;
        }
        return r;
    }

    std::string toString() const { return detail::renderTerms(ring_->varNames(), terms_); }

  private:
    const Term& lead() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return terms_.front();
    }

    void checkRing(const Polynomial& o) const {
        if (!ring_->sameAs(*o.ring_)) throw RingMismatchError("polynomial ring mismatch");
    }

    PolyRingPtr ring_;
    std::vector<Term> terms_;
};

}  // namespace orelocal
