#pragma once

#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>

#include "orelocal/polynomial.hpp"

namespace orelocal {

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoPreimageOrderingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GBLimits {
    std::size_t pairCap = 200000;
};

class PBWAlgebra;
using PBWAlgebraPtr = std::shared_ptr<const PBWAlgebra>;

struct RelationInput {
    std::size_t i = 0, j = 0;   // i < j, relation x_j * x_i = c * x_i * x_j + d
    Rational c = 1;
    std::vector<Term> d;        // tail in standard-monomial form, may be empty
};

class PBWElement;

// Presentation of a G-algebra: variables x_1..x_n, an admissible order, and
// for each i<j a relation x_j x_i = c_ij x_i x_j + d_ij with lexp(d_ij) below
// lexp(x_i x_j). The constructor verifies tail admissibility and checks that
// both ways of straightening x_k x_j x_i agree, so standard monomials form a
// basis for every presentation that gets through.
class PBWAlgebra : public std::enable_shared_from_this<PBWAlgebra> {
  public:
    static PBWAlgebraPtr make(std::vector<std::string> vars, MonomialOrder order,
                              const std::vector<RelationInput>& relations);

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& varNames() const { return vars_; }
    const std::string& varName(std::size_t i) const { return vars_.at(i); }
    const MonomialOrder& order() const { return order_; }
    bool isCommutative() const { return commutative_; }

    std::optional<std::size_t> varIndex(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        return std::nullopt;
    }

    const Rational& relC(std::size_t i, std::size_t j) const { return c_[idx(i, j)]; }
    const std::vector<Term>& relD(std::size_t i, std::size_t j) const { return d_[idx(i, j)]; }

    bool trivialPair(std::size_t i, std::size_t j) const {
        if (i == j) return true;
        if (i > j) std::swap(i, j);
        return isOne(relC(i, j)) && relD(i, j).empty();
    }

    // Largest prefix of variables that commutes trivially with everything.
    std::size_t centralPrefixSize() const { return centralPrefix_; }

    bool varIsCentral(std::size_t i) const {
        for (std::size_t j = 0; j < nvars(); ++j)
            if (!trivialPair(i, j)) return false;
        return true;
    }

    bool sameAs(const PBWAlgebra& o) const;

    // Standard-form product of two standard monomials; memoized.
    std::vector<Term> mulMono(const Exponent& a, const Exponent& b) const;

    std::vector<Term> mulTerms(const std::vector<Term>& a, const std::vector<Term>& b) const;

    // Rebuild the same presentation under a different admissible order.
    PBWAlgebraPtr withOrder(const MonomialOrder& newOrder) const;

    // Append new variables after the existing ones. Relations among the new
    // variables are trivial; relation of new variable a with old variable k is
    // x_a x_k = x_k x_a + tails[a][k] (tails given in old-variable exponents).
    static PBWAlgebraPtr extend(const PBWAlgebra& base, std::vector<std::string> newVars,
                                const std::vector<std::vector<std::vector<Term>>>& tails,
                                const MonomialOrder& order);

  private:
    PBWAlgebra(std::vector<std::string> vars, MonomialOrder order)
        : vars_(std::move(vars)), order_(std::move(order)) {}

    std::size_t idx(std::size_t i, std::size_t j) const {
        if (i >= j || j >= nvars()) throw std::invalid_argument("bad relation index");
        return i * nvars() + j;
    }

    void validateAndFinish();

    std::vector<std::string> vars_;
    MonomialOrder order_;
    std::vector<Rational> c_;
    std::vector<std::vector<Term>> d_;
    bool commutative_ = true;
    std::size_t centralPrefix_ = 0;

    mutable std::unordered_map<std::pair<Exponent, Exponent>, std::vector<Term>,
                               ExponentPairHash> memo_;
    mutable std::mutex memoMutex_;
};

// Element of a G-algebra in standard form: terms sorted descending under the
// algebra order, no zero coefficients.
class PBWElement {
  public:
    PBWElement() = default;

    static PBWElement zero(PBWAlgebraPtr alg) {
        PBWElement e;
        e.alg_ = std::move(alg);
        return e;
    }

    static PBWElement constant(PBWAlgebraPtr alg, Rational c) {
        PBWElement e = zero(std::move(alg));
        if (!orelocal::isZero(c)) e.terms_.push_back({Exponent::zero(e.alg_->nvars()), std::move(c)});
        return e;
    }

    static PBWElement one(PBWAlgebraPtr alg) { return constant(std::move(alg), 1); }

    static PBWElement variable(PBWAlgebraPtr alg, std::size_t i, int32_t k = 1) {
        if (k < 0) throw std::invalid_argument("negative variable power");
        PBWElement e = zero(std::move(alg));
        if (k > 0) e.terms_.push_back({Exponent::unit(e.alg_->nvars(), i, k), 1});
        else e.terms_.push_back({Exponent::zero(e.alg_->nvars()), 1});
        return e;
    }

    static PBWElement monomial(PBWAlgebraPtr alg, Exponent e, Rational c) {
        PBWElement r = zero(std::move(alg));
        if (!orelocal::isZero(c)) r.terms_.push_back({std::move(e), std::move(c)});
        return r;
    }

    static PBWElement fromTerms(PBWAlgebraPtr alg, const std::vector<Term>& ts) {
        PBWElement e = zero(alg);
        for (const auto& t : ts)
            if (t.exp.size() != alg->nvars()) throw DimensionError("term exponent length");
        e.terms_ = detail::normalizeTerms(ts, e.alg_->order());
        return e;
    }

    // Interpret a commutative polynomial as an element in standard form; the
    // variable names must all exist in the algebra.
    static PBWElement fromPolynomial(PBWAlgebraPtr alg, const Polynomial& p) {
        std::vector<std::size_t> map(p.ring()->nvars());
        for (std::size_t i = 0; i < map.size(); ++i) {
            auto j = alg->varIndex(p.ring()->varName(i));
            if (!j) throw RingMismatchError("algebra lacks variable " + p.ring()->varName(i));
            map[i] = *j;
        }
        std::vector<Term> ts;
        ts.reserve(p.terms().size());
        for (const auto& t : p.terms()) {
            std::vector<int32_t> v(alg->nvars(), 0);
            for (std::size_t i = 0; i < map.size(); ++i) v[map[i]] = t.exp[i];
            ts.push_back({Exponent(std::move(v)), t.coeff});
        }
        return fromTerms(alg, ts);
    }

    // Forgets the relations; valid for elements supported on commuting variables.
    Polynomial toPolynomial(const PolyRingPtr& ring) const {
        std::vector<std::optional<std::size_t>> map(alg_->nvars());
        for (std::size_t i = 0; i < alg_->nvars(); ++i) map[i] = ring->varIndex(alg_->varName(i));
        std::vector<Term> ts;
        for (const auto& t : terms_) {
            std::vector<int32_t> v(ring->nvars(), 0);
            for (std::size_t i = 0; i < alg_->nvars(); ++i) {
                if (t.exp[i] == 0) continue;
                if (!map[i])
                    throw RingMismatchError("toPolynomial: element uses " + alg_->varName(i));
                v[*map[i]] = t.exp[i];
            }
            ts.push_back({Exponent(std::move(v)), t.coeff});
        }
        return Polynomial::fromTerms(ring, ts);
    }

    const PBWAlgebraPtr& algebra() const { return alg_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

    bool isConstant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.isZero());
    }

    const Exponent& leadingExp() const { return lead().exp; }
    const Rational& leadingCoeff() const { return lead().coeff; }

    PBWElement operator-() const {
        PBWElement r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend PBWElement operator+(const PBWElement& a, const PBWElement& b) {
        a.checkAlg(b);
        PBWElement r = zero(a.alg_);
        r.terms_ = detail::mergeTerms(a.terms_, b.terms_, a.alg_->order(), false);
        return r;
    }

    friend PBWElement operator-(const PBWElement& a, const PBWElement& b) {
        a.checkAlg(b);
        PBWElement r = zero(a.alg_);
        r.terms_ = detail::mergeTerms(a.terms_, b.terms_, a.alg_->order(), true);
        return r;
    }

    friend PBWElement operator*(const PBWElement& a, const PBWElement& b) {
        a.checkAlg(b);
        PBWElement r = zero(a.alg_);
        r.terms_ = a.alg_->mulTerms(a.terms_, b.terms_);
        return r;
    }

    friend PBWElement operator*(const Rational& c, const PBWElement& a) {
        if (orelocal::isZero(c)) return zero(a.alg_);
        PBWElement r = a;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    PBWElement pow(unsigned n) const {
        PBWElement r = one(alg_);
        PBWElement base = *this;
        while (n) {
            if (n & 1) r = r * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return r;
    }

    PBWElement commutatorWith(const PBWElement& b) const { return *this * b - b * *this; }

    friend bool operator==(const PBWElement& a, const PBWElement& b) {
        if (!a.alg_->sameAs(*b.alg_)) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].exp == b.terms_[i].exp && a.terms_[i].coeff == b.terms_[i].coeff))
                return false;
        return true;
    }

    std::string toString() const { return detail::renderTerms(alg_->varNames(), terms_); }

  private:
    const Term& lead() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero element");
        return terms_.front();
    }

    void checkAlg(const PBWElement& o) const {
        if (!alg_->sameAs(*o.alg_)) throw RingMismatchError("algebra mismatch");
    }

    PBWAlgebraPtr alg_;
    std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// PBWAlgebra implementation

inline bool PBWAlgebra::sameAs(const PBWAlgebra& o) const {
    if (this == &o) return true;
    if (vars_ != o.vars_ || !(order_ == o.order_)) return false;
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < nvars(); ++i)
        for (std::size_t j = i + 1; j < nvars(); ++j) {
            if (relC(i, j) != o.relC(i, j)) return false;
            const auto& da = relD(i, j);
            const auto& db = o.relD(i, j);
            if (da.size() != db.size()) return false;
            for (std::size_t k = 0; k < da.size(); ++k)
                if (!(da[k].exp == db[k].exp && da[k].coeff == db[k].coeff)) return false;
        }
    return true;
}

inline PBWAlgebraPtr PBWAlgebra::make(std::vector<std::string> vars, MonomialOrder order,
                                      const std::vector<RelationInput>& relations) {
    auto a = std::shared_ptr<PBWAlgebra>(new PBWAlgebra(std::move(vars), std::move(order)));
    const std::size_t n = a->nvars();
    a->c_.assign(n * n, Rational(1));
    a->d_.assign(n * n, {});
    for (const auto& r : relations) {
        if (r.i >= r.j || r.j >= n) throw std::invalid_argument("relation needs i < j < nvars");
        if (isZero(r.c)) throw std::invalid_argument("relation scalar must be nonzero");
        a->c_[a->idx(r.i, r.j)] = r.c;
        a->d_[a->idx(r.i, r.j)] = detail::normalizeTerms(r.d, a->order_);
    }
    a->validateAndFinish();
    return a;
}

inline void PBWAlgebra::validateAndFinish() {
    const std::size_t n = nvars();
    commutative_ = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& d = relD(i, j);
            if (!isOne(relC(i, j)) || !d.empty()) commutative_ = false;
            if (!d.empty()) {
                Exponent prod = Exponent::unit(n, i).plus(Exponent::unit(n, j));
                if (order_.compare(d.front().exp, prod) >= 0)
                    throw std::invalid_argument(
                        "relation tail not below x_" + std::to_string(i) + "*x_" +
                        std::to_string(j) + " under " + order_.name());
            }
        }
    centralPrefix_ = 0;
    while (centralPrefix_ < n && varIsCentral(centralPrefix_)) ++centralPrefix_;

    // Straightening consistency: both bracketings of x_k x_j x_i must agree.
    auto self = shared_from_this();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (trivialPair(i, j) && trivialPair(i, k) && trivialPair(j, k)) continue;
                auto xi = PBWElement::variable(self, i);
                auto xj = PBWElement::variable(self, j);
                auto xk = PBWElement::variable(self, k);
                if (!((xk * xj) * xi == xk * (xj * xi)))
                    throw std::invalid_argument(
                        "presentation is not associative on variables (" + std::to_string(i) +
                        "," + std::to_string(j) + "," + std::to_string(k) + ")");
            }
}

inline std::vector<Term> PBWAlgebra::mulMono(const Exponent& a, const Exponent& b) const {
    if (a.isZero() || b.isZero() || commutative_ || a.maxSupport() <= b.minSupport())
        return {{a.plus(b), Rational(1)}};
    {
        std::lock_guard<std::mutex> lock(memoMutex_);
        auto it = memo_.find({a, b});
        if (it != memo_.end()) return it->second;
    }
    const std::size_t j = a.maxSupport();
    const std::size_t i = b.minSupport();
    // x^a x^b = x^{a'} (x_j x_i) x^{b'} with a' = a - e_j, b' = b - e_i, and
    // x_j x_i = c_ij x_i x_j + d_ij.
    const Exponent a1 = a.minus(Exponent::unit(nvars(), j));
    const Exponent b1 = b.minus(Exponent::unit(nvars(), i));
    const std::vector<Term> monoA1{{a1, Rational(1)}};
    const std::vector<Term> monoB1{{b1, Rational(1)}};
    const std::vector<Term> monoXi{{Exponent::unit(nvars(), i), Rational(1)}};
    const std::vector<Term> monoXj{{Exponent::unit(nvars(), j), Rational(1)}};

    std::vector<Term> head = mulTerms(mulTerms(mulTerms(monoA1, monoXi), monoXj), monoB1);
    for (auto& t : head) t.coeff *= relC(i, j);
    std::vector<Term> result = head;
    const auto& tail = relD(i, j);
    if (!tail.empty()) {
        std::vector<Term> mid = mulTerms(mulTerms(monoA1, tail), monoB1);
        result = detail::mergeTerms(result, mid, order_, false);
    }
    {
        std::lock_guard<std::mutex> lock(memoMutex_);
        memo_.emplace(std::make_pair(a, b), result);
    }
    return result;
}

inline std::vector<Term> PBWAlgebra::mulTerms(const std::vector<Term>& a,
                                              const std::vector<Term>& b) const {
    if (a.empty() || b.empty()) return {};
    std::map<Exponent, Rational, detail::ExpGreater> acc{detail::ExpGreater{&order_}};
    for (const auto& ta : a)
        for (const auto& tb : b) {
            if (commutative_ || ta.exp.isZero() || tb.exp.isZero() ||
                ta.exp.maxSupport() <= tb.exp.minSupport()) {
                acc[ta.exp.plus(tb.exp)] += ta.coeff * tb.coeff;
                continue;
            }
            for (const auto& t : mulMono(ta.exp, tb.exp)) acc[t.exp] += ta.coeff * tb.coeff * t.coeff;
        }
    std::vector<Term> out;
    for (auto& [e, c] : acc)
        if (!isZero(c)) out.push_back({e, c});
    return out;
}

inline PBWAlgebraPtr PBWAlgebra::withOrder(const MonomialOrder& newOrder) const {
    std::vector<RelationInput> rels;
    for (std::size_t i = 0; i < nvars(); ++i)
        for (std::size_t j = i + 1; j < nvars(); ++j)
            if (!trivialPair(i, j)) rels.push_back({i, j, relC(i, j), relD(i, j)});
    return make(vars_, newOrder, rels);
}

inline PBWAlgebraPtr PBWAlgebra::extend(const PBWAlgebra& base, std::vector<std::string> newVars,
                                        const std::vector<std::vector<std::vector<Term>>>& tails,
                                        const MonomialOrder& order) {
    const std::size_t n = base.nvars();
    const std::size_t m = newVars.size();
    std::vector<std::string> vars = base.varNames();
    for (auto& v : newVars) vars.push_back(std::move(v));

    auto widen = [&](const std::vector<Term>& ts) {
        std::vector<Term> out;
        out.reserve(ts.size());
        for (const auto& t : ts) {
            std::vector<int32_t> v(t.exp.span().begin(), t.exp.span().end());
            v.resize(n + m, 0);
            out.push_back({Exponent(std::move(v)), t.coeff});
        }
        return out;
    };

    std::vector<RelationInput> rels;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!base.trivialPair(i, j))
                rels.push_back({i, j, base.relC(i, j), widen(base.relD(i, j))});
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t k = 0; k < n; ++k)
            if (!tails[a][k].empty())
                rels.push_back({k, n + a, Rational(1), widen(tails[a][k])});
    return make(std::move(vars), order, rels);
}

// ---------------------------------------------------------------------------
// Vectors in A^r and left submodules

class PBWVector {
  public:
    PBWVector() = default;

    PBWVector(PBWAlgebraPtr alg, std::size_t rank)
        : alg_(std::move(alg)), comps_(rank, PBWElement::zero(alg_)) {}

    static PBWVector unit(PBWAlgebraPtr alg, std::size_t rank, std::size_t pos,
                          PBWElement value) {
        PBWVector v(alg, rank);
        v.comps_.at(pos) = std::move(value);
        return v;
    }

    static PBWVector single(PBWElement value) {
        PBWVector v(value.algebra(), 1);
        v.comps_[0] = std::move(value);
        return v;
    }

    const PBWAlgebraPtr& algebra() const { return alg_; }
    std::size_t rank() const { return comps_.size(); }
    const PBWElement& operator[](std::size_t i) const { return comps_[i]; }
    PBWElement& operator[](std::size_t i) { return comps_[i]; }

    bool isZero() const {
        for (const auto& c : comps_)
            if (!c.isZero()) return false;
        return true;
    }

    friend PBWVector operator+(const PBWVector& a, const PBWVector& b) {
        PBWVector r = a;
        for (std::size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] = r.comps_[i] + b.comps_[i];
        return r;
    }

    friend PBWVector operator-(const PBWVector& a, const PBWVector& b) {
        PBWVector r = a;
        for (std::size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] = r.comps_[i] - b.comps_[i];
        return r;
    }

    friend PBWVector operator*(const PBWElement& a, const PBWVector& v) {
        PBWVector r = v;
        for (auto& c : r.comps_) c = a * c;
        return r;
    }

    friend PBWVector operator*(const Rational& a, const PBWVector& v) {
        PBWVector r = v;
        for (auto& c : r.comps_) c = a * c;
        return r;
    }

    PBWVector operator-() const {
        PBWVector r = *this;
        for (auto& c : r.comps_) c = -c;
        return r;
    }

    friend bool operator==(const PBWVector& a, const PBWVector& b) {
        if (a.rank() != b.rank()) return false;
        for (std::size_t i = 0; i < a.rank(); ++i)
            if (!(a.comps_[i] == b.comps_[i])) return false;
        return true;
    }

    // Leading (position, exponent, coefficient) under an ascending POT order.
    struct Lead {
        std::size_t pos;
        Exponent exp;
        Rational coeff;
    };

    Lead leading(const ModuleOrder&) const {
        // ascending POT: the highest nonzero position dominates
        for (std::size_t i = comps_.size(); i-- > 0;)
            if (!comps_[i].isZero())
                return {i, comps_[i].leadingExp(), comps_[i].leadingCoeff()};
        throw std::domain_error("leading term of zero vector");
    }

    std::string toString() const {
        if (rank() == 1) return comps_[0].toString();
        std::string s = "(";
        for (std::size_t i = 0; i < comps_.size(); ++i)
            s += (i ? ", " : "") + comps_[i].toString();
        return s + ")";
    }

  private:
    PBWAlgebraPtr alg_;
    std::vector<PBWElement> comps_;
};

// Finitely generated left submodule of A^r with a cache of reduced left
// Groebner bases keyed by the module order.
class LeftSubmodule {
  public:
    LeftSubmodule() : data_(std::make_shared<Data>()) {}

    LeftSubmodule(PBWAlgebraPtr alg, std::size_t rank, std::vector<PBWVector> gens)
        : alg_(std::move(alg)), rank_(rank), data_(std::make_shared<Data>()) {
        for (auto& g : gens) {
            if (g.rank() != rank_) throw DimensionError("generator rank mismatch");
            if (!g.isZero()) data_->gens.push_back(std::move(g));
        }
    }

    static LeftSubmodule leftIdeal(PBWAlgebraPtr alg, std::vector<PBWElement> gens) {
        std::vector<PBWVector> vs;
        for (auto& g : gens) vs.push_back(PBWVector::single(std::move(g)));
        return LeftSubmodule(std::move(alg), 1, std::move(vs));
    }

    const PBWAlgebraPtr& algebra() const { return alg_; }
    std::size_t rank() const { return rank_; }
    const std::vector<PBWVector>& generators() const { return data_->gens; }

    const std::vector<PBWVector>& reducedGB(const ModuleOrder& morder) const;

    std::vector<PBWElement> idealGenerators() const {
        if (rank_ != 1) throw DimensionError("not a left ideal");
        std::vector<PBWElement> out;
        for (const auto& g : data_->gens) out.push_back(g[0]);
        return out;
    }

  private:
    struct Data {
        std::vector<PBWVector> gens;
        mutable std::mutex mutex;
        mutable std::map<std::string, std::shared_ptr<const std::vector<PBWVector>>> gbCache;
    };

    PBWAlgebraPtr alg_;
    std::size_t rank_ = 1;
    std::shared_ptr<Data> data_;
};

// ---------------------------------------------------------------------------
// Left normal forms and left Buchberger

// Head reduction: repeats h -= (lc(h)/lc(x^{a-b} g)) x^{a-b} g while some
// leading monomial of G divides the leading monomial of h.
inline PBWVector leftNF(const PBWVector& f, const std::vector<PBWVector>& G,
                        const ModuleOrder& morder) {
    PBWVector h = f;
    while (!h.isZero()) {
        auto lead = h.leading(morder);
        bool reduced = false;
        for (const auto& g : G) {
            if (g.isZero()) continue;
            auto gl = g.leading(morder);
            if (gl.pos != lead.pos || !gl.exp.divides(lead.exp)) continue;
            Exponent shift = lead.exp.minus(gl.exp);
            PBWElement mono = PBWElement::monomial(h.algebra(), shift, 1);
            PBWVector w = mono * g;
            auto wl = w.leading(morder);
            h = h - (lead.coeff / wl.coeff) * w;
            reduced = true;
            break;
        }
        if (!reduced) break;
    }
    return h;
}

// Total normal form: no term of the result is divisible by any leading
// monomial of G.
inline PBWVector leftNFTotal(const PBWVector& f, const std::vector<PBWVector>& G,
                             const ModuleOrder& morder) {
    PBWVector h = f;
    PBWVector r(f.algebra(), f.rank());
    while (!h.isZero()) {
        auto lead = h.leading(morder);
        bool reduced = false;
        for (const auto& g : G) {
            if (g.isZero()) continue;
            auto gl = g.leading(morder);
            if (gl.pos != lead.pos || !gl.exp.divides(lead.exp)) continue;
            Exponent shift = lead.exp.minus(gl.exp);
            PBWElement mono = PBWElement::monomial(h.algebra(), shift, 1);
            PBWVector w = mono * g;
            auto wl = w.leading(morder);
            h = h - (lead.coeff / wl.coeff) * w;
            reduced = true;
            break;
        }
        if (!reduced) {
            PBWVector lt = PBWVector::unit(
                h.algebra(), h.rank(), lead.pos,
                PBWElement::monomial(h.algebra(), lead.exp, lead.coeff));
            r = r + lt;
            h = h - lt;
        }
    }
    return r;
}

namespace detail {

inline PBWVector primitiveVector(const PBWVector& v) {
    mpz_class num = 0, den = 1;
    for (std::size_t i = 0; i < v.rank(); ++i)
        for (const auto& t : v[i].terms()) {
            num = gcd(num, t.coeff.get_num());
            den = lcm(den, t.coeff.get_den());
        }
    if (num == 0) return v;
    Rational scale(den, num);
    scale.canonicalize();
    return scale * v;
}

}  // namespace detail

// Left Buchberger for submodules of A^r. Pairs are formed only between
// vectors with the same leading position; selection is by smallest lcm in the
// module order. The chain criterion is applied always, the product criterion
// only for ideals of a commutative algebra.
inline std::vector<PBWVector> leftBuchberger(std::vector<PBWVector> gens,
                                             const ModuleOrder& morder,
                                             const GBLimits& limits = {}) {
    std::vector<PBWVector> G;
    for (auto& g : gens)
        if (!g.isZero()) G.push_back(detail::primitiveVector(g));
    if (G.empty()) return G;
    const PBWAlgebraPtr alg = G.front().algebra();
    const bool commutativeIdeal = alg->isCommutative() && G.front().rank() == 1;

    struct Pair {
        std::size_t i, j;
        std::size_t pos;
        Exponent lcm;
    };
    auto makePair = [&](std::size_t i, std::size_t j) -> std::optional<Pair> {
        auto li = G[i].leading(morder);
        auto lj = G[j].leading(morder);
        if (li.pos != lj.pos) return std::nullopt;
        return Pair{i, j, li.pos, Exponent::lcm(li.exp, lj.exp)};
    };

    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> pendingSet;
    auto pushPairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i)
            if (auto p = makePair(i, j)) {
                pending.push_back(*p);
                pendingSet.emplace(i, j);
            }
    };
    for (std::size_t j = 1; j < G.size(); ++j) pushPairs(j);

    auto pairPending = [&](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        return pendingSet.count({a, b}) != 0;
    };

    const MonomialOrder& ord = morder.base();
    std::size_t processed = 0;
    while (!pending.empty()) {
        if (++processed > limits.pairCap)
            throw ResourceLimitError("pair cap of " + std::to_string(limits.pairCap) +
                                     " exceeded in left Buchberger");
        // normal strategy: smallest lcm first
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k) {
            int c = ord.compare(pending[k].lcm, pending[best].lcm);
            if (c < 0 || (c == 0 && (pending[k].i + pending[k].j <
                                     pending[best].i + pending[best].j)))
                best = k;
        }
        Pair p = pending[best];
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
        pendingSet.erase({p.i, p.j});

        auto li = G[p.i].leading(morder);
        auto lj = G[p.j].leading(morder);
        if (commutativeIdeal && li.exp.disjointSupport(lj.exp)) continue;  // product criterion
        bool chained = false;
        for (std::size_t k = 0; k < G.size() && !chained; ++k) {
            if (k == p.i || k == p.j) continue;
            auto lk = G[k].leading(morder);
            if (lk.pos != p.pos || !lk.exp.divides(p.lcm)) continue;
            if (!pairPending(p.i, k) && !pairPending(p.j, k)) chained = true;
        }
        if (chained) continue;

        PBWElement mi = PBWElement::monomial(alg, p.lcm.minus(li.exp), 1);
        PBWElement mj = PBWElement::monomial(alg, p.lcm.minus(lj.exp), 1);
        PBWVector u = mi * G[p.i];
        PBWVector v = mj * G[p.j];
        auto lu = u.leading(morder);
        auto lv = v.leading(morder);
        PBWVector s = (Rational(1) / lu.coeff) * u - (Rational(1) / lv.coeff) * v;
        PBWVector r = leftNF(s, G, morder);
        if (!r.isZero()) {
            G.push_back(detail::primitiveVector(r));
            pushPairs(G.size() - 1);
        }
    }
    return G;
}

// Minimal, tail-interreduced, monic, deterministically sorted.
inline std::vector<PBWVector> reduceBasis(std::vector<PBWVector> G, const ModuleOrder& morder) {
    std::vector<PBWVector> kept;
    // minimality: drop g when another survivor's lead divides its lead
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (G[i].isZero()) continue;
        auto li = G[i].leading(morder);
        bool dominated = false;
        for (std::size_t j = 0; j < G.size() && !dominated; ++j) {
            if (i == j || G[j].isZero()) continue;
            auto lj = G[j].leading(morder);
            if (lj.pos != li.pos || !lj.exp.divides(li.exp)) continue;
            if (!(li.exp == lj.exp)) { dominated = true; break; }
            // equal leads: keep the earlier index
            if (j < i) dominated = true;
        }
        if (!dominated) kept.push_back(G[i]);
    }
    // interreduce tails
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            std::vector<PBWVector> others;
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            PBWVector r = leftNFTotal(kept[i], others, morder);
            if (!(r == kept[i])) {
                changed = true;
                if (r.isZero()) {
                    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
                    --i;
                } else {
                    kept[i] = detail::primitiveVector(r);
                }
            }
        }
    }
    for (auto& g : kept) {
        auto l = g.leading(morder);
        g = (Rational(1) / l.coeff) * g;
    }
    std::sort(kept.begin(), kept.end(), [&](const PBWVector& a, const PBWVector& b) {
        auto la = a.leading(morder);
        auto lb = b.leading(morder);
        return morder.compare(la.pos, la.exp, lb.pos, lb.exp) < 0;
    });
    return kept;
}

inline const std::vector<PBWVector>& LeftSubmodule::reducedGB(const ModuleOrder& morder) const {
    std::lock_guard<std::mutex> lock(data_->mutex);
    auto it = data_->gbCache.find(morder.name());
    if (it == data_->gbCache.end()) {
        auto gb = std::make_shared<std::vector<PBWVector>>(
            reduceBasis(leftBuchberger(data_->gens, morder), morder));
        it = data_->gbCache.emplace(morder.name(), std::move(gb)).first;
    }
    return *it->second;
}

inline ModuleOrder algebraModuleOrder(const PBWAlgebraPtr& alg) {
    return ModuleOrder(alg->order());
}

inline bool moduleContains(const LeftSubmodule& M, const PBWVector& v) {
    ModuleOrder morder = algebraModuleOrder(M.algebra());
    return leftNFTotal(v, M.reducedGB(morder), morder).isZero();
}

inline bool moduleContains(const LeftSubmodule& M, const LeftSubmodule& N) {
    for (const auto& g : N.generators())
        if (!moduleContains(M, g)) return false;
    return true;
}

inline bool moduleEquals(const LeftSubmodule& M, const LeftSubmodule& N) {
    if (M.rank() != N.rank()) return false;
    ModuleOrder morder = algebraModuleOrder(M.algebra());
    const auto& a = M.reducedGB(morder);
    const auto& b = N.reducedGB(morder);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

inline LeftSubmodule moduleSum(const LeftSubmodule& M, const LeftSubmodule& N) {
    if (M.rank() != N.rank()) throw DimensionError("module sum: rank mismatch");
    std::vector<PBWVector> gens = M.generators();
    for (const auto& g : N.generators()) gens.push_back(g);
    return LeftSubmodule(M.algebra(), M.rank(), std::move(gens));
}

// Intersection via the doubled-rank construction: U is generated by (m|m) for
// m in M and (0|n) for n in N; elements of U whose dominant copy vanishes have
// their data copy in M cap N.
inline LeftSubmodule moduleIntersect(const LeftSubmodule& M, const LeftSubmodule& N,
                                     const GBLimits& limits = {}) {
    if (M.rank() != N.rank()) throw DimensionError("module intersect: rank mismatch");
    const std::size_t r = M.rank();
    const PBWAlgebraPtr alg = M.algebra();
    std::vector<PBWVector> gens;
    for (const auto& m : M.generators()) {
        PBWVector v(alg, 2 * r);
        for (std::size_t i = 0; i < r; ++i) {
            v[i] = m[i];
            v[r + i] = m[i];
        }
        gens.push_back(std::move(v));
    }
    for (const auto& n : N.generators()) {
        PBWVector v(alg, 2 * r);
        for (std::size_t i = 0; i < r; ++i) v[r + i] = n[i];
        gens.push_back(std::move(v));
    }
    ModuleOrder morder = algebraModuleOrder(alg);
    auto gb = reduceBasis(leftBuchberger(gens, morder, limits), morder);
    std::vector<PBWVector> out;
    for (const auto& g : gb) {
        bool upperZero = true;
        for (std::size_t i = 0; i < r && upperZero; ++i)
            if (!g[r + i].isZero()) upperZero = false;
        if (!upperZero) continue;
        PBWVector v(alg, r);
        for (std::size_t i = 0; i < r; ++i) v[i] = g[i];
        if (!v.isZero()) out.push_back(std::move(v));
    }
    return LeftSubmodule(alg, r, std::move(out));
}

// ---------------------------------------------------------------------------
// Elimination orderings and subalgebra intersection

// Search for an admissible elimination ordering: weighted degree with weight
// >= 1 on dropped variables and 0 on kept ones, degrevlex tiebreak, weights
// enumerated up to the bound. Every relation tail must stay below its product
// monomial under the candidate.
inline std::optional<MonomialOrder> findEliminationOrder(const PBWAlgebra& alg,
                                                         const std::vector<bool>& dropped,
                                                         int64_t weightBound = 4) {
    const std::size_t n = alg.nvars();
    std::vector<std::size_t> dropIdx;
    for (std::size_t i = 0; i < n; ++i)
        if (dropped[i]) dropIdx.push_back(i);

    auto admissible = [&](const MonomialOrder& cand) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto& d = alg.relD(i, j);
                if (d.empty()) continue;
                Exponent prod = Exponent::unit(n, i).plus(Exponent::unit(n, j));
                for (const auto& t : d)
                    if (cand.compare(t.exp, prod) >= 0) return false;
            }
        return true;
    };

    std::vector<int64_t> w(n, 0);
    for (std::size_t k : dropIdx) w[k] = 1;
    MonomialOrder cand = MonomialOrder::weighted(w, MonomialOrder::degrevlex());
    if (admissible(cand)) return cand;

    if (dropIdx.empty()) return std::nullopt;
    std::vector<int64_t> ws(dropIdx.size(), 1);
    while (true) {
        // next weight vector in {1..bound}^k
        std::size_t pos = 0;
        while (pos < ws.size() && ws[pos] == weightBound) ws[pos++] = 1;
        if (pos == ws.size()) break;
        ++ws[pos];
        for (std::size_t k = 0; k < dropIdx.size(); ++k) w[dropIdx[k]] = ws[k];
        MonomialOrder c2 = MonomialOrder::weighted(w, MonomialOrder::degrevlex());
        if (admissible(c2)) return c2;
    }
    return std::nullopt;
}

// Generators of I cap K[keepVars] for a left ideal I, where the kept
// variables pairwise commute trivially. Throws NoPreimageOrderingError when
// no admissible elimination ordering exists within the weight bound.
inline std::vector<Polynomial> subalgebraIntersect(const LeftSubmodule& I,
                                                   const std::vector<std::size_t>& keepVars,
                                                   const PolyRingPtr& resultRing,
                                                   int64_t weightBound = 4,
                                                   const GBLimits& limits = {}) {
    if (I.rank() != 1) throw DimensionError("subalgebraIntersect needs a left ideal");
    const PBWAlgebraPtr alg = I.algebra();
    const std::size_t n = alg->nvars();
    std::vector<bool> keep(n, false);
    for (std::size_t k : keepVars) keep.at(k) = true;
    for (std::size_t a : keepVars)
        for (std::size_t b : keepVars)
            if (a < b && !alg->trivialPair(a, b))
                throw std::invalid_argument("kept variables do not commute trivially");
    std::vector<bool> dropped(n);
    for (std::size_t i = 0; i < n; ++i) dropped[i] = !keep[i];

    auto elim = findEliminationOrder(*alg, dropped, weightBound);
    if (!elim)
        throw NoPreimageOrderingError("no admissible elimination ordering within weight bound " +
                                      std::to_string(weightBound));
    PBWAlgebraPtr elimAlg = alg->withOrder(*elim);
    std::vector<PBWVector> gens;
    for (const auto& g : I.generators())
        gens.push_back(PBWVector::single(PBWElement::fromTerms(elimAlg, g[0].terms())));
    ModuleOrder morder = algebraModuleOrder(elimAlg);
    auto gb = reduceBasis(leftBuchberger(gens, morder, limits), morder);

    std::vector<Polynomial> out;
    for (const auto& g : gb) {
        bool inSub = true;
        for (const auto& t : g[0].terms())
            for (std::size_t i = 0; i < n && inSub; ++i)
                if (t.exp[i] > 0 && dropped[i]) inSub = false;
        if (inSub) out.push_back(PBWElement::fromTerms(alg, g[0].terms()).toPolynomial(resultRing));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Presets from the standard operator-algebra family

namespace presets {

// Commutative polynomial ring viewed as a G-algebra.
inline PBWAlgebraPtr polynomialAlgebra(std::vector<std::string> vars, MonomialOrder order) {
    return PBWAlgebra::make(std::move(vars), std::move(order), {});
}

namespace detail {

// Layout: [params | base vars | operator vars]. Params are central; the
// operator for base variable k sits at offset n behind it.
inline PBWAlgebraPtr operatorAlgebra(const std::vector<std::string>& xs,
                                     const std::vector<std::string>& params,
                                     const std::vector<std::string>& ops,
                                     const std::function<std::vector<Term>(std::size_t, std::size_t,
                                                                           std::size_t)>& tail,
                                     const Rational& scalar,
                                     std::optional<MonomialOrder> order = std::nullopt) {
    const std::size_t p = params.size(), n = xs.size();
    std::vector<std::string> vars = params;
    vars.insert(vars.end(), xs.begin(), xs.end());
    vars.insert(vars.end(), ops.begin(), ops.end());
    MonomialOrder ord = order ? *order
                        : (p ? MonomialOrder::antiblock(MonomialOrder::degrevlex(),
                                                        MonomialOrder::degrevlex(), p)
                             : MonomialOrder::degrevlex());
    std::vector<RelationInput> rels;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t xi = p + k, oi = p + n + k;
        rels.push_back({xi, oi, scalar, tail(vars.size(), xi, oi)});
    }
    return PBWAlgebra::make(std::move(vars), std::move(ord), rels);
}

}  // namespace detail

// Weyl algebra A_n, optionally tensored with central parameters:
// d_k x_k = x_k d_k + 1.
inline PBWAlgebraPtr weyl(const std::vector<std::string>& xs,
                          const std::vector<std::string>& params = {},
                          std::optional<MonomialOrder> order = std::nullopt) {
    std::vector<std::string> ops;
    for (const auto& x : xs) ops.push_back("d" + x);
    return detail::operatorAlgebra(
        xs, params, ops,
        [](std::size_t nv, std::size_t, std::size_t) -> std::vector<Term> {
            return {{Exponent::zero(nv), Rational(1)}};
        },
        Rational(1), order);
}

// Shift algebra: s_k x_k = x_k s_k + s_k.
inline PBWAlgebraPtr shift(const std::vector<std::string>& xs,
                           const std::vector<std::string>& params = {},
                           std::optional<MonomialOrder> order = std::nullopt) {
    std::vector<std::string> ops;
    for (const auto& x : xs) ops.push_back("s" + x);
    return detail::operatorAlgebra(
        xs, params, ops,
        [](std::size_t nv, std::size_t, std::size_t oi) -> std::vector<Term> {
            return {{Exponent::unit(nv, oi), Rational(1)}};
        },
        Rational(1), order);
}

// q-Weyl algebra: d_k x_k = q x_k d_k + 1.
inline PBWAlgebraPtr qWeyl(const std::vector<std::string>& xs, const Rational& q,
                           const std::vector<std::string>& params = {},
                           std::optional<MonomialOrder> order = std::nullopt) {
    std::vector<std::string> ops;
    for (const auto& x : xs) ops.push_back("d" + x);
    return detail::operatorAlgebra(
        xs, params, ops,
        [](std::size_t nv, std::size_t, std::size_t) -> std::vector<Term> {
            return {{Exponent::zero(nv), Rational(1)}};
        },
        q, order);
}

// q-shift algebra: s_k x_k = q x_k s_k.
inline PBWAlgebraPtr qShift(const std::vector<std::string>& xs, const Rational& q,
                            const std::vector<std::string>& params = {},
                            std::optional<MonomialOrder> order = std::nullopt) {
    std::vector<std::string> ops;
    for (const auto& x : xs) ops.push_back("s" + x);
    return detail::operatorAlgebra(
        xs, params, ops,
        [](std::size_t, std::size_t, std::size_t) -> std::vector<Term> { return {}; }, q,
        order);
}

// Integration algebra: i_k x_k = x_k i_k + i_k^2. Needs an order with the
// square below x*i, e.g. weights 2 on x and 1 on i.
inline PBWAlgebraPtr integration(const std::vector<std::string>& xs,
                                 const std::vector<std::string>& params = {}) {
    const std::size_t p = params.size(), n = xs.size();
    std::vector<int64_t> w(p + 2 * n, 1);
    for (std::size_t k = 0; k < n; ++k) w[p + k] = 2;
    MonomialOrder ord = MonomialOrder::weighted(w, MonomialOrder::degrevlex());
    std::vector<std::string> ops;
    for (const auto& x : xs) ops.push_back("i" + x);
    return detail::operatorAlgebra(
        xs, params, ops,
        [](std::size_t nv, std::size_t, std::size_t oi) -> std::vector<Term> {
            return {{Exponent::unit(nv, oi, 2), Rational(1)}};
        },
        Rational(1), ord);
}

}  // namespace presets

}  // namespace orelocal
