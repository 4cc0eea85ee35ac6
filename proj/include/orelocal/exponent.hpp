#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace orelocal {

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent vector of a monomial, fixed length = number of ring variables.
// Total degree is cached at construction; values are immutable afterwards.
class Exponent {
  public:
    Exponent() = default;

    explicit Exponent(std::vector<int32_t> entries) : entries_(std::move(entries)) {
        for (int32_t e : entries_) {
            if (e < 0) throw std::invalid_argument("negative exponent entry");
            degree_ += e;
        }
    }

    static Exponent zero(std::size_t n) { return Exponent(std::vector<int32_t>(n, 0)); }

    static Exponent unit(std::size_t n, std::size_t i, int32_t k = 1) {
        std::vector<int32_t> v(n, 0);
        v.at(i) = k;
        return Exponent(std::move(v));
    }

    std::size_t size() const { return entries_.size(); }
    int32_t operator[](std::size_t i) const { return entries_[i]; }
    int64_t degree() const { return degree_; }
    bool isZero() const { return degree_ == 0; }
    std::span<const int32_t> span() const { return entries_; }

    Exponent plus(const Exponent& o) const {
        checkSize(o);
        std::vector<int32_t> v(entries_);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.entries_[i];
        return Exponent(std::move(v));
    }

    // Componentwise difference; caller guarantees divisibility.
    Exponent minus(const Exponent& o) const {
        checkSize(o);
        std::vector<int32_t> v(entries_);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] -= o.entries_[i];
            if (v[i] < 0) throw std::invalid_argument("exponent difference below zero");
        }
        return Exponent(std::move(v));
    }

    // True when x^this divides x^o.
    bool divides(const Exponent& o) const {
        checkSize(o);
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] > o.entries_[i]) return false;
        return true;
    }

    static Exponent lcm(const Exponent& a, const Exponent& b) {
        a.checkSize(b);
        std::vector<int32_t> v(a.entries_);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (b.entries_[i] > v[i]) v[i] = b.entries_[i];
        return Exponent(std::move(v));
    }

    // Index of the largest/smallest variable appearing; size() when empty.
    std::size_t maxSupport() const {
        for (std::size_t i = entries_.size(); i-- > 0;)
            if (entries_[i] > 0) return i;
        return entries_.size();
    }
    std::size_t minSupport() const {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] > 0) return i;
        return entries_.size();
    }

    bool disjointSupport(const Exponent& o) const {
        checkSize(o);
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] > 0 && o.entries_[i] > 0) return false;
        return true;
    }

    friend bool operator==(const Exponent& a, const Exponent& b) {
        return a.entries_ == b.entries_;
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (int32_t e : entries_) {
            h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }

  private:
    void checkSize(const Exponent& o) const {
        if (entries_.size() != o.entries_.size())
            throw DimensionError("exponent length mismatch");
    }

    std::vector<int32_t> entries_;
    int64_t degree_ = 0;
};

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const { return e.hash(); }
};

struct ExponentPairHash {
    std::size_t operator()(const std::pair<Exponent, Exponent>& p) const {
        return p.first.hash() * 31 + p.second.hash();
    }
};

}  // namespace orelocal
