#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace orelocal {

// Exact rational scalar. mpq_class keeps values canonical: gcd-reduced,
// positive denominator, zero stored as 0/1.
using Rational = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool isZero(const Rational& q) { return sgn(q) == 0; }
inline bool isOne(const Rational& q) { return q == 1; }

inline Rational rationalFromLong(long n) { return Rational(n); }

// Accepts "n" or "n/d" with optional leading sign; d must be positive.
inline Rational parseRational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw ParseError("bad rational literal: '" + text + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string toString(const Rational& q) { return q.get_str(); }

}  // namespace orelocal
