#pragma once

#include <cctype>
#include <string>

#include "orelocal/polynomial.hpp"

namespace orelocal {

// Recursive-descent parser for the polynomial grammar:
//
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' nat]
//   atom   := '(' expr ')' | variable | literal
//   literal:= nat ['/' nat]           (the only place '/' may appear)
//
// Multiplication is always explicit; juxtaposition is a syntax error.
class PolyParser {
  public:
    PolyParser(PolyRingPtr ring, std::string text)
        : ring_(std::move(ring)), text_(std::move(text)) {}

    Polynomial parse() {
        Polynomial p = parseExpr();
        skipWs();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

  private:
    Polynomial parseExpr() {
        skipWs();
        bool neg = false;
        if (peek() == '-') { ++pos_; neg = true; }
        else if (peek() == '+') { ++pos_; }
        Polynomial p = parseTerm();
        if (neg) p = -p;
        while (true) {
            skipWs();
            char c = peek();
            if (c == '+') { ++pos_; p = p + parseTerm(); }
            else if (c == '-') { ++pos_; p = p - parseTerm(); }
            else break;
        }
        return p;
    }

    Polynomial parseTerm() {
        Polynomial p = parseFactor();
        while (true) {
            skipWs();
            if (peek() == '*') { ++pos_; p = p * parseFactor(); }
            else if (peek() == '/') fail("division is not allowed outside rational literals");
            else break;
        }
        return p;
    }

    Polynomial parseFactor() {
        Polynomial base = parseAtom();
        skipWs();
        if (peek() == '^') {
            ++pos_;
            skipWs();
            long e = parseNat();
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial parseAtom() {
        skipWs();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial p = parseExpr();
            skipWs();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (c == '-') {  // unary minus inside a factor position, e.g. 2*-3 is rejected
            fail("unexpected '-'");
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string lit = scanDigits();
            skipWs();
            if (peek() == '/') {
                ++pos_;
                skipWs();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    fail("expected integer after '/'");
                lit += "/" + scanDigits();
            }
            return Polynomial::constant(ring_, parseRational(lit));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                name += text_[pos_++];
            auto idx = ring_->varIndex(name);
            if (!idx) fail("unknown variable '" + name + "'");
            return Polynomial::variable(ring_, *idx);
        }
        fail(c ? std::string("unexpected character '") + c + "'" : "unexpected end of input");
        return {};
    }

    long parseNat() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer exponent");
        std::string d = scanDigits();
        if (d.size() > 6) fail("exponent too large");
        return std::stol(d);
    }

    std::string scanDigits() {
        std::string d;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            d += text_[pos_++];
        return d;
    }

    void skipWs() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("parse error at position " + std::to_string(pos_) + ": " + msg +
                         " in \"" + text_ + "\"");
    }

    PolyRingPtr ring_;
    std::string text_;
    std::size_t pos_ = 0;
};

inline Polynomial parsePolynomial(const PolyRingPtr& ring, const std::string& text) {
    return PolyParser(ring, text).parse();
}

}  // namespace orelocal
