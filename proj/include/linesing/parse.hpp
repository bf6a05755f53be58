#ifndef LINESING_PARSE_HPP
#define LINESING_PARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "linesing/multipoly.hpp"
#include "linesing/order.hpp"

namespace linesing {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Recursive-descent parser for the polynomial grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' natural)?
///   base   := rational | variable | '(' expr ')'
/// Implicit multiplication is a syntax error; rationals are 'a' or 'a/b'.
class PolyParser {
  public:
    PolyParser(std::string src, RingPtr ring) : src_(std::move(src)), ring_(std::move(ring)) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
        return p;
    }

  private:
    MultiPoly expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        MultiPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * factor();
            } else {
                char c = peek();
                // catch "2x" and "x y" style implicit products early with a
                // pointed message
                if (std::isalnum(static_cast<unsigned char>(c)) || c == '(')
                    throw ParseError("implicit multiplication is not allowed; insert '*'", pos_);
                return acc;
            }
        }
    }

    MultiPoly factor() {
        MultiPoly base_val = base();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError("expected exponent", pos_);
            unsigned long e = std::stoul(src_.substr(start, pos_ - start));
            return base_val.pow(static_cast<unsigned>(e));
        }
        return base_val;
    }

    MultiPoly base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
        if (c == '\0') throw ParseError("unexpected end of input", pos_);
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    MultiPoly rational() {
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string num = src_.substr(start, pos_ - start);
        size_t save = pos_;
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            size_t dstart = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (dstart == pos_) throw ParseError("expected denominator", pos_);
            std::string den = src_.substr(dstart, pos_ - dstart);
            if (Int(den) == 0) throw ParseError("zero denominator", dstart);
            return MultiPoly::constant(ring_, rat_from_string(num + "/" + den));
        }
        pos_ = save;
        return MultiPoly::constant(ring_, rat_from_string(num));
    }

    MultiPoly variable() {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string name = src_.substr(start, pos_ - start);
        auto idx = ring_->index_of(name);
        if (!idx) throw ParseError("unknown variable '" + name + "'", start);
        return MultiPoly::variable(ring_, *idx);
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    std::string src_;
    RingPtr ring_;
    size_t pos_ = 0;
};

inline MultiPoly parse_poly(const std::string& src, RingPtr ring) {
    return PolyParser(src, std::move(ring)).parse();
}

/// Canonical text form: terms descending in the given order, coefficients as
/// 'a' or 'a/b', explicit '*', '^' only for exponents above 1. Round-trips
/// through parse_poly.
inline std::string to_string(const MultiPoly& f, const MonomialOrder& order) {
    if (f.is_zero()) return "0";
    std::vector<Term> ts(f.terms().begin(), f.terms().end());
    std::sort(ts.begin(), ts.end(),
              [&](const Term& a, const Term& b) { return order.cmp(a.m, b.m) > 0; });
    const Ring& R = *f.ring();
    std::string out;
    for (const auto& t : ts) {
        bool neg = t.c < 0;
        Rat mag = neg ? Rat(-t.c) : t.c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? "-" : "+";
        std::string mono;
        for (size_t i = 0; i < R.arity(); ++i) {
            if (t.m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += R.name(i);
            if (t.m[i] > 1) mono += "^" + std::to_string(t.m[i]);
        }
        if (mono.empty()) {
            out += rat_to_string(mag);
        } else {
            if (mag != 1) out += rat_to_string(mag) + "*";
            out += mono;
        }
    }
    return out;
}

inline std::string to_string(const MultiPoly& f) {
    if (f.is_zero()) return "0";
    return to_string(f, orders::global_degrevlex(f.ring()));
}

}  // namespace linesing

#endif
