#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "adic/series.hpp"

namespace adic {

/**
 * Parser for series literals such as "1 + 3*T + p^2*T^2", "p*S - T^3",
 * "T^-1" or "1/2*T". The symbol p stands for the pseudouniformizer of the
 * base field; exponents are integers or parenthesized rationals (p^(1/2)
 * yields a formal pi power). Variables must come from the given list.
 */
class SeriesParser {
public:
    SeriesParser(BaseField field, std::vector<std::string> vars, std::string text)
        : field_(std::move(field)), vars_(std::move(vars)), text_(std::move(text)) {}

    SeriesElement parse() {
        SeriesElement r = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw PreconditionError("series literal: trailing characters at '" +
                                    text_.substr(pos_) + "'");
        return r;
    }

private:
    SeriesElement parse_expr() {
        skip_ws();
        bool neg = consume('-');
        SeriesElement acc = parse_term();
        if (neg) acc = se_neg(acc);
        while (true) {
            skip_ws();
            if (consume('+')) acc = se_add(acc, parse_term());
            else if (consume('-')) acc = se_sub(acc, parse_term());
            else break;
        }
        return acc;
    }

    SeriesElement parse_term() {
        SeriesElement acc = parse_factor();
        while (true) {
            skip_ws();
            if (consume('*')) acc = se_mul(acc, parse_factor());
            else break;
        }
        return acc;
    }

    SeriesElement parse_factor() {
        skip_ws();
        if (pos_ >= text_.size())
            throw PreconditionError("series literal: unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational num = read_number();
            return SeriesElement::constant(field_, vars_, FieldElement(num));
        }
        if (c == '(') {
            ++pos_;
            SeriesElement inner = parse_expr();
            skip_ws();
            if (!consume(')'))
                throw PreconditionError("series literal: missing closing parenthesis");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = read_ident();
            if (name == "p") {
                Rational e(1);
                if (peek('^')) e = read_exponent();
                if (is_integer(e)) {
                    Rational v = rat_pow(Rational(field_.prime), static_cast<long>(rat_floor(e)));
                    return SeriesElement::constant(field_, vars_, FieldElement(v));
                }
                return SeriesElement::constant(field_, vars_, FieldElement::pi_power(e));
            }
            int vi = -1;
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) vi = static_cast<int>(i);
            if (vi < 0)
                throw PreconditionError("series literal: unknown variable '" + name + "'");
            Rational e(1);
            if (peek('^')) e = read_exponent();
            if (!is_integer(e))
                throw PreconditionError("series literal: malformed exponent on variable '" + name +
                                        "' (integers required)");
            ExpKey key{0, 0};
            key[static_cast<std::size_t>(vi)] = static_cast<int>(rat_floor(e));
            return SeriesElement::monomial(field_, vars_, key, FieldElement(1));
        }
        throw PreconditionError(std::string("series literal: unexpected character '") + c + "'");
    }

    Rational read_exponent() {
        ++pos_; // consume '^'
        skip_ws();
        if (consume('(')) {
            std::size_t start = pos_;
            int depth = 1;
            while (pos_ < text_.size() && depth > 0) {
                if (text_[pos_] == '(') ++depth;
                if (text_[pos_] == ')') --depth;
                ++pos_;
            }
            if (depth != 0) throw PreconditionError("series literal: malformed exponent group");
            return parse_rational(text_.substr(start, pos_ - 1 - start));
        }
        bool neg = consume('-');
        Rational n = read_number();
        return neg ? -n : n;
    }

    Rational read_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw PreconditionError("series literal: expected a number");
        Integer num(text_.substr(start, pos_ - start));
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (dstart == pos_) throw PreconditionError("series literal: expected a denominator");
            Integer den(text_.substr(dstart, pos_ - dstart));
            if (den == 0) throw PreconditionError("series literal: zero denominator");
            return make_rational(num, den);
        }
        return Rational(num);
    }

    std::string read_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    BaseField field_;
    std::vector<std::string> vars_;
    std::string text_;
    std::size_t pos_ = 0;
};

inline SeriesElement parse_series(const BaseField& field, std::vector<std::string> vars,
                                  const std::string& text) {
    return SeriesParser(field, std::move(vars), text).parse();
}

} // namespace adic
