#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "adic/errors.hpp"

namespace adic {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// num/den with the sign normalized into the numerator (the underlying
/// rational type rejects negative denominators).
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw PreconditionError("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r = 1;
    Integer b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// r^e for integer e (negative exponents allowed, r != 0).
inline Rational rat_pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r == 0) {
        if (e > 0) return Rational(0);
        throw PreconditionError("rat_pow: zero base with negative exponent");
    }
    Integer num = int_pow(boost::multiprecision::numerator(r), static_cast<unsigned long>(e < 0 ? -e : e));
    Integer den = int_pow(boost::multiprecision::denominator(r), static_cast<unsigned long>(e < 0 ? -e : e));
    return e > 0 ? make_rational(num, den) : make_rational(den, num);
}

/// Multiplicity of the prime p in a nonzero integer.
inline long padic_val(Integer n, const Integer& p) {
    if (n == 0) throw PreconditionError("padic_val: zero argument");
    if (n < 0) n = -n;
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// v_p of a nonzero rational: multiplicity in the numerator minus the denominator.
inline Rational padic_val(const Rational& r, const Integer& p) {
    if (r == 0) throw PreconditionError("padic_val: zero argument");
    return Rational(padic_val(boost::multiprecision::numerator(r), p) -
                    padic_val(boost::multiprecision::denominator(r), p));
}

inline bool is_integer(const Rational& r) {
    return boost::multiprecision::denominator(r) == 1;
}

/// Floor of a rational as an Integer.
inline Integer rat_floor(const Rational& r) {
    Integer num = boost::multiprecision::numerator(r);
    Integer den = boost::multiprecision::denominator(r);
    Integer q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

inline std::string to_string(const Rational& r) {
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1)
        s += "/" + boost::multiprecision::denominator(r).str();
    return s;
}

/// Parse "a", "-a", "a/b" with optional surrounding whitespace.
inline Rational parse_rational(const std::string& text) {
    std::size_t i = 0, n = text.size();
    auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto read_int = [&]() -> Integer {
        bool neg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
        std::size_t start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw PreconditionError("parse_rational: malformed number '" + text + "'");
        Integer v(text.substr(start, i - start));
        return neg ? Integer(-v) : v;
    };
    skip_ws();
    Integer num = read_int();
    skip_ws();
    Integer den = 1;
    if (i < n && text[i] == '/') {
        ++i;
        skip_ws();
        den = read_int();
        skip_ws();
        if (den == 0) throw PreconditionError("parse_rational: zero denominator in '" + text + "'");
    }
    if (i != n) throw PreconditionError("parse_rational: trailing characters in '" + text + "'");
    return make_rational(num, den);
}

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace adic
