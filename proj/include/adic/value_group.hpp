#pragma once

#include <string>
#include <vector>

#include "adic/rational.hpp"

namespace adic {

/// Largest supported rank of a value group. Rank 2 hosts the
/// infinitesimal radii; rank 4 covers the affinoid-field enumeration.
inline constexpr int kMaxValueGroupRank = 4;

enum class Ordering { LT, EQ, GT };

/**
 * Element of a totally ordered abelian group Gamma union {0}.
 *
 * A non-zero element of rank n is stored as a vector of n exact rational
 * exponents ("logvec"); it stands for the multiplicative value
 * prod_i gamma_i^{logvec_i} with fixed generators gamma_i in the (0,1)
 * scale. Comparison is lexicographic on the logvec, more negative means
 * smaller. The base pseudouniformizer is normalized to logvec (-1, 0, ...).
 * Zero is a distinguished absorbing element below every non-zero value.
 */
class ValueGroupElement {
public:
    static ValueGroupElement zero() { return ValueGroupElement(); }

    static ValueGroupElement identity(int rank) {
        return from_logvec(std::vector<Rational>(check_rank(rank), Rational(0)));
    }

    static ValueGroupElement from_logvec(std::vector<Rational> logvec) {
        check_rank(static_cast<int>(logvec.size()));
        ValueGroupElement e;
        e.zero_ = false;
        e.logvec_ = std::move(logvec);
        return e;
    }

    bool is_zero() const { return zero_; }

    bool is_identity() const {
        if (zero_) return false;
        for (const auto& c : logvec_)
            if (c != 0) return false;
        return true;
    }

    int rank() const {
        if (zero_) throw PreconditionError("Zero has no rank");
        return static_cast<int>(logvec_.size());
    }

    const std::vector<Rational>& logvec() const {
        if (zero_) throw PreconditionError("Zero has no logvec");
        return logvec_;
    }

    /// Pad with trailing zero exponents; realizes the order-preserving
    /// embedding r -> (r, 1, ...) into a higher-rank group.
    ValueGroupElement embedded(int rank) const {
        if (zero_) return *this;
        if (rank < static_cast<int>(logvec_.size()))
            throw PreconditionError("embedded: target rank below current rank");
        std::vector<Rational> v = logvec_;
        v.resize(static_cast<std::size_t>(check_rank(rank)), Rational(0));
        return from_logvec(std::move(v));
    }

    bool operator==(const ValueGroupElement& o) const {
        return zero_ == o.zero_ && logvec_ == o.logvec_;
    }

private:
    ValueGroupElement() = default;

    static int check_rank(int rank) {
        if (rank < 1 || rank > kMaxValueGroupRank)
            throw PreconditionError("value group rank must be between 1 and " +
                                    std::to_string(kMaxValueGroupRank));
        return rank;
    }

    bool zero_ = true;
    std::vector<Rational> logvec_;
};

/// Group law: componentwise logvec sum; Zero is absorbing.
inline ValueGroupElement vg_mul(const ValueGroupElement& a, const ValueGroupElement& b) {
    if (a.is_zero() || b.is_zero()) return ValueGroupElement::zero();
    if (a.rank() != b.rank())
        throw PreconditionError("vg_mul: rank mismatch between two non-Zero elements (" +
                                std::to_string(a.rank()) + " vs " + std::to_string(b.rank()) + ")");
    std::vector<Rational> v = a.logvec();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.logvec()[i];
    return ValueGroupElement::from_logvec(std::move(v));
}

inline ValueGroupElement vg_inverse(const ValueGroupElement& a) {
    if (a.is_zero()) throw PreconditionError("vg_inverse: Zero has no inverse");
    std::vector<Rational> v = a.logvec();
    for (auto& c : v) c = -c;
    return ValueGroupElement::from_logvec(std::move(v));
}

/// a^n for integer n (n may be negative for non-Zero a; 0^n = 0 for n > 0).
inline ValueGroupElement vg_pow(const ValueGroupElement& a, long n) {
    if (a.is_zero()) {
        if (n <= 0) throw PreconditionError("vg_pow: Zero to a non-positive power");
        return a;
    }
    std::vector<Rational> v = a.logvec();
    for (auto& c : v) c *= n;
    return ValueGroupElement::from_logvec(std::move(v));
}

/// Lexicographic comparison; Zero sits below every non-Zero element.
inline Ordering vg_cmp(const ValueGroupElement& a, const ValueGroupElement& b) {
    if (a.is_zero() && b.is_zero()) return Ordering::EQ;
    if (a.is_zero()) return Ordering::LT;
    if (b.is_zero()) return Ordering::GT;
    if (a.rank() != b.rank())
        throw PreconditionError("vg_cmp: rank mismatch between two non-Zero elements (" +
                                std::to_string(a.rank()) + " vs " + std::to_string(b.rank()) + ")");
    for (std::size_t i = 0; i < a.logvec().size(); ++i) {
        if (a.logvec()[i] < b.logvec()[i]) return Ordering::LT;
        if (a.logvec()[i] > b.logvec()[i]) return Ordering::GT;
    }
    return Ordering::EQ;
}

inline bool vg_le(const ValueGroupElement& a, const ValueGroupElement& b) {
    return vg_cmp(a, b) != Ordering::GT;
}

inline bool vg_lt(const ValueGroupElement& a, const ValueGroupElement& b) {
    return vg_cmp(a, b) == Ordering::LT;
}

/// Compare after embedding both operands into the larger of the two ranks.
inline Ordering vg_cmp_embedded(const ValueGroupElement& a, const ValueGroupElement& b) {
    if (a.is_zero() || b.is_zero()) return vg_cmp(a, b);
    int rank = std::max(a.rank(), b.rank());
    return vg_cmp(a.embedded(rank), b.embedded(rank));
}

/**
 * Whether the powers of a descend below every group element. For a
 * lexicographic group this holds exactly when the leading exponent is
 * negative, i.e. logvec_1 < 0; the quantified definition is recovered
 * by power search in the tests.
 */
inline bool vg_is_cofinal(const ValueGroupElement& a) {
    if (a.is_zero()) throw PreconditionError("vg_is_cofinal: Zero input");
    return a.logvec()[0] < 0;
}

/**
 * Image in Gamma/Delta for the convex subgroup Delta of elements gamma
 * with neither gamma nor 1/gamma cofinal (= leading exponent zero).
 * Projects to the first coordinate, producing the rank-1 value that the
 * ring of powerbounded elements induces. Zero maps to Zero.
 */
inline ValueGroupElement vg_convex_quotient(const ValueGroupElement& a) {
    if (a.is_zero()) return a;
    return ValueGroupElement::from_logvec({a.logvec()[0]});
}

/// Render as "g^(a/b, c/d, ...)"; Zero renders as "0".
inline std::string to_string(const ValueGroupElement& a) {
    if (a.is_zero()) return "0";
    std::string s = "g^(";
    for (std::size_t i = 0; i < a.logvec().size(); ++i) {
        if (i) s += ",";
        s += to_string(a.logvec()[i]);
    }
    return s + ")";
}

} // namespace adic
