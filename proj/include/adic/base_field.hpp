#pragma once

#include <string>

#include "adic/value_group.hpp"

namespace adic {

/**
 * A desk-scale nonarchimedean base field: the dense subfield Q inside the
 * Q_p model for a configurable prime p, valued by v_p. Valuations land in
 * a lexicographic value group of rank ambient_rank, embedded on the first
 * axis with the normalization |p| = g^(-1).
 */
struct BaseField {
    long long prime;
    std::string label;
    int ambient_rank;
    /// Whether the residue field is algebraic over a finite field (true
    /// for the Q_p model); consumed by the affinoid-field point count.
    bool residue_algebraic_over_finite;

    explicit BaseField(long long p, std::string lbl = "Qp-model", int rank = 1,
                       bool residue_alg = true)
        : prime(p), label(std::move(lbl)), ambient_rank(rank),
          residue_algebraic_over_finite(residue_alg) {
        if (!is_prime(p))
            throw PreconditionError("BaseField: prime must be prime, got " + std::to_string(p));
        if (rank < 1 || rank > kMaxValueGroupRank)
            throw PreconditionError("BaseField: ambient rank out of range");
    }

    bool operator==(const BaseField& o) const {
        return prime == o.prime && ambient_rank == o.ambient_rank;
    }
};

/**
 * Exact scalar of the base field: either a rational number or a formal
 * pseudouniformizer power pi^q with rational exponent q (used for radii
 * and extension scalars, |pi^q| = p^{-q}). Formal powers with integer
 * exponent are not normalized to rationals here because the element does
 * not know its prime; series and field operations normalize on contact.
 */
class FieldElement {
public:
    FieldElement() : kind_(Kind::rational), value_(0) {}
    FieldElement(Rational v) : kind_(Kind::rational), value_(std::move(v)) {}
    FieldElement(long v) : kind_(Kind::rational), value_(v) {}
    FieldElement(int v) : kind_(Kind::rational), value_(v) {}

    static FieldElement pi_power(Rational q) {
        FieldElement e;
        e.kind_ = Kind::pi_power;
        e.pi_exp_ = std::move(q);
        return e;
    }

    bool is_rational() const { return kind_ == Kind::rational; }
    bool is_pi_power() const { return kind_ == Kind::pi_power; }
    bool is_zero() const { return kind_ == Kind::rational && value_ == 0; }

    const Rational& rational_value() const {
        if (!is_rational()) throw PreconditionError("FieldElement: formal pi power has no rational value");
        return value_;
    }

    const Rational& pi_exponent() const {
        if (!is_pi_power()) throw PreconditionError("FieldElement: not a pi power");
        return pi_exp_;
    }

    /// Exact rational value in the given field; resolves pi^q for integer q.
    Rational resolved(const BaseField& k) const {
        if (is_rational()) return value_;
        if (!is_integer(pi_exp_))
            throw PreconditionError("FieldElement: pi^" + adic::to_string(pi_exp_) +
                                    " has no rational value in the base field");
        return rat_pow(Rational(k.prime), static_cast<long>(rat_floor(pi_exp_)));
    }

    bool resolvable(const BaseField&) const {
        return is_rational() || is_integer(pi_exp_);
    }

private:
    enum class Kind { rational, pi_power };
    Kind kind_;
    Rational value_;
    Rational pi_exp_;
};

inline bool fe_equal(const BaseField& k, const FieldElement& a, const FieldElement& b) {
    if (a.resolvable(k) && b.resolvable(k)) return a.resolved(k) == b.resolved(k);
    if (a.is_pi_power() && b.is_pi_power()) return a.pi_exponent() == b.pi_exponent();
    return false;
}

/// v_p extended to formal pi powers; precondition: a != 0.
inline Rational fe_val(const BaseField& k, const FieldElement& a) {
    if (a.is_pi_power()) return a.pi_exponent();
    if (a.is_zero()) throw PreconditionError("fe_val: zero argument");
    return padic_val(a.rational_value(), Integer(k.prime));
}

/// |a| = p^{-v_p(a)} as logvec (-v_p(a), 0, ...); |0| = Zero.
inline ValueGroupElement fe_abs(const BaseField& k, const FieldElement& a) {
    if (a.is_zero()) return ValueGroupElement::zero();
    std::vector<Rational> v(static_cast<std::size_t>(k.ambient_rank), Rational(0));
    v[0] = -fe_val(k, a);
    return ValueGroupElement::from_logvec(std::move(v));
}

/// True iff |a| < 1 or a = 0; in the rank-1 case this is cofinality of |a|.
inline bool fe_is_topologically_nilpotent(const BaseField& k, const FieldElement& a) {
    if (a.is_zero()) return true;
    return vg_lt(fe_abs(k, a), ValueGroupElement::identity(k.ambient_rank));
}

/// True iff |a| <= 1.
inline bool fe_is_powerbounded(const BaseField& k, const FieldElement& a) {
    return vg_le(fe_abs(k, a), ValueGroupElement::identity(k.ambient_rank));
}

inline FieldElement fe_mul(const BaseField& k, const FieldElement& a, const FieldElement& b) {
    if (a.is_pi_power() || b.is_pi_power()) {
        if (a.is_zero() || b.is_zero()) return FieldElement(0);
        if (a.is_pi_power() && b.is_pi_power())
            return FieldElement::pi_power(a.pi_exponent() + b.pi_exponent());
        const FieldElement& pi = a.is_pi_power() ? a : b;
        const FieldElement& other = a.is_pi_power() ? b : a;
        if (other.resolvable(k) && pi.resolvable(k))
            return FieldElement(other.resolved(k) * pi.resolved(k));
        if (fe_equal(k, other, FieldElement(1))) return pi;
        throw PreconditionError("FieldElement: product of a fractional pi power with a rational "
                                "is outside the scalar catalog");
    }
    return FieldElement(a.rational_value() * b.rational_value());
}

inline FieldElement fe_add(const BaseField& k, const FieldElement& a, const FieldElement& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_pi_power() || b.is_pi_power()) {
        if (a.resolvable(k) && b.resolvable(k))
            return FieldElement(a.resolved(k) + b.resolved(k));
        throw PreconditionError("FieldElement: sum involving a fractional pi power is outside "
                                "the scalar catalog");
    }
    return FieldElement(a.rational_value() + b.rational_value());
}

inline FieldElement fe_neg(const FieldElement& a) {
    if (a.is_pi_power())
        throw PreconditionError("FieldElement: negation of a formal pi power is outside the catalog");
    return FieldElement(-a.rational_value());
}

inline std::string to_string(const FieldElement& a) {
    if (a.is_pi_power()) return "p^(" + to_string(a.pi_exponent()) + ")";
    return to_string(a.rational_value());
}

} // namespace adic
