#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adic/point.hpp"

namespace adic {

/// Unit-ideal certificate: sum_i coeffs[i] * elems[i] == 1 for an aligned
/// element list.
struct BezoutCertificate {
    std::vector<SeriesElement> coeffs;
};

/// Openness certificate for the non-Tate monomial case: every monomial
/// generator of I^r is divisible by one of the listed elements.
struct IdealPowerCertificate {
    int r = 1;
};

using OpenIdealWitness = std::variant<BezoutCertificate, IdealPowerCertificate>;

inline bool verify_bezout(const BezoutCertificate& cert,
                          const std::vector<SeriesElement>& elems) {
    if (cert.coeffs.size() != elems.size()) return false;
    if (elems.empty()) return false;
    SeriesElement acc = SeriesElement::constant(elems[0].field(), elems[0].vars(), FieldElement(0));
    for (std::size_t i = 0; i < elems.size(); ++i)
        acc = se_add(acc, se_mul(cert.coeffs[i], elems[i]));
    return acc.is_constant() && !acc.is_zero() &&
           fe_equal(elems[0].field(), acc.constant_value(), FieldElement(1));
}

/// Bounded search for a Bezout certificate over a small coefficient
/// catalog (constants, pi powers, degree-one monomials). All the
/// coverings in scope admit certificates of this shape.
inline std::optional<BezoutCertificate> find_bezout_certificate(
    const std::vector<SeriesElement>& elems) {
    if (elems.empty() || elems.size() > 4) return std::nullopt;
    const BaseField& k = elems[0].field();
    const auto& vars = elems[0].vars();
    Rational p(k.prime);
    std::vector<SeriesElement> catalog{
        SeriesElement::constant(k, vars, FieldElement(0)),
        SeriesElement::constant(k, vars, FieldElement(1)),
        SeriesElement::constant(k, vars, FieldElement(-1)),
        SeriesElement::constant(k, vars, FieldElement(p)),
        SeriesElement::constant(k, vars, FieldElement(-p)),
        SeriesElement::constant(k, vars, FieldElement(Rational(1) / p)),
        SeriesElement::constant(k, vars, FieldElement(-Rational(1) / p)),
    };
    for (const auto& v : vars) {
        catalog.push_back(SeriesElement::variable(k, vars, v));
        catalog.push_back(se_neg(SeriesElement::variable(k, vars, v)));
    }
    std::vector<std::size_t> idx(elems.size(), 0);
    while (true) {
        BezoutCertificate cert;
        for (std::size_t i = 0; i < elems.size(); ++i) cert.coeffs.push_back(catalog[idx[i]]);
        if (verify_bezout(cert, elems)) return cert;
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == catalog.size()) idx[j++] = 0;
        if (j == idx.size()) return std::nullopt;
    }
}

/**
 * Rational subset R(f_1, ..., f_n / g): the locus
 * |f_i(x)| <= |g(x)| != 0. The witness certifies that the defining
 * elements generate an open ideal (a unit-ideal certificate in the Tate
 * case, an ideal-power divisibility certificate otherwise).
 */
struct RationalSubset {
    std::vector<SeriesElement> nums;
    SeriesElement den;
    std::optional<OpenIdealWitness> witness;
    std::string label;

    static RationalSubset of(std::vector<SeriesElement> nums, SeriesElement den,
                             std::string label = "") {
        RationalSubset u{std::move(nums), std::move(den), std::nullopt, std::move(label)};
        std::vector<SeriesElement> elems = u.nums;
        elems.push_back(u.den);
        if (auto cert = find_bezout_certificate(elems)) u.witness = *cert;
        return u;
    }

    /// Whole space R(1/1).
    static RationalSubset whole_space(const BaseField& k, const std::string& var) {
        SeriesElement one = SeriesElement::constant(k, {var}, FieldElement(1));
        return of({one}, one, "R(1/1)");
    }

    /// Disc |T| <= p^q as a rational subset: for q = a/b this is
    /// |T^b| <= |p^(-a)|.
    static RationalSubset disc(const BaseField& k, const std::string& var, const Rational& q) {
        Integer a = boost::multiprecision::numerator(q);
        Integer b = boost::multiprecision::denominator(q);
        SeriesElement tb = SeriesElement::monomial(k, {var}, {static_cast<int>(b), 0}, FieldElement(1));
        SeriesElement den = SeriesElement::constant(
            k, {var}, FieldElement(rat_pow(Rational(k.prime), -static_cast<long>(a))));
        return of({tb}, den, "D(0, p^(" + to_string(q) + "))");
    }

    /// The locus |T| >= 1, i.e. R(1 / T).
    static RationalSubset unit_annulus_outer(const BaseField& k, const std::string& var) {
        SeriesElement one = SeriesElement::constant(k, {var}, FieldElement(1));
        return of({one}, SeriesElement::variable(k, {var}, var), "R(1/" + var + ")");
    }

    std::string render() const {
        if (!label.empty()) return label;
        std::string s = "R(";
        for (std::size_t i = 0; i < nums.size(); ++i) {
            if (i) s += ", ";
            s += to_string(nums[i]);
        }
        return s + " / " + to_string(den) + ")";
    }
};

/// Membership |f_i(x)| <= |g(x)| != 0 with exact value-group comparison;
/// ties count as membership. Throws UndecidableAtPrecision when the
/// comparison hinges on coefficients unknown at the working precision.
inline bool rs_member(const DiscPoint& x, const RationalSubset& u) {
    EvalResult eg = pt_eval(x, u.den);
    if (eg.value.is_zero()) {
        if (eg.exact()) return false;
        throw UndecidableAtPrecision("rs_member: |" + to_string(u.den) +
                                     "(x)| vanishes at working precision; cannot certify != 0");
    }
    for (const auto& f : u.nums) {
        EvalResult ef = pt_eval(x, f);
        if (ef.value.is_zero()) {
            if (ef.exact()) continue;
            // |f(x)| <= p^(-N); membership holds if that bound is <= |g(x)|
            ValueGroupElement bound =
                ValueGroupElement::from_logvec({Rational(-*ef.zero_at_precision)});
            if (vg_cmp_embedded(bound, eg.value) != Ordering::GT) continue;
            throw UndecidableAtPrecision("rs_member: |" + to_string(f) +
                                         "(x)| is below precision but not provably <= |g(x)|");
        }
        if (vg_cmp_embedded(ef.value, eg.value) == Ordering::GT) return false;
    }
    return true;
}

/// Intersection of rational subsets (the two-condition loci such as the
/// unit sphere are conjunctions).
struct SubsetIntersection {
    std::vector<RationalSubset> parts;
    std::string label;
};

inline bool rs_member(const DiscPoint& x, const SubsetIntersection& u) {
    for (const auto& part : u.parts)
        if (!rs_member(x, part)) return false;
    return true;
}

/// The unit sphere S(0,1) = {|T| <= 1 and 1 <= |T| != 0}.
inline SubsetIntersection unit_sphere(const BaseField& k, const std::string& var) {
    SeriesElement one = SeriesElement::constant(k, {var}, FieldElement(1));
    SeriesElement t = SeriesElement::variable(k, {var}, var);
    return SubsetIntersection{{RationalSubset::of({t}, one, "R(" + var + "/1)"),
                               RationalSubset::unit_annulus_outer(k, var)},
                              "S(0,1)"};
}

/// One sign-pattern piece U_I of a Laurent covering: |t_i| <= 1 for the
/// marked generators, |t_i| >= 1 for the rest.
struct SignPatternPiece {
    std::vector<SeriesElement> gens;
    std::vector<bool> le;
    std::string label;
};

inline bool piece_member(const DiscPoint& x, const SignPatternPiece& piece) {
    for (std::size_t i = 0; i < piece.gens.size(); ++i) {
        EvalResult e = pt_eval(x, piece.gens[i]);
        ValueGroupElement one = ValueGroupElement::identity(1);
        Ordering c = e.value.is_zero() ? Ordering::LT : vg_cmp_embedded(e.value, one);
        if (piece.le[i] && c == Ordering::GT) return false;
        if (!piece.le[i] && c == Ordering::LT) return false;
    }
    return true;
}

/// A covering piece is either a rational subset or a sign pattern.
struct CoveringPiece {
    std::variant<RationalSubset, SignPatternPiece> impl;

    std::string render() const {
        if (std::holds_alternative<RationalSubset>(impl))
            return std::get<RationalSubset>(impl).render();
        return std::get<SignPatternPiece>(impl).label;
    }
};

inline bool piece_member(const DiscPoint& x, const CoveringPiece& piece) {
    if (std::holds_alternative<RationalSubset>(piece.impl))
        return rs_member(x, std::get<RationalSubset>(piece.impl));
    return piece_member(x, std::get<SignPatternPiece>(piece.impl));
}

/**
 * Structured covering family: a standard rational covering (requires a
 * unit-ideal certificate), a standard Laurent covering with its 2^n sign
 * patterns, or a simple Laurent covering (one generator).
 */
struct CoveringSpec {
    enum class Kind { standard_rational, standard_laurent, simple_laurent };

    Kind kind;
    std::vector<SeriesElement> gens;
    std::optional<BezoutCertificate> cert;

    static CoveringSpec standard_rational(std::vector<SeriesElement> gens) {
        CoveringSpec c{Kind::standard_rational, std::move(gens), std::nullopt};
        c.cert = find_bezout_certificate(c.gens);
        return c;
    }

    static CoveringSpec standard_laurent(std::vector<SeriesElement> gens) {
        return CoveringSpec{Kind::standard_laurent, std::move(gens), std::nullopt};
    }

    static CoveringSpec simple_laurent(SeriesElement t) {
        return CoveringSpec{Kind::simple_laurent, {std::move(t)}, std::nullopt};
    }
};

inline std::vector<CoveringPiece> cov_pieces(const CoveringSpec& c) {
    std::vector<CoveringPiece> out;
    switch (c.kind) {
        case CoveringSpec::Kind::standard_rational: {
            if (!c.cert || !verify_bezout(*c.cert, c.gens))
                throw PreconditionError(
                    "cov_pieces: standard rational covering lacks a unit-ideal certificate "
                    "for its generators");
            for (std::size_t i = 0; i < c.gens.size(); ++i) {
                RationalSubset u = RationalSubset::of(c.gens, c.gens[i]);
                u.witness = BezoutCertificate(*c.cert); // same elements up to repetition
                out.push_back(CoveringPiece{u});
            }
            return out;
        }
        case CoveringSpec::Kind::standard_laurent: {
            std::size_t n = c.gens.size();
            if (n == 0) throw PreconditionError("cov_pieces: Laurent covering needs generators");
            for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << n); ++mask) {
                SignPatternPiece piece;
                piece.gens = c.gens;
                piece.le.resize(n);
                std::string signs;
                for (std::size_t i = 0; i < n; ++i) {
                    piece.le[i] = (mask >> i) & 1;
                    signs += piece.le[i] ? '-' : '+';
                }
                piece.label = "U(" + signs + ")";
                out.push_back(CoveringPiece{piece});
            }
            return out;
        }
        case CoveringSpec::Kind::simple_laurent: {
            if (c.gens.size() != 1)
                throw PreconditionError("cov_pieces: simple Laurent covering has one generator");
            SignPatternPiece minus{c.gens, {true}, "W-"};
            SignPatternPiece plus{c.gens, {false}, "W+"};
            out.push_back(CoveringPiece{minus});
            out.push_back(CoveringPiece{plus});
            return out;
        }
    }
    throw PreconditionError("cov_pieces: unreachable");
}

/// Row of a sample-verification report: which pieces contain the point.
struct CoverRow {
    std::string point;
    std::vector<std::string> pieces;
    bool covered = false;
};

struct CoverSampleReport {
    std::vector<CoverRow> rows;
    bool all_covered = true;
    std::string method;
};

inline CoverSampleReport cov_verify_on_samples(const std::vector<CoveringPiece>& pieces,
                                               const std::vector<DiscPoint>& pts,
                                               std::string method = "verified on samples") {
    CoverSampleReport rep;
    rep.method = std::move(method);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CoverRow row;
        row.point = pts[i].label().empty() ? "sample#" + std::to_string(i) : pts[i].label();
        for (const auto& piece : pieces)
            if (piece_member(pts[i], piece)) row.pieces.push_back(piece.render());
        row.covered = !row.pieces.empty();
        rep.all_covered = rep.all_covered && row.covered;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

inline CoverSampleReport cov_verify_on_samples(const CoveringSpec& c,
                                               const std::vector<DiscPoint>& pts) {
    std::string method;
    switch (c.kind) {
        case CoveringSpec::Kind::standard_rational:
            method = "max-index membership, verified on samples";
            break;
        default:
            method = "exhaustive over sign patterns, verified on samples";
            break;
    }
    return cov_verify_on_samples(cov_pieces(c), pts, method);
}

/**
 * Binary refinement tree for the reduction of a standard Laurent covering
 * to simple Laurent coverings: the node at level j splits on t_{n-j+1}
 * and records the generator list restricted to its subtree; the 2^n
 * leaves are the original sign-pattern pieces.
 */
struct LaurentTree {
    std::vector<SeriesElement> remaining;
    std::optional<SeriesElement> split;
    std::string path; // '-'/'+' choices from the root, split order t_n, t_{n-1}, ...
    std::unique_ptr<LaurentTree> minus;
    std::unique_ptr<LaurentTree> plus;
    std::optional<SignPatternPiece> leaf;

    int depth() const {
        if (!split) return 0;
        return 1 + std::max(minus->depth(), plus->depth());
    }

    int leaf_count() const {
        if (!split) return 1;
        return minus->leaf_count() + plus->leaf_count();
    }
};

namespace detail {

inline std::unique_ptr<LaurentTree> build_laurent_tree(const std::vector<SeriesElement>& all,
                                                       std::vector<SeriesElement> remaining,
                                                       std::string path) {
    auto node = std::make_unique<LaurentTree>();
    node->remaining = remaining;
    node->path = path;
    if (remaining.empty()) {
        SignPatternPiece piece;
        piece.gens = all;
        piece.le.resize(all.size());
        // path[j] chose the sign of t_{n-j}
        std::string signs(all.size(), '?');
        for (std::size_t j = 0; j < path.size(); ++j) {
            std::size_t gen_index = all.size() - 1 - j;
            piece.le[gen_index] = path[j] == '-';
            signs[gen_index] = path[j];
        }
        piece.label = "U(" + signs + ")";
        node->leaf = std::move(piece);
        return node;
    }
    node->split = remaining.back();
    std::vector<SeriesElement> rest(remaining.begin(), remaining.end() - 1);
    node->minus = build_laurent_tree(all, rest, path + "-");
    node->plus = build_laurent_tree(all, rest, path + "+");
    return node;
}

} // namespace detail

inline std::unique_ptr<LaurentTree> cov_reduce_to_simple(const CoveringSpec& c) {
    if (c.kind != CoveringSpec::Kind::standard_laurent &&
        c.kind != CoveringSpec::Kind::simple_laurent)
        throw PreconditionError("cov_reduce_to_simple: standard Laurent covering required");
    if (c.gens.empty())
        throw PreconditionError("cov_reduce_to_simple: n >= 1 generators required");
    return detail::build_laurent_tree(c.gens, c.gens, "");
}

/// The analytic-locus covering {R(s_1, ..., s_n / s_i)} attached to the
/// ideal-of-definition generators of a pair of definition.
inline std::vector<RationalSubset> analytic_locus(const PairOfDefinition& pod) {
    if (pod.ideal_gens.empty())
        throw PreconditionError("analytic_locus: empty generator list (pair of definition '" +
                                pod.name + "')");
    std::vector<RationalSubset> out;
    for (std::size_t i = 0; i < pod.ideal_gens.size(); ++i) {
        RationalSubset u = RationalSubset::of(pod.ideal_gens, pod.ideal_gens[i]);
        u.witness = IdealPowerCertificate{1}; // the generators span I itself
        out.push_back(std::move(u));
    }
    return out;
}

/// E_r: the monomial generators of I^r for a monomial ideal.
inline std::vector<SeriesElement> ideal_power_generators(const std::vector<SeriesElement>& gens,
                                                         int r) {
    if (r < 1) throw PreconditionError("ideal_power_generators: r >= 1 required");
    std::vector<SeriesElement> out{gens};
    for (int step = 1; step < r; ++step) {
        std::vector<SeriesElement> next;
        for (const auto& e : out)
            for (const auto& g : gens) {
                SeriesElement prod = se_mul(e, g);
                bool seen = false;
                for (const auto& h : next) seen = seen || h == prod;
                if (!seen) next.push_back(prod);
            }
        out = std::move(next);
    }
    return out;
}

/// The generalized-rational expansion R({f} u E_r / g) for r = 1..r_max.
inline std::vector<RationalSubset> generalized_rational_expansion(
    const RationalSubset& u, const std::vector<SeriesElement>& ideal_gens, int r_max) {
    std::vector<RationalSubset> out;
    for (int r = 1; r <= r_max; ++r) {
        std::vector<SeriesElement> nums = u.nums;
        for (const auto& e : ideal_power_generators(ideal_gens, r)) nums.push_back(e);
        out.push_back(RationalSubset{std::move(nums), u.den, IdealPowerCertificate{r},
                                     u.render() + " + E_" + std::to_string(r)});
    }
    return out;
}

} // namespace adic
