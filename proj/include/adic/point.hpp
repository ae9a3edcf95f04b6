#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adic/series.hpp"

namespace adic {

/**
 * Descriptor of the affinoid hosting a point. Chart coordinates are
 * normalized so the chart is a unit disc in `var`; radius_log records the
 * radius p^s the chart stands for inside a larger space, and index tells
 * two-chart glueings (projective line) apart.
 */
struct Chart {
    std::string var = "T";
    Rational radius_log = Rational(0);
    int index = 1;

    bool operator==(const Chart& o) const {
        return var == o.var && radius_log == o.radius_log && index == o.index;
    }
};

enum class GaussSign { minus, plus };

enum class PointClass {
    classical,
    gauss_rational_radius,
    gauss_irrational_radius_unsupported, // named gap: not representable here
    rank2_signed,
    trivial,
};

inline std::string to_string(PointClass c) {
    switch (c) {
        case PointClass::classical: return "classical";
        case PointClass::gauss_rational_radius: return "gauss-rational-radius";
        case PointClass::gauss_irrational_radius_unsupported:
            return "gauss-irrational-radius-unsupported";
        case PointClass::rank2_signed: return "rank2-signed";
        case PointClass::trivial: return "trivial";
    }
    return "?";
}

/**
 * A point of the adic disc or affine line chart: a classical point
 * evaluating at alpha, a Gauss point of exact radius p^(r_log), a rank-2
 * signed Gauss point x_{alpha,r-} / x_{alpha,r+} whose radius differs
 * from p^(r_log) by an infinitesimal, or the trivial valuation. The
 * infinitesimal epsilon_2 of a signed point is never stored; only the
 * sign is, which makes equivalence across epsilon choices literal.
 */
class DiscPoint {
public:
    enum class Kind { classical, gauss, gauss_signed, trivial };

    static DiscPoint classical(const BaseField& k, FieldElement alpha, Chart chart = {},
                               std::string label = "") {
        DiscPoint x(k, Kind::classical, std::move(chart), std::move(label));
        x.alpha_ = std::move(alpha);
        return x;
    }

    static DiscPoint gauss(const BaseField& k, FieldElement alpha, Rational r_log,
                           Chart chart = {}, std::string label = "") {
        DiscPoint x(k, Kind::gauss, std::move(chart), std::move(label));
        x.alpha_ = std::move(alpha);
        x.r_log_ = std::move(r_log);
        return x;
    }

    static DiscPoint gauss_signed(const BaseField& k, FieldElement alpha, Rational r_log,
                                  GaussSign sign, Chart chart = {}, std::string label = "") {
        DiscPoint x(k, Kind::gauss_signed, std::move(chart), std::move(label));
        x.alpha_ = std::move(alpha);
        x.r_log_ = std::move(r_log);
        x.sign_ = sign;
        return x;
    }

    static DiscPoint trivial_valuation(const BaseField& k, Chart chart = {},
                                       std::string label = "") {
        return DiscPoint(k, Kind::trivial, std::move(chart), std::move(label));
    }

    Kind kind() const { return kind_; }
    const BaseField& field() const { return field_; }
    const Chart& chart() const { return chart_; }
    const FieldElement& alpha() const { return alpha_; }
    const Rational& radius_log() const { return r_log_; }
    GaussSign sign() const { return sign_; }
    const std::string& label() const { return label_; }

    /// The radius as a value-group element: rank 1 for Gauss points,
    /// rank 2 with second coordinate -+1 for signed points.
    ValueGroupElement radius() const {
        switch (kind_) {
            case Kind::gauss:
                return ValueGroupElement::from_logvec({r_log_});
            case Kind::gauss_signed:
                return ValueGroupElement::from_logvec(
                    {r_log_, sign_ == GaussSign::minus ? Rational(-1) : Rational(1)});
            default:
                throw PreconditionError("DiscPoint: only Gauss points carry a radius");
        }
    }

    bool structurally_equal(const DiscPoint& o) const {
        if (!(field_ == o.field_) || !(chart_ == o.chart_) || kind_ != o.kind_) return false;
        switch (kind_) {
            case Kind::trivial: return true;
            case Kind::classical: return fe_equal(field_, alpha_, o.alpha_);
            case Kind::gauss:
                return fe_equal(field_, alpha_, o.alpha_) && r_log_ == o.r_log_;
            case Kind::gauss_signed:
                return fe_equal(field_, alpha_, o.alpha_) && r_log_ == o.r_log_ &&
                       sign_ == o.sign_;
        }
        return false;
    }

private:
    DiscPoint(const BaseField& k, Kind kind, Chart chart, std::string label)
        : field_(k), kind_(kind), chart_(std::move(chart)), label_(std::move(label)) {}

    BaseField field_;
    Kind kind_;
    Chart chart_;
    std::string label_;
    FieldElement alpha_ = FieldElement(0);
    Rational r_log_ = Rational(0);
    GaussSign sign_ = GaussSign::minus;
};

namespace detail {

/// Valuation range of a convergent tail at a classical point: the minimum
/// term valuation and whether it is attained at a unique index.
struct TailValuation {
    Rational min_vp;
    bool unique;
};

inline TailValuation classical_tail_valuation(const TailSpec& t, const Rational& v_alpha,
                                              const BaseField& k) {
    // term valuation at index i: vp_at(i) + i * v_alpha
    if (t.kind == TailSpec::Kind::geometric) {
        Rational slope = t.a + v_alpha;
        if (slope < 0)
            throw PreconditionError("classical evaluation: series does not converge at alpha");
        if (slope == 0) return {Rational(t.vp_at(t.start, k) + t.start * v_alpha), false};
        return {Rational(t.vp_at(t.start, k) + t.start * v_alpha), true};
    }
    // supergeometric: convex quadratic a i^2 + (v_alpha) i + vp(c); minimum
    // next to the vertex -v_alpha / (2a)
    Rational vertex = -v_alpha / (2 * t.a);
    long flr = static_cast<long>(rat_floor(vertex));
    std::optional<Rational> best;
    long best_i = t.start;
    int hits = 0;
    for (long i : {static_cast<long>(t.start), flr, flr + 1}) {
        if (i < t.start) continue;
        Rational v = t.vp_at(i, k) + i * v_alpha;
        if (!best || v < *best) {
            best = v;
            best_i = i;
            hits = 1;
        } else if (v == *best && i != best_i) {
            ++hits;
        }
    }
    return {*best, hits == 1};
}

} // namespace detail

/// Exact |f(alpha)| for a classical point, with tail domination analysis.
inline EvalResult classical_eval(const BaseField& k, const FieldElement& alpha,
                                 const SeriesElement& f) {
    if (f.precision().D)
        throw UndecidableAtPrecision("classical evaluation: series truncated in degree");
    if (!f.tail()) {
        FieldElement v = se_substitute(f, {alpha});
        return EvalResult{fe_abs(k, v), std::nullopt};
    }
    SeriesElement head_part = SeriesElement::constant(k, f.vars(), FieldElement(0));
    for (const auto& [key, c] : f.head())
        head_part = se_add(head_part, SeriesElement::monomial(k, f.vars(), key, c));
    FieldElement head_val = se_substitute(head_part, {alpha});
    if (alpha.is_zero()) {
        FieldElement c0 = f.tail()->start == 0 ? f.tail()->coeff_at(0, k) : FieldElement(0);
        return EvalResult{fe_abs(k, fe_add(k, head_val, c0)), std::nullopt};
    }
    Rational v_alpha = fe_val(k, alpha);
    if (v_alpha < 0)
        throw PreconditionError("classical evaluation: |alpha| <= 1 required in chart coordinates");
    detail::TailValuation tv = detail::classical_tail_valuation(*f.tail(), v_alpha, k);
    if (head_val.is_zero()) {
        if (tv.unique)
            return EvalResult{ValueGroupElement::from_logvec({-tv.min_vp}).embedded(k.ambient_rank),
                              std::nullopt};
        throw UndecidableAtPrecision("classical evaluation: tail terms may cancel at alpha");
    }
    Rational v_head = fe_val(k, head_val);
    if (v_head < tv.min_vp) return EvalResult{fe_abs(k, head_val), std::nullopt};
    if (v_head > tv.min_vp && tv.unique)
        return EvalResult{ValueGroupElement::from_logvec({-tv.min_vp}).embedded(k.ambient_rank),
                          std::nullopt};
    throw UndecidableAtPrecision("classical evaluation: head and tail values may cancel");
}

/// Evaluate |f(x)|. Classical points substitute exactly; Gauss points use
/// the (T - alpha)-expansion maximum, with a rank-2 radius for signed
/// points; the trivial valuation sends every nonzero element to 1.
inline EvalResult pt_eval(const DiscPoint& x, const SeriesElement& f0) {
    const BaseField& k = x.field();
    SeriesElement f = align_vars(f0, {x.chart().var});
    switch (x.kind()) {
        case DiscPoint::Kind::classical:
            return classical_eval(k, x.alpha(), f);
        case DiscPoint::Kind::gauss:
        case DiscPoint::Kind::gauss_signed:
            return se_gauss_eval(f, x.alpha(), x.radius());
        case DiscPoint::Kind::trivial:
            return EvalResult{f.is_zero() ? ValueGroupElement::zero()
                                          : ValueGroupElement::identity(1),
                              std::nullopt};
    }
    throw PreconditionError("pt_eval: unreachable");
}

/// Support ideal of a valuation: (0), a principal ideal with monic
/// generator, or a maximal ideal given by a generator list.
struct SupportIdeal {
    enum class Kind { zero, principal, maximal };
    Kind kind = Kind::zero;
    std::vector<SeriesElement> gens;

    static SupportIdeal zero_ideal() { return {}; }
    static SupportIdeal principal(SeriesElement g) { return {Kind::principal, {std::move(g)}}; }
    static SupportIdeal maximal(std::vector<SeriesElement> gs) {
        return {Kind::maximal, std::move(gs)};
    }
};

inline std::string to_string(const SupportIdeal& s) {
    if (s.kind == SupportIdeal::Kind::zero) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < s.gens.size(); ++i) {
        if (i) out += ", ";
        out += to_string(s.gens[i]);
    }
    return out + ")";
}

inline SupportIdeal pt_support(const DiscPoint& x) {
    const BaseField& k = x.field();
    switch (x.kind()) {
        case DiscPoint::Kind::classical: {
            SeriesElement t = SeriesElement::variable(k, {x.chart().var}, x.chart().var);
            SeriesElement gen = se_sub(t, SeriesElement::constant(k, {x.chart().var}, x.alpha()));
            return SupportIdeal::principal(gen);
        }
        case DiscPoint::Kind::gauss:
        case DiscPoint::Kind::gauss_signed:
            // max_i |a_i| r^i = 0 with r > 0 forces every coefficient to vanish
            return SupportIdeal::zero_ideal();
        case DiscPoint::Kind::trivial:
            return SupportIdeal::zero_ideal();
    }
    throw PreconditionError("pt_support: unreachable");
}

/**
 * Pair of definition (A_0, I) presented by finite generator lists: the
 * ideal generators and a sample of generators of the ring of definition.
 * Continuity is checked on these lists, never on whole rings.
 */
struct PairOfDefinition {
    std::string name;
    std::vector<SeriesElement> ideal_gens;
    std::vector<SeriesElement> ring_gens;
};

/// Continuity criterion: |b(x)| cofinal (or zero) for every ideal
/// generator b, and |pi * a(x)| < 1 for every ring-of-definition
/// generator a.
inline bool pt_is_continuous(const DiscPoint& x, const PairOfDefinition& pod) {
    if (pod.ideal_gens.empty())
        throw PreconditionError("pt_is_continuous: generator list empty (pair of definition '" +
                                pod.name + "')");
    for (const auto& b : pod.ideal_gens) {
        EvalResult e = pt_eval(x, b);
        if (e.value.is_zero()) continue; // zero (even at precision) descends below everything
        if (!vg_is_cofinal(e.value)) return false;
    }
    FieldElement pi(Rational(x.field().prime));
    for (const auto& a : pod.ring_gens) {
        EvalResult e = pt_eval(x, se_scalar_mul(pi, a));
        if (e.value.is_zero()) continue;
        if (!vg_lt(e.value, ValueGroupElement::identity(e.value.rank()))) return false;
    }
    return true;
}

/**
 * Equivalence of points: structural equality up to the radius
 * normalization (signed points with different epsilon encodings are
 * already identified). The probe list is evaluated under both points and
 * order-compared pairwise as a falsification oracle; the constant 1 is
 * always adjoined so comparisons against 1 are covered.
 */
inline bool pt_equivalent(const DiscPoint& x, const DiscPoint& y,
                          const std::vector<SeriesElement>& probes) {
    if (!(x.chart() == y.chart()))
        throw PreconditionError("pt_equivalent: chart mismatch");
    bool structural = x.structurally_equal(y);
    std::vector<SeriesElement> ps = probes;
    ps.push_back(SeriesElement::constant(x.field(), {x.chart().var}, FieldElement(1)));
    std::vector<ValueGroupElement> vx, vy;
    for (const auto& f : ps) {
        vx.push_back(pt_eval(x, f).value);
        vy.push_back(pt_eval(y, f).value);
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
            if (vg_cmp(vx[i], vx[j]) != vg_cmp(vy[i], vy[j])) {
                if (structural)
                    throw Error("pt_equivalent: probe refutes structural equality (internal)");
                return false;
            }
        }
    }
    return structural;
}

inline PointClass pt_classify(const DiscPoint& x) {
    switch (x.kind()) {
        case DiscPoint::Kind::classical: return PointClass::classical;
        case DiscPoint::Kind::gauss: return PointClass::gauss_rational_radius;
        case DiscPoint::Kind::gauss_signed: return PointClass::rank2_signed;
        case DiscPoint::Kind::trivial: return PointClass::trivial;
    }
    return PointClass::gauss_irrational_radius_unsupported;
}

/// Result of the affinoid-field point count: the number of points of
/// Spa(k, k+) and the chain of valuation rings k+ <= R <= k° (discrete:
/// <= k) labeled by the height of the prime each localization uses.
struct SpaCount {
    int count = 0;
    std::vector<std::string> chain;
};

inline SpaCount spa_affinoid_field_count(int rank, bool discrete) {
    if (rank < 0) throw PreconditionError("spa_affinoid_field_count: rank must be >= 0");
    if (!discrete && rank == 0)
        throw PreconditionError(
            "spa_affinoid_field_count: analytic affinoid fields need rank >= 1 (microbial)");
    SpaCount out;
    out.count = discrete ? rank + 1 : rank;
    for (int h = rank; h >= (discrete ? 0 : 1); --h) {
        std::string label;
        if (h == 0) {
            label = "height 0: R = k (trivial valuation)";
        } else {
            label = "height " + std::to_string(h) + ": R = localization of k+ at its height-" +
                    std::to_string(h) + " prime (rank-" + std::to_string(h) + " valuation)";
            if (h == rank) label += " = k+";
            if (!discrete && h == 1) label += " = k° (rank 1)";
        }
        out.chain.push_back(label);
    }
    return out;
}

/// (k°<T>, (pi)) with sample generators of the unit-ball algebra:
/// unit-coefficient polynomials and catalog tails.
inline PairOfDefinition pod_tate_disc(const BaseField& k) {
    std::vector<std::string> v{"T"};
    PairOfDefinition pod;
    pod.name = "(k°<T>, (pi))";
    pod.ideal_gens = {SeriesElement::constant(k, v, FieldElement(Rational(k.prime)))};
    SeriesElement t = SeriesElement::variable(k, v, "T");
    pod.ring_gens = {
        SeriesElement::constant(k, v, FieldElement(1)),
        t,
        se_add(se_mul(t, t), SeriesElement::constant(k, v, FieldElement(1))),
        se_scalar_mul(FieldElement(Rational(k.prime)), t),
        SeriesElement::from_tail(k, "T", TailSpec::geometric(Rational(1))),
        SeriesElement::from_tail(k, "T", TailSpec::supergeometric(Rational(1))),
    };
    return pod;
}

/// (k°[[T]], (pi, T)) for the power-series integral model; the ring of
/// definition admits non-decaying coefficient streams.
inline PairOfDefinition pod_power_series_model(const BaseField& k) {
    std::vector<std::string> v{"T"};
    PairOfDefinition pod;
    pod.name = "(k°[[T]], (pi, T))";
    pod.ideal_gens = {SeriesElement::constant(k, v, FieldElement(Rational(k.prime))),
                      SeriesElement::variable(k, v, "T")};
    pod.ring_gens = {
        SeriesElement::constant(k, v, FieldElement(1)),
        SeriesElement::variable(k, v, "T"),
        SeriesElement::from_tail(k, "T", TailSpec::geometric(Rational(0))),
    };
    return pod;
}

} // namespace adic
