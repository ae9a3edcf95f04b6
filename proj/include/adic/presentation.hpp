#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "adic/subset.hpp"

namespace adic {

enum class BaseRing { field, integers, residue };
enum class RingBasis { polynomial, restricted, power_series };
enum class TopologyKind { tate, adic_nontate, discrete };

struct PresVariable {
    std::string name;
    Rational weight = Rational(0); // the variable stands for pi^weight * name
    bool laurent = false;

    bool operator==(const PresVariable& o) const {
        return name == o.name && weight == o.weight && laurent == o.laurent;
    }
};

/// Symbolic description of the ring of integral elements. The standard
/// kind is the integral closure of the image of the canonical integral
/// model; closure_disc is the |a_0| <= 1, |a_i| < 1 subring of the
/// closed-disc closure; explicit generators are carried verbatim.
struct PlusRing {
    enum class Kind { standard, closure_disc, explicit_gens };
    Kind kind = Kind::standard;
    std::vector<SeriesElement> gens;
    std::string note;
};

struct AdjoinedFraction {
    SeriesElement num;
    SeriesElement den;
};

/**
 * Symbolic presentation of a Huber pair from a closed catalog:
 * polynomial / restricted / power-series bases over the Q_p- and k-models
 * with at most three variables and a monomial ideal of definition.
 * Constructions rewrite presentations into completed normal forms; input
 * outside the catalog is rejected loudly.
 */
struct HuberPresentation {
    BaseField field;
    BaseRing base = BaseRing::field;
    RingBasis basis = RingBasis::restricted;
    std::vector<PresVariable> vars;
    std::vector<SeriesElement> relations;
    std::vector<SeriesElement> ideal_of_def;
    std::vector<AdjoinedFraction> fractions; // adjoined to the ring of definition
    std::vector<SeriesElement> inverted;     // units adjoined to the full ring
    PlusRing plus;
    TopologyKind topology = TopologyKind::tate;
    bool strongly_noetherian_style = false; // carried label, no decision procedure
    std::string ring_of_def_note;

    std::vector<std::string> var_names() const {
        std::vector<std::string> out;
        for (const auto& v : vars) out.push_back(v.name);
        if (out.empty()) out.push_back("T"); // constants still need a context
        return out;
    }
};

namespace detail {

inline SeriesElement pres_constant(const HuberPresentation& p, const Rational& c) {
    return SeriesElement::constant(p.field, p.var_names(), FieldElement(c));
}

inline SeriesElement canonical_relation(const SeriesElement& rel) {
    // flip the sign so the leading term (render order) has a positive
    // rational coefficient
    if (rel.is_zero()) return rel;
    std::vector<std::pair<ExpKey, FieldElement>> terms(rel.head().begin(), rel.head().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = a.first[0] + a.first[1] + a.first[2],
            db = b.first[0] + b.first[1] + b.first[2];
        if (da != db) return da > db;
        return a.first > b.first;
    });
    if (!terms.empty() && terms.front().second.is_rational() &&
        terms.front().second.rational_value() < 0)
        return se_neg(rel);
    return rel;
}

inline void sort_relations(std::vector<SeriesElement>& rels) {
    std::sort(rels.begin(), rels.end(), [](const SeriesElement& a, const SeriesElement& b) {
        return to_string(a) < to_string(b);
    });
}

inline std::string fresh_var_name(const HuberPresentation& p) {
    for (const char* cand : {"S", "U", "V", "W"}) {
        bool taken = false;
        for (const auto& v : p.vars) taken = taken || v.name == cand;
        if (!taken) return cand;
    }
    throw PreconditionError("presentation: no fresh variable name available (catalog bound)");
}

inline TopologyKind recompute_topology(const HuberPresentation& p) {
    if (p.ideal_of_def.empty()) return TopologyKind::discrete;
    if (p.base == BaseRing::field) return TopologyKind::tate;
    for (const auto& g : p.inverted)
        if (g.is_constant() && !g.constant_value().is_zero() &&
            fe_val(p.field, g.constant_value()) > 0)
            return TopologyKind::tate;
    return TopologyKind::adic_nontate;
}

} // namespace detail

// ---- factories ---------------------------------------------------------

/// (k<T...>, k°<T...>): the closed unit polydisc over the field model.
inline HuberPresentation pres_tate_disc(const BaseField& k,
                                        std::vector<std::string> vars = {"T"}) {
    HuberPresentation p{k};
    p.base = BaseRing::field;
    p.basis = RingBasis::restricted;
    for (auto& v : vars) p.vars.push_back({v});
    p.ideal_of_def = {SeriesElement::constant(k, p.var_names(), FieldElement(Rational(k.prime)))};
    p.topology = TopologyKind::tate;
    p.strongly_noetherian_style = true;
    p.ring_of_def_note = "k°<vars>";
    return p;
}

/// The integral model k°<T> = Z_p<T> with the pi-adic topology.
inline HuberPresentation pres_integral_disc(const BaseField& k,
                                            std::vector<std::string> vars = {"T"}) {
    HuberPresentation p = pres_tate_disc(k, std::move(vars));
    p.base = BaseRing::integers;
    p.topology = TopologyKind::adic_nontate;
    p.strongly_noetherian_style = true;
    p.ring_of_def_note = "itself";
    return p;
}

/// k°[[T]] = Z_p[[T]] with the (pi, T)-adic topology.
inline HuberPresentation pres_power_series_model(const BaseField& k) {
    HuberPresentation p{k};
    p.base = BaseRing::integers;
    p.basis = RingBasis::power_series;
    p.vars = {{"T"}};
    p.ideal_of_def = {SeriesElement::constant(k, {"T"}, FieldElement(Rational(k.prime))),
                      SeriesElement::variable(k, {"T"}, "T")};
    p.topology = TopologyKind::adic_nontate;
    p.ring_of_def_note = "itself";
    return p;
}

/// The base integral model Z_p (no variables).
inline HuberPresentation pres_base_integers(const BaseField& k) {
    HuberPresentation p{k};
    p.base = BaseRing::integers;
    p.basis = RingBasis::polynomial;
    p.ideal_of_def = {SeriesElement::constant(k, {"T"}, FieldElement(Rational(k.prime)))};
    p.topology = TopologyKind::adic_nontate;
    p.ring_of_def_note = "itself";
    return p;
}

/// The base field Q_p (no variables).
inline HuberPresentation pres_base_field(const BaseField& k) {
    HuberPresentation p = pres_base_integers(k);
    p.base = BaseRing::field;
    p.topology = TopologyKind::tate;
    return p;
}

/// The weighted integral algebra Z_p<T>_{p^w}.
inline HuberPresentation pres_weighted_integral(const BaseField& k, const Rational& w) {
    HuberPresentation p = pres_integral_disc(k);
    p.vars[0].weight = w;
    p.ring_of_def_note = "R0<T>_M";
    return p;
}

/// A polynomial scheme presentation k[T_1..T_n]/I (discrete topology),
/// the input shape of analytification.
inline HuberPresentation pres_scheme(const BaseField& k, std::vector<std::string> vars,
                                     std::vector<SeriesElement> relations) {
    HuberPresentation p{k};
    p.base = BaseRing::field;
    p.basis = RingBasis::polynomial;
    for (auto& v : vars) p.vars.push_back({v});
    p.relations = std::move(relations);
    for (auto& r : p.relations) r = detail::canonical_relation(r);
    detail::sort_relations(p.relations);
    p.topology = TopologyKind::discrete;
    p.ring_of_def_note = "itself (discrete)";
    return p;
}

// ---- rendering and equality --------------------------------------------

inline std::string pres_render_ring(const HuberPresentation& p, bool integral_form = false) {
    std::string base;
    BaseRing b = p.base;
    if (integral_form && b == BaseRing::field) b = BaseRing::integers;
    switch (b) {
        case BaseRing::field: base = "Q" + std::to_string(p.field.prime); break;
        case BaseRing::integers: base = "Z" + std::to_string(p.field.prime); break;
        case BaseRing::residue: base = "F" + std::to_string(p.field.prime); break;
    }
    std::string s = base;
    if (!p.vars.empty()) {
        std::string open, close;
        switch (p.basis) {
            case RingBasis::restricted: open = "<"; close = ">"; break;
            case RingBasis::power_series: open = "[["; close = "]]"; break;
            case RingBasis::polynomial: open = "["; close = "]"; break;
        }
        s += open;
        for (std::size_t i = 0; i < p.vars.size(); ++i) {
            if (i) s += ",";
            const auto& v = p.vars[i];
            if (v.weight == 1) s += "p*";
            else if (v.weight != 0) s += "p^(" + to_string(v.weight) + ")*";
            s += v.name;
            if (v.laurent) s += "," + v.name + "^-1";
        }
        s += close;
    }
    if (!p.relations.empty()) {
        s += "/(";
        for (std::size_t i = 0; i < p.relations.size(); ++i) {
            if (i) s += ", ";
            s += to_string(p.relations[i]);
        }
        s += ")";
    }
    for (const auto& f : p.fractions)
        s += "[" + to_string(f.num) + "/" + to_string(f.den) + "]";
    for (const auto& g : p.inverted) s += "[1/" + to_string(g) + "]";
    return s;
}

inline std::string pres_render_plus(const HuberPresentation& p) {
    switch (p.plus.kind) {
        case PlusRing::Kind::standard:
            if (p.base == BaseRing::field) return pres_render_ring(p, true);
            return pres_render_ring(p); // A = A+ for the integral models
        case PlusRing::Kind::closure_disc:
            return "{sum a_i T^i : |a_0| <= 1, |a_i| < 1 for i >= 1}";
        case PlusRing::Kind::explicit_gens: {
            std::string s = "integral closure of <";
            for (std::size_t i = 0; i < p.plus.gens.size(); ++i) {
                if (i) s += ", ";
                s += to_string(p.plus.gens[i]);
            }
            return s + ">" + (p.plus.note.empty() ? "" : " " + p.plus.note);
        }
    }
    return "?";
}

inline std::string pres_render(const HuberPresentation& p) {
    return "(" + pres_render_ring(p) + ", " + pres_render_plus(p) + ")";
}

/// Structural normal-form equality, relations compared coefficientwise at
/// the given precision (and up to sign).
inline bool pres_equal(const HuberPresentation& a, const HuberPresentation& b,
                       const Precision& prec) {
    if (!(a.field == b.field) || a.base != b.base || a.basis != b.basis ||
        a.topology != b.topology || a.plus.kind != b.plus.kind)
        return false;
    auto vars_sorted = [](const HuberPresentation& p) {
        std::vector<PresVariable> v = p.vars;
        std::sort(v.begin(), v.end(),
                  [](const PresVariable& x, const PresVariable& y) { return x.name < y.name; });
        return v;
    };
    if (!(vars_sorted(a) == vars_sorted(b))) return false;
    if (a.relations.size() != b.relations.size()) return false;
    std::vector<bool> used(b.relations.size(), false);
    for (const auto& ra : a.relations) {
        bool matched = false;
        for (std::size_t j = 0; j < b.relations.size() && !matched; ++j) {
            if (used[j]) continue;
            if (se_equal_at_precision(ra, b.relations[j], prec) ||
                se_equal_at_precision(ra, se_neg(b.relations[j]), prec)) {
                used[j] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    if (a.ideal_of_def.size() != b.ideal_of_def.size()) return false;
    for (std::size_t i = 0; i < a.ideal_of_def.size(); ++i)
        if (!se_equal_at_precision(a.ideal_of_def[i], b.ideal_of_def[i], prec)) return false;
    return a.fractions.size() == b.fractions.size() && a.inverted.size() == b.inverted.size();
}

// ---- families ----------------------------------------------------------

/// Transition between family pieces: from_var maps to pi^(pi_delta) *
/// to_var^exponent (exponent -1 realizes the two-chart inversion glue).
struct FamilyTransition {
    std::string from_var;
    std::string to_var;
    Rational pi_delta = Rational(0);
    int exponent = 1;
    std::string note;
};

struct PresentationFamily {
    enum class Union { ascending_union, disjoint_cover };

    std::vector<HuberPresentation> pieces;
    std::vector<std::string> piece_notes;
    std::vector<FamilyTransition> transitions;
    Union semantics = Union::ascending_union;
    bool truncated = false;
    int limit = 0;

    std::string marker() const {
        if (!truncated) return "";
        return "truncated ascending union (first " + std::to_string(limit) + " pieces)";
    }
};

// ---- operations ---------------------------------------------------------

struct Localization {
    HuberPresentation raw;
    std::optional<HuberPresentation> completed;
};

/**
 * Rational localization: (A[1/g], A+[f_i/g]^N) with ring of definition
 * A_0[f_i/g] and ideal of definition I A_0[f_i/g]. For the strongly
 * noetherian style Tate catalog the completed quotient form
 * A<S_i>/(g S_i - f_i) is emitted alongside.
 */
inline Localization pres_localize(const HuberPresentation& p, const RationalSubset& u) {
    if (!u.witness)
        throw PreconditionError("pres_localize: rational subset '" + u.render() +
                                "' has no open-ideal certificate");
    auto is_one = [&](const SeriesElement& s) {
        return s.is_constant() && fe_equal(p.field, s.constant_value(), FieldElement(1));
    };
    bool trivial = is_one(u.den);
    for (const auto& f : u.nums) trivial = trivial && (is_one(f) || f == u.den);
    if (trivial) return Localization{p, p};

    HuberPresentation raw = p;
    for (const auto& f : u.nums) {
        if (f == u.den) continue; // f/g = 1 adjoins nothing
        raw.fractions.push_back({f, u.den});
    }
    bool already_inverted = false;
    for (const auto& g : raw.inverted) already_inverted = already_inverted || g == u.den;
    if (!is_one(u.den) && !already_inverted) raw.inverted.push_back(u.den);
    raw.topology = detail::recompute_topology(raw);
    raw.ring_of_def_note = "A0[f_i/g] with ideal I*A0[f_i/g]";
    raw.plus.note = "integral closure of A+[f_i/g] in A[1/g]";

    std::optional<HuberPresentation> completed;
    if (p.base == BaseRing::field && p.basis == RingBasis::restricted && p.fractions.empty() &&
        p.inverted.empty() && p.strongly_noetherian_style) {
        // A<S_1,...,S_n>/(g S_i - f_i); a numerator equal to g adjoins nothing
        HuberPresentation c = p;
        for (const auto& f : u.nums) {
            if (f == u.den) continue;
            std::string fresh = detail::fresh_var_name(c);
            c.vars.push_back({fresh});
            auto names = c.var_names();
            SeriesElement g2 = align_vars(u.den, names);
            SeriesElement f2 = align_vars(f, names);
            SeriesElement s = SeriesElement::variable(c.field, names, fresh);
            c.relations.push_back(detail::canonical_relation(se_sub(se_mul(g2, s), f2)));
        }
        detail::sort_relations(c.relations);
        completed = c;
    }
    return Localization{raw, completed};
}

/**
 * Completion normal form at precision (N, D), by the catalog rewriting
 * rules: polynomial integral models complete to restricted algebras,
 * power-series models with adjoined monomial fractions m/pi complete to
 * restricted quotients by (pi S - m), discrete rings are untouched.
 */
inline HuberPresentation pres_complete(const HuberPresentation& p, const Precision&) {
    if (p.topology == TopologyKind::discrete) return p;
    HuberPresentation out = p;

    if (p.fractions.empty() && p.inverted.empty()) {
        if (p.basis == RingBasis::polynomial && !p.vars.empty()) {
            out.basis = RingBasis::restricted;
            out.ring_of_def_note = p.base == BaseRing::field ? "k°<vars>" : "itself";
            return out;
        }
        return out; // restricted / power-series models are already complete
    }

    // adjoined fractions with monomial numerators over the pseudouniformizer
    bool catalog = true;
    for (const auto& fr : p.fractions) {
        catalog = catalog && fr.num.is_monomial();
        catalog = catalog && fr.den.is_constant() && !fr.den.constant_value().is_zero() &&
                  fe_val(p.field, fr.den.constant_value()) == 1;
    }
    if (catalog && !p.fractions.empty()) {
        for (const auto& fr : p.fractions) {
            std::string fresh = detail::fresh_var_name(out);
            out.vars.push_back({fresh});
            auto names = out.var_names();
            SeriesElement s = SeriesElement::variable(out.field, names, fresh);
            out.relations.push_back(detail::canonical_relation(
                se_sub(se_mul(align_vars(fr.den, names), s), align_vars(fr.num, names))));
        }
        out.fractions.clear();
        out.basis = RingBasis::restricted;
        // the fraction m/pi makes pi an ideal of definition by itself
        out.ideal_of_def = {detail::pres_constant(out, Rational(out.field.prime))};
        bool pi_inverted = false;
        for (const auto& g : p.inverted)
            if (g.is_constant() && !g.constant_value().is_zero() &&
                fe_val(p.field, g.constant_value()) >= 1)
                pi_inverted = true;
        out.inverted.clear();
        if (pi_inverted && out.base == BaseRing::integers) out.base = BaseRing::field;
        out.topology = detail::recompute_topology(out);
        out.ring_of_def_note =
            out.base == BaseRing::field ? "k°<vars>/(rels)" : "itself";
        detail::sort_relations(out.relations);
        return out;
    }

    if ((p.basis == RingBasis::restricted || p.basis == RingBasis::polynomial) &&
        p.fractions.empty() && !p.inverted.empty() && p.base == BaseRing::integers) {
        // inverting the pseudouniformizer in a (restricted) integral model
        bool pi_only = true;
        for (const auto& g : p.inverted)
            pi_only = pi_only && g.is_constant() && !g.constant_value().is_zero() &&
                      fe_val(p.field, g.constant_value()) >= 1;
        if (pi_only) {
            out.inverted.clear();
            out.base = BaseRing::field;
            if (!out.vars.empty()) out.basis = RingBasis::restricted;
            out.topology = TopologyKind::tate;
            out.ring_of_def_note = "k°<vars>";
            return out;
        }
    }
    throw PreconditionError("pres_complete: presentation outside the completion catalog: " +
                            pres_render_ring(p));
}

/// Result of a quotient rewrite; when a pseudouniformizer gets inverted
/// the witness records the variable and the scalar it now stands for.
struct QuotientResult {
    HuberPresentation pres;
    std::optional<std::pair<std::string, FieldElement>> inversion_witness;
};

/**
 * Quotient by a relation: the plus ring becomes the integral closure of
 * the image. Catalog rewrites: pi^e X - 1 in a weighted integral model
 * inverts pi (weight >= e required, else the ideal is the unit ideal);
 * X*Y - 1 merges two plain variables into a Laurent pair.
 */
inline QuotientResult pres_quotient(const HuberPresentation& p, const SeriesElement& rel0) {
    if (rel0.is_zero()) return {p, std::nullopt};
    SeriesElement rel = detail::canonical_relation(rel0);
    const auto& head = rel.head();

    // pi^e * X - 1 with X a weighted variable
    if (head.size() == 2 && p.vars.size() == 1 && !rel.tail()) {
        auto const_it = head.find({0, 0});
        auto lin_it = head.find({1, 0});
        if (const_it != head.end() && lin_it != head.end() &&
            const_it->second.is_rational() && lin_it->second.is_rational()) {
            Rational c = lin_it->second.rational_value();
            Rational d = -const_it->second.rational_value();
            if (d != 0 && padic_val(Rational(c / d), Integer(p.field.prime)) > 0 &&
                c / d == rat_pow(Rational(p.field.prime),
                                 static_cast<long>(rat_floor(
                                     padic_val(Rational(c / d), Integer(p.field.prime)))))) {
                long e = static_cast<long>(
                    rat_floor(padic_val(Rational(c / d), Integer(p.field.prime))));
                if (p.base == BaseRing::integers) {
                    if (p.vars[0].weight < e)
                        throw PreconditionError(
                            "pres_quotient: pi^e X - 1 generates the unit ideal when the "
                            "variable weight is below e (quotient is the zero ring)");
                    HuberPresentation out = p;
                    out.vars.clear();
                    out.relations.clear();
                    out.base = BaseRing::field;
                    out.basis = RingBasis::polynomial;
                    out.topology = TopologyKind::tate;
                    out.ring_of_def_note = "k°";
                    FieldElement witness(Rational(d / c));
                    return {out, std::make_pair(p.vars[0].name, witness)};
                }
            }
        }
    }

    // X*Y - 1 merges plain variables into a Laurent pair
    if (head.size() == 2 && p.vars.size() == 2 && !rel.tail()) {
        auto mixed = head.find({1, 1});
        auto cst = head.find({0, 0});
        if (mixed != head.end() && cst != head.end() &&
            fe_equal(p.field, mixed->second, FieldElement(1)) &&
            fe_equal(p.field, cst->second, FieldElement(-1)) && p.vars[0].weight == 0 &&
            p.vars[1].weight == 0 && p.relations.empty()) {
            HuberPresentation out = p;
            out.vars = {p.vars[0]};
            out.vars[0].laurent = true;
            out.relations.clear();
            return {out, std::nullopt};
        }
    }

    HuberPresentation out = p;
    out.relations.push_back(rel);
    detail::sort_relations(out.relations);
    out.plus.note = "integral closure of the image";
    return {out, std::nullopt};
}

/**
 * Generic fiber of an integral model: the locus |pi(x)| != 0. When pi
 * generates the ideal of definition this is the single rational piece
 * R(pi/pi); otherwise (power-series model) it is the ascending family
 * R(T^n/pi), truncated at n_max with an explicit marker.
 */
inline PresentationFamily pres_generic_fiber(const HuberPresentation& p, int n_max = 8) {
    if (p.base != BaseRing::integers)
        throw PreconditionError("pres_generic_fiber: presentation is not an integral model");
    Rational pi(p.field.prime);
    bool pi_in_ideal = false;
    for (const auto& g : p.ideal_of_def)
        if (g.is_constant() && !g.constant_value().is_zero() &&
            fe_val(p.field, g.constant_value()) == 1)
            pi_in_ideal = true;
    if (!pi_in_ideal)
        throw PreconditionError("pres_generic_fiber: pi is not among the ideal-of-definition "
                                "generators");

    PresentationFamily fam;
    if (p.ideal_of_def.size() == 1) {
        // topologically finite type case: single piece R(pi/pi)
        SeriesElement pi_s = detail::pres_constant(p, pi);
        RationalSubset u = RationalSubset::of({pi_s}, pi_s, "R(pi/pi)");
        Localization loc = pres_localize(p, u);
        HuberPresentation piece = pres_complete(loc.raw, Precision::exact());
        fam.pieces.push_back(piece);
        fam.piece_notes.push_back("R(pi/pi)");
        fam.semantics = PresentationFamily::Union::ascending_union;
        fam.truncated = false;
        fam.limit = 1;
        return fam;
    }

    if (p.basis != RingBasis::power_series || p.vars.size() != 1)
        throw PreconditionError("pres_generic_fiber: catalog covers one-variable power-series "
                                "models beyond the tft case");
    for (int n = 1; n <= n_max; ++n) {
        SeriesElement tn =
            SeriesElement::monomial(p.field, p.var_names(), {n, 0}, FieldElement(1));
        SeriesElement pi_s = detail::pres_constant(p, pi);
        RationalSubset u{{tn}, pi_s, IdealPowerCertificate{n}, "R(T^" + std::to_string(n) + "/pi)"};
        Localization loc = pres_localize(p, u);
        HuberPresentation piece = pres_complete(loc.raw, Precision::exact());
        fam.pieces.push_back(piece);
        fam.piece_notes.push_back("R(T^" + std::to_string(n) + "/pi) = disc of radius p^(1/" +
                                  std::to_string(n) + ")");
        if (n > 1)
            fam.transitions.push_back(
                {"S", "S", Rational(0), 1, "S_(n) = T * S_(n-1) on overlaps"});
    }
    fam.semantics = PresentationFamily::Union::ascending_union;
    fam.truncated = true;
    fam.limit = n_max;
    return fam;
}

/// Special fiber: quotient by the pi-generated relations; the topology is
/// recomputed (discrete when the ideal of definition dies).
inline HuberPresentation pres_special_fiber(const HuberPresentation& p) {
    if (p.base != BaseRing::integers)
        throw PreconditionError("pres_special_fiber: presentation is not an integral model");
    HuberPresentation out = p;
    out.base = BaseRing::residue;
    std::vector<SeriesElement> ideal;
    for (const auto& g : p.ideal_of_def) {
        if (g.is_constant() && !g.constant_value().is_zero() &&
            fe_val(p.field, g.constant_value()) >= 1)
            continue; // dies in the quotient
        ideal.push_back(g);
    }
    out.ideal_of_def = ideal;
    auto mod_p = [&](const Rational& c) -> Rational {
        Integer prime(p.field.prime);
        Integer num = boost::multiprecision::numerator(c) % prime;
        if (num < 0) num += prime;
        Integer den = boost::multiprecision::denominator(c) % prime;
        Integer inv = 1, base = den, e = prime - 2; // Fermat inverse, p prime
        while (e > 0) {
            if (e % 2 == 1) inv = inv * base % prime;
            base = base * base % prime;
            e /= 2;
        }
        return Rational(num * inv % prime);
    };
    std::vector<SeriesElement> rels;
    for (const auto& r : p.relations) {
        SeriesElement red = SeriesElement::constant(p.field, r.vars(), FieldElement(0));
        for (const auto& [key, c] : r.head()) {
            if (!c.is_rational()) throw PreconditionError("pres_special_fiber: non-rational "
                                                          "relation coefficient");
            if (fe_val(p.field, c) >= 1) continue; // dies mod pi
            if (fe_val(p.field, c) < 0)
                throw PreconditionError("pres_special_fiber: relation is not integral");
            red = se_add(red, SeriesElement::monomial(p.field, r.vars(), key,
                                                      FieldElement(mod_p(c.rational_value()))));
        }
        if (!red.is_zero()) rels.push_back(detail::canonical_relation(red));
    }
    out.relations = rels;
    detail::sort_relations(out.relations);
    if (out.basis == RingBasis::restricted) out.basis = RingBasis::polynomial;
    out.topology = ideal.empty() ? TopologyKind::discrete : TopologyKind::adic_nontate;
    out.ring_of_def_note = "itself";
    return out;
}

namespace detail {

inline bool is_adic_over(const HuberPresentation& p, const HuberPresentation& base) {
    // certificate: the base ideal-of-definition generators generate the
    // ideal of definition of p (catalog: both are monomial lists)
    if (p.ideal_of_def.size() != base.ideal_of_def.size()) return false;
    for (std::size_t i = 0; i < p.ideal_of_def.size(); ++i) {
        const auto& a = p.ideal_of_def[i];
        const auto& b = base.ideal_of_def[i];
        if (a.is_constant() != b.is_constant()) return false;
        if (a.is_constant() && !fe_equal(p.field, a.constant_value(), b.constant_value()))
            return false;
    }
    return true;
}

inline bool pres_same(const HuberPresentation& a, const HuberPresentation& b) {
    return pres_equal(a, b, Precision::exact());
}

} // namespace detail

/**
 * Fiber product. Adic mode takes the completed tensor product: variables
 * are merged (the second factor renames on collision), the ring of
 * definition is the image of B_0 x_{A_0} C_0, and the plus ring the
 * integral closure of B+ x_{A+} C+. Ascending mode realizes the weighted
 * ascending union B<X>_{M_{L,i}}/J_i, truncated at i_max.
 */
inline std::variant<HuberPresentation, PresentationFamily> pres_fiber_product(
    const HuberPresentation& pb, const HuberPresentation& pc, const HuberPresentation& pa,
    bool ascending, int i_max = 8) {
    if (!ascending) {
        if (!detail::is_adic_over(pb, pa) || !detail::is_adic_over(pc, pa))
            throw PreconditionError(
                "pres_fiber_product: adic mode requires both structure maps adic "
                "(ideal of definition maps to ideal of definition)");
        if (detail::pres_same(pb, pa)) return pc;
        if (detail::pres_same(pc, pa)) return pb;
        if (pb.basis == RingBasis::power_series || pc.basis == RingBasis::power_series)
            throw PreconditionError("pres_fiber_product: power-series factors are outside the "
                                    "adic tensor catalog");
        HuberPresentation out = pb;
        out.base = (pb.base == BaseRing::field || pc.base == BaseRing::field) ? BaseRing::field
                                                                              : pb.base;
        out.basis = RingBasis::restricted;
        // merge variables, renaming collisions in the second factor
        std::vector<std::pair<std::string, std::string>> renames;
        for (const auto& v : pc.vars) {
            std::string name = v.name;
            bool clash = false;
            for (const auto& w : out.vars) clash = clash || w.name == name;
            if (clash) {
                name = detail::fresh_var_name(out);
                renames.push_back({v.name, name});
            }
            out.vars.push_back({name, v.weight, v.laurent});
        }
        if (out.vars.size() > 3)
            throw PreconditionError("pres_fiber_product: more than three variables is outside "
                                    "the catalog");
        for (SeriesElement r : pc.relations) {
            for (const auto& [from, to] : renames)
                r = se_substitute_monomial(r, from, FieldElement(1), to, 1);
            out.relations.push_back(align_vars(r, out.var_names()));
        }
        detail::sort_relations(out.relations);
        out.ideal_of_def = {detail::pres_constant(out, Rational(out.field.prime))};
        out.topology = detail::recompute_topology(out);
        out.plus.note = "integral closure of B+ (x)_{A+} C+";
        out.ring_of_def_note = "image of B0 (x)_{A0} C0";
        out.strongly_noetherian_style =
            pb.strongly_noetherian_style && pc.strongly_noetherian_style;
        return out;
    }

    // ascending mode: pc must be a quotient of a weighted algebra over pa;
    // the fraction-field catalog entry is Q_p = Z_p<X>_{p}/(pX - 1)
    bool pc_is_fraction_field = pc.base == BaseRing::field && pc.vars.empty();
    if (!pc_is_fraction_field)
        throw PreconditionError(
            "pres_fiber_product: ascending mode catalog covers the fraction-field factor "
            "Q_p = Z_p<X>_{p}/(pX - 1)");
    if (pb.base != BaseRing::integers)
        throw PreconditionError("pres_fiber_product: ascending mode expects an integral model "
                                "as the other factor");
    PresentationFamily fam = pres_generic_fiber(pb, i_max);
    for (std::size_t i = 0; i < fam.piece_notes.size(); ++i) {
        std::string weighted = "B<X>_{M u L^" + std::to_string(i + 1) + "}/(pX - 1) with B = " +
                               pres_render_ring(pb) + ", L = ideal-of-definition generators";
        fam.piece_notes[i] = weighted + " ~ " + fam.piece_notes[i];
    }
    return fam;
}

/**
 * Analytification of a polynomial scheme presentation over (k, k+): the
 * ascending family B_j = k<pi^j Tered>/I with transitions
 * pi^m T -> pi^(m-j) (pi^j T), truncated at k_max.
 */
inline PresentationFamily pres_analytify(const HuberPresentation& scheme, int k_max = 8) {
    if (scheme.topology != TopologyKind::discrete || scheme.basis != RingBasis::polynomial)
        throw PreconditionError("pres_analytify: input must be a polynomial scheme presentation");
    PresentationFamily fam;
    if (scheme.vars.empty()) {
        HuberPresentation piece = scheme;
        piece.topology = TopologyKind::tate;
        piece.basis = RingBasis::polynomial;
        piece.ideal_of_def = {detail::pres_constant(piece, Rational(piece.field.prime))};
        fam.pieces.push_back(piece);
        fam.piece_notes.push_back("Spa(k, k+)");
        fam.truncated = false;
        fam.limit = 1;
        return fam;
    }
    for (int j = 0; j <= k_max; ++j) {
        HuberPresentation piece = scheme;
        piece.basis = RingBasis::restricted;
        piece.topology = TopologyKind::tate;
        piece.strongly_noetherian_style = true;
        for (auto& v : piece.vars) v.weight = Rational(j);
        piece.ideal_of_def = {detail::pres_constant(piece, Rational(piece.field.prime))};
        piece.ring_of_def_note = "k°<pi^j T>";
        std::string note = "disc radius p^" + std::to_string(j);
        // for a linear relation T - a the piece contains the classical
        // point once |a| <= p^j
        if (scheme.relations.size() == 1 && scheme.vars.size() == 1) {
            const auto& rel = scheme.relations[0];
            auto lin = rel.head().find({1, 0});
            auto cst = rel.head().find({0, 0});
            if (rel.head().size() == 2 && lin != rel.head().end() && cst != rel.head().end() &&
                fe_equal(scheme.field, lin->second, FieldElement(1)) &&
                cst->second.is_rational()) {
                Rational a = -cst->second.rational_value();
                bool inside = a == 0 || -fe_val(scheme.field, FieldElement(a)) <= Rational(j);
                note += inside ? "; contains the classical point" : "; classical point outside";
            }
        }
        fam.pieces.push_back(piece);
        fam.piece_notes.push_back(note);
        if (j > 0)
            fam.transitions.push_back({scheme.vars[0].name, scheme.vars[0].name, Rational(1), 1,
                                       "pi^m T -> pi^(m-k) (pi^k T)"});
    }
    fam.semantics = PresentationFamily::Union::ascending_union;
    fam.truncated = true;
    fam.limit = k_max;
    return fam;
}

/// The two-chart projective-line family: charts k<T> and k<S> glued along
/// |T| = 1 by S -> T^-1.
inline PresentationFamily projective_line_family(const BaseField& k) {
    PresentationFamily fam;
    fam.pieces.push_back(pres_tate_disc(k, {"T"}));
    fam.pieces.push_back(pres_tate_disc(k, {"S"}));
    fam.piece_notes = {"chart D_1", "chart D_2"};
    fam.transitions.push_back({"S", "T", Rational(0), -1, "S -> T^-1 on |T| = 1"});
    fam.semantics = PresentationFamily::Union::disjoint_cover;
    fam.truncated = false;
    fam.limit = 2;
    return fam;
}

/// The affine line as the ascending union of discs k<pi^m T>.
inline PresentationFamily affine_line_family(const BaseField& k, int n_max = 8) {
    HuberPresentation scheme = pres_scheme(k, {"T"}, {});
    return pres_analytify(scheme, n_max);
}

/**
 * Global sections of a glued family, computed from the degree-0/1 Cech
 * maps at the working precision. The two-chart inversion glue runs an
 * exact linear-algebra equalizer (its kernel dimension is reported); the
 * ascending disc family yields the entire-series membership predicate.
 */
struct GlueSections {
    enum class Kind { chart_ring, constants, entire };
    Kind kind = Kind::chart_ring;
    int kernel_dim = -1;
    Rational chart_weight = Rational(0);

    bool contains(const SeriesElement& f) const {
        switch (kind) {
            case Kind::chart_ring: return se_in_restricted(f, chart_weight);
            case Kind::constants: return f.is_constant();
            case Kind::entire: return se_is_entire(f);
        }
        return false;
    }

    std::string render() const {
        switch (kind) {
            case Kind::chart_ring: return "the chart ring itself";
            case Kind::constants:
                return "constants k (equalizer kernel dimension " + std::to_string(kernel_dim) +
                       ")";
            case Kind::entire: return "entire power series k{{T}}";
        }
        return "?";
    }
};

namespace detail {

/// Exact kernel dimension of the two-chart difference map on the
/// truncated coefficient windows: (f, g) -> f(T) - g(T^-1) on degrees
/// |e| <= D, coefficients over Q.
inline int projective_equalizer_dim(int D) {
    int cols = 2 * (D + 1);
    int rows = 2 * D + 1;
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(rows),
                                         std::vector<Rational>(static_cast<std::size_t>(cols),
                                                               Rational(0)));
    for (int i = 0; i <= D; ++i) m[static_cast<std::size_t>(D + i)][static_cast<std::size_t>(i)] = 1;
    for (int j = 0; j <= D; ++j)
        m[static_cast<std::size_t>(D - j)][static_cast<std::size_t>(D + 1 + j)] -= 1;
    // rational Gaussian elimination
    int rank = 0;
    std::size_t col = 0;
    for (std::size_t row = 0; row < m.size() && col < static_cast<std::size_t>(cols); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        Rational inv = Rational(1) / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational factor = m[r][col];
            for (std::size_t cc = 0; cc < static_cast<std::size_t>(cols); ++cc)
                m[r][cc] -= factor * m[row][cc];
        }
        ++row;
        ++rank;
    }
    return cols - rank;
}

} // namespace detail

inline GlueSections pres_glue_sections(const PresentationFamily& fam, const Precision& prec) {
    if (fam.pieces.empty()) throw PreconditionError("pres_glue_sections: empty family");
    if (fam.pieces.size() == 1) {
        GlueSections out;
        out.kind = GlueSections::Kind::chart_ring;
        out.chart_weight = fam.pieces[0].vars.empty() ? Rational(0) : fam.pieces[0].vars[0].weight;
        return out;
    }
    if (fam.semantics == PresentationFamily::Union::disjoint_cover) {
        bool inversion = false;
        for (const auto& t : fam.transitions) inversion = inversion || t.exponent == -1;
        if (fam.pieces.size() == 2 && inversion) {
            GlueSections out;
            out.kind = GlueSections::Kind::constants;
            int D = prec.D.value_or(kFallbackDegree);
            out.kernel_dim = detail::projective_equalizer_dim(D);
            if (out.kernel_dim != 1)
                throw Error("pres_glue_sections: two-chart equalizer is not the constants");
            return out;
        }
        throw PreconditionError("pres_glue_sections: disjoint cover outside the catalog");
    }
    // ascending union of discs: injective transitions, sections are the
    // entire power series
    for (std::size_t i = 1; i < fam.pieces.size(); ++i) {
        if (fam.pieces[i].vars.size() != 1 || !fam.pieces[i].relations.empty())
            throw PreconditionError("pres_glue_sections: ascending catalog covers relation-free "
                                    "one-variable disc families");
        if (!(fam.pieces[i - 1].vars[0].weight < fam.pieces[i].vars[0].weight))
            throw PreconditionError("pres_glue_sections: transitions are not injective "
                                    "inclusions of growing discs");
    }
    GlueSections out;
    out.kind = GlueSections::Kind::entire;
    return out;
}

} // namespace adic
