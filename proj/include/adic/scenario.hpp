#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adic/series_parse.hpp"
#include "adic/sheaf_check.hpp"

namespace adic {

using Json = nlohmann::json;

/// Runtime options shared by all commands.
struct Options {
    Precision precision = Precision::of(8, 32);
    int n_max = 8;
};

/**
 * A self-contained scenario document: one base field, named definitions
 * (points, series, subsets, coverings, presentations, pairs of
 * definition), and an ordered query list. Execution is deterministic
 * given the scenario bytes; all names resolve before any query runs.
 */
struct Scenario {
    BaseField field = BaseField(2);
    std::vector<std::string> vars{"T"};
    std::map<std::string, DiscPoint> points;
    std::map<std::string, SeriesElement> series;
    std::map<std::string, RationalSubset> subsets;
    std::map<std::string, SubsetIntersection> regions;
    std::map<std::string, CoveringSpec> coverings;
    std::map<std::string, HuberPresentation> presentations;
    std::map<std::string, PairOfDefinition> pods;
    std::vector<Json> queries;

    template <typename T>
    static const T& resolve(const std::map<std::string, T>& m, const std::string& name,
                            const char* what) {
        auto it = m.find(name);
        if (it == m.end())
            throw PreconditionError(std::string("scenario: unresolved ") + what + " name '" +
                                    name + "'");
        return it->second;
    }
};

/// One executed query: a human block plus a line-oriented machine block
/// with a stable key order.
struct Report {
    std::string command;
    std::vector<std::string> human;
    std::vector<std::pair<std::string, std::string>> machine;

    void put(const std::string& k, const std::string& v) { machine.emplace_back(k, v); }

    std::string render() const {
        std::string s = "== " + command + " ==\n";
        for (const auto& l : human) s += l + "\n";
        s += "--- machine\n";
        for (const auto& [k, v] : machine) s += k + "=" + v + "\n";
        s += "---\n";
        return s;
    }
};

namespace scenario_detail {

inline Rational json_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw PreconditionError("scenario: expected a rational number literal");
}

inline SeriesElement parse_series_node(const BaseField& field,
                                       const std::vector<std::string>& vars, const Json& j) {
    if (j.is_string()) return parse_series(field, vars, j.get<std::string>());
    if (j.is_object()) {
        std::string text = j.value("text", std::string("0"));
        SeriesElement head = parse_series(field, vars, text);
        if (j.contains("tail")) {
            const Json& t = j.at("tail");
            std::string kind = t.value("kind", std::string(""));
            Rational a = json_rational(t.value("a", Json(0)));
            Rational b = json_rational(t.value("b", Json(0)));
            Rational c = json_rational(t.value("c", Json(1)));
            int start = t.value("start", 0);
            TailSpec tail = kind == "supergeometric" ? TailSpec::supergeometric(a, c, start)
                            : kind == "geometric"
                                ? TailSpec::geometric(a, b, c, start)
                                : throw PreconditionError(
                                      "scenario: tail kind must be geometric or supergeometric");
            if (vars.size() != 1)
                throw PreconditionError("scenario: tails require a single variable");
            std::map<int, FieldElement> head_map;
            for (const auto& [key, coeff] : head.head()) head_map[key[0]] = coeff;
            return SeriesElement::from_tail(field, vars[0], tail, head_map);
        }
        return head;
    }
    throw PreconditionError("scenario: malformed series literal");
}

inline DiscPoint parse_point_node(const BaseField& field, const Json& j) {
    std::string kind = j.value("kind", std::string("classical"));
    Chart chart;
    chart.var = j.value("chart_var", std::string("T"));
    if (j.contains("chart_radius_log")) chart.radius_log = json_rational(j.at("chart_radius_log"));
    chart.index = j.value("chart_index", 1);
    FieldElement alpha(0);
    if (j.contains("alpha")) alpha = FieldElement(json_rational(j.at("alpha")));
    Rational r_log(0);
    if (j.contains("r_log")) r_log = json_rational(j.at("r_log"));
    std::string label = j.value("label", std::string(""));
    if (kind == "classical") return DiscPoint::classical(field, alpha, chart, label);
    if (kind == "gauss") return DiscPoint::gauss(field, alpha, r_log, chart, label);
    if (kind == "gauss_signed") {
        std::string sign = j.value("sign", std::string("-"));
        if (sign != "-" && sign != "+")
            throw PreconditionError("scenario: gauss_signed sign must be '-' or '+'");
        if (j.contains("epsilon2")) {
            // the epsilon_2 magnitude is validated for sign consistency and
            // discarded: the point does not depend on it
            Rational eps2 = json_rational(j.at("epsilon2"));
            if (eps2 <= 0) throw PreconditionError("scenario: epsilon2 must be positive");
            if (sign == "-" && eps2 >= 1)
                throw PreconditionError("scenario: sign '-' needs epsilon2 < 1");
            if (sign == "+" && eps2 <= 1)
                throw PreconditionError("scenario: sign '+' needs epsilon2 > 1");
        }
        return DiscPoint::gauss_signed(field, alpha, r_log,
                                       sign == "-" ? GaussSign::minus : GaussSign::plus, chart,
                                       label);
    }
    if (kind == "trivial") return DiscPoint::trivial_valuation(field, chart, label);
    throw PreconditionError("scenario: unknown point kind '" + kind + "'");
}

inline HuberPresentation parse_presentation_node(const BaseField& field, const Json& j) {
    if (j.contains("preset")) {
        std::string preset = j.at("preset").get<std::string>();
        if (preset == "tate_disc") {
            std::vector<std::string> vars = j.value("vars", std::vector<std::string>{"T"});
            return pres_tate_disc(field, vars);
        }
        if (preset == "integral_disc") return pres_integral_disc(field);
        if (preset == "power_series_model") return pres_power_series_model(field);
        if (preset == "base_integers") return pres_base_integers(field);
        if (preset == "base_field") return pres_base_field(field);
        if (preset == "weighted_integral")
            return pres_weighted_integral(field, json_rational(j.value("weight", Json(1))));
        if (preset == "not_sheafy") return pres_buzver(field);
        if (preset == "scheme") {
            std::vector<std::string> vars = j.value("vars", std::vector<std::string>{"T"});
            std::vector<SeriesElement> rels;
            for (const auto& r : j.value("relations", Json::array()))
                rels.push_back(parse_series_node(field, vars, r));
            return pres_scheme(field, vars, rels);
        }
        throw PreconditionError("scenario: unknown presentation preset '" + preset + "'");
    }
    HuberPresentation p{field};
    std::string base = j.value("base", std::string("Qp"));
    if (base == "Qp" || base == "k") p.base = BaseRing::field;
    else if (base == "Zp" || base == "k0") p.base = BaseRing::integers;
    else if (base == "Fp") p.base = BaseRing::residue;
    else throw PreconditionError("scenario: unknown presentation base '" + base + "'");
    std::string basis = j.value("basis", std::string("restricted"));
    if (basis == "restricted") p.basis = RingBasis::restricted;
    else if (basis == "polynomial") p.basis = RingBasis::polynomial;
    else if (basis == "power_series") p.basis = RingBasis::power_series;
    else throw PreconditionError("scenario: unknown presentation basis '" + basis + "'");
    for (const auto& v : j.value("vars", Json::array())) {
        if (v.is_string()) p.vars.push_back({v.get<std::string>()});
        else
            p.vars.push_back({v.at("name").get<std::string>(),
                              json_rational(v.value("weight", Json(0))),
                              v.value("laurent", false)});
    }
    auto names = p.var_names();
    for (const auto& r : j.value("relations", Json::array()))
        p.relations.push_back(detail::canonical_relation(parse_series_node(field, names, r)));
    detail::sort_relations(p.relations);
    if (j.contains("ideal_of_def")) {
        for (const auto& g : j.at("ideal_of_def"))
            p.ideal_of_def.push_back(parse_series_node(field, names, g));
    } else {
        p.ideal_of_def = {SeriesElement::constant(field, names,
                                                  FieldElement(Rational(field.prime)))};
        if (p.basis == RingBasis::power_series)
            p.ideal_of_def.push_back(SeriesElement::variable(field, names, names[0]));
    }
    std::string plus = j.value("plus_ring", std::string("standard"));
    if (plus == "standard") p.plus.kind = PlusRing::Kind::standard;
    else if (plus == "closure_disc") p.plus.kind = PlusRing::Kind::closure_disc;
    else throw PreconditionError("scenario: unknown plus ring '" + plus + "'");
    p.topology = p.base == BaseRing::field      ? TopologyKind::tate
                 : p.ideal_of_def.empty()       ? TopologyKind::discrete
                                                : TopologyKind::adic_nontate;
    if (p.base == BaseRing::residue && p.basis == RingBasis::polynomial)
        p.topology = TopologyKind::discrete;
    p.strongly_noetherian_style =
        p.base == BaseRing::field && p.basis == RingBasis::restricted;
    return p;
}

inline RationalSubset parse_rational_node(const BaseField& field,
                                          const std::vector<std::string>& vars, const Json& j) {
    std::vector<SeriesElement> nums;
    for (const auto& n : j.at("num")) nums.push_back(parse_series_node(field, vars, n));
    SeriesElement den = parse_series_node(field, vars, j.at("den"));
    RationalSubset u = RationalSubset::of(nums, den, j.value("label", std::string("")));
    if (!u.witness && j.value("open_by_ideal_power", false))
        u.witness = IdealPowerCertificate{j.value("ideal_power", 1)};
    return u;
}

inline PairOfDefinition parse_pod_node(const BaseField& field, const Json& j) {
    if (j.contains("preset")) {
        std::string preset = j.at("preset").get<std::string>();
        if (preset == "tate_disc") return pod_tate_disc(field);
        if (preset == "power_series_model") return pod_power_series_model(field);
        throw PreconditionError("scenario: unknown pod preset '" + preset + "'");
    }
    PairOfDefinition pod;
    pod.name = j.value("name", std::string("(A0, I)"));
    std::vector<std::string> vars = j.value("vars", std::vector<std::string>{"T"});
    for (const auto& g : j.value("ideal", Json::array()))
        pod.ideal_gens.push_back(parse_series_node(field, vars, g));
    for (const auto& g : j.value("ring", Json::array()))
        pod.ring_gens.push_back(parse_series_node(field, vars, g));
    return pod;
}

} // namespace scenario_detail

inline Scenario parse_scenario(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw PreconditionError(std::string("scenario: malformed JSON: ") + e.what());
    }
    Scenario s;
    if (j.contains("field")) {
        const Json& f = j.at("field");
        s.field = BaseField(f.value("prime", 2LL), f.value("label", std::string("Qp-model")),
                            f.value("ambient_rank", 1),
                            f.value("residue_algebraic_over_finite", true));
    }
    if (j.contains("vars")) s.vars = j.at("vars").get<std::vector<std::string>>();
    const Json define = j.value("define", Json::object());
    for (const auto& [name, node] : define.items()) {
        if (node.contains("point"))
            s.points.emplace(name, scenario_detail::parse_point_node(s.field, node.at("point")));
        else if (node.contains("series"))
            s.series.emplace(name,
                             scenario_detail::parse_series_node(s.field, s.vars, node.at("series")));
        else if (node.contains("rational"))
            s.subsets.emplace(name, scenario_detail::parse_rational_node(s.field, s.vars,
                                                                         node.at("rational")));
        else if (node.contains("disc_log"))
            s.subsets.emplace(name, RationalSubset::disc(
                                        s.field, s.vars[0],
                                        scenario_detail::json_rational(node.at("disc_log"))));
        else if (node.contains("unit_sphere"))
            s.regions.emplace(name, unit_sphere(s.field, s.vars[0]));
        else if (node.contains("laurent")) {
            std::vector<SeriesElement> gens;
            for (const auto& g : node.at("laurent"))
                gens.push_back(scenario_detail::parse_series_node(s.field, s.vars, g));
            s.coverings.emplace(name, CoveringSpec::standard_laurent(gens));
        } else if (node.contains("simple_laurent")) {
            s.coverings.emplace(name,
                                CoveringSpec::simple_laurent(scenario_detail::parse_series_node(
                                    s.field, s.vars, node.at("simple_laurent"))));
        } else if (node.contains("rational_covering")) {
            std::vector<SeriesElement> gens;
            for (const auto& g : node.at("rational_covering"))
                gens.push_back(scenario_detail::parse_series_node(s.field, s.vars, g));
            s.coverings.emplace(name, CoveringSpec::standard_rational(gens));
        } else if (node.contains("presentation")) {
            s.presentations.emplace(name, scenario_detail::parse_presentation_node(
                                              s.field, node.at("presentation")));
        } else if (node.contains("pod")) {
            s.pods.emplace(name, scenario_detail::parse_pod_node(s.field, node.at("pod")));
        } else {
            throw PreconditionError("scenario: definition '" + name + "' has no known kind");
        }
    }
    for (const auto& q : j.value("queries", Json::array())) s.queries.push_back(q);
    return s;
}

// ---- query execution -----------------------------------------------------

namespace scenario_detail {

inline std::string yesno(bool b) { return b ? "true" : "false"; }

inline void family_report(Report& rep, const PresentationFamily& fam) {
    rep.put("pieces", std::to_string(fam.pieces.size()));
    for (std::size_t i = 0; i < fam.pieces.size(); ++i) {
        rep.put("piece" + std::to_string(i), pres_render(fam.pieces[i]));
        rep.human.push_back("piece " + std::to_string(i) + ": " + pres_render(fam.pieces[i]) +
                            (i < fam.piece_notes.size() ? "   [" + fam.piece_notes[i] + "]" : ""));
    }
    rep.put("truncated", yesno(fam.truncated));
    if (fam.truncated) {
        rep.put("marker", fam.marker());
        rep.human.push_back(fam.marker());
    }
}

} // namespace scenario_detail

/// Execute one query against a scenario; throws PreconditionError /
/// UndecidableAtPrecision on the corresponding failure classes.
inline Report run_query(const Scenario& s, const Json& q, const Options& opts) {
    using scenario_detail::yesno;
    std::string cmd = q.value("cmd", std::string(""));
    Report rep;
    rep.command = cmd;
    rep.put("cmd", cmd);

    auto point_arg = [&](const char* key = "point") {
        return Scenario::resolve(s.points, q.at(key).get<std::string>(), "point");
    };
    auto series_arg = [&](const char* key = "series") {
        std::string name = q.at(key).get<std::string>();
        auto it = s.series.find(name);
        if (it != s.series.end()) return it->second;
        return parse_series(s.field, s.vars, name); // inline literal fallback
    };
    auto pres_arg = [&](const char* key = "presentation") {
        return Scenario::resolve(s.presentations, q.at(key).get<std::string>(), "presentation");
    };

    if (cmd == "eval") {
        const DiscPoint& x = point_arg();
        SeriesElement f = series_arg();
        EvalResult e = pt_eval(x, f);
        rep.put("point", q.at("point").get<std::string>());
        rep.put("series", q.at("series").get<std::string>());
        rep.put("value", to_string(e.value));
        if (!e.exact()) rep.put("zero_at_precision", std::to_string(*e.zero_at_precision));
        rep.human.push_back("|" + q.at("series").get<std::string>() + "(" +
                            q.at("point").get<std::string>() + ")| = " + to_string(e.value) +
                            (e.exact() ? "" : " (zero at precision N=" +
                                                  std::to_string(*e.zero_at_precision) + ")"));
    } else if (cmd == "classify") {
        const DiscPoint& x = point_arg();
        rep.put("point", q.at("point").get<std::string>());
        rep.put("class", to_string(pt_classify(x)));
        rep.human.push_back(q.at("point").get<std::string>() + " : " +
                            to_string(pt_classify(x)));
    } else if (cmd == "member") {
        const DiscPoint& x = point_arg();
        std::string name = q.at("subset").get<std::string>();
        bool member;
        if (s.subsets.count(name)) member = rs_member(x, s.subsets.at(name));
        else if (s.regions.count(name)) member = rs_member(x, s.regions.at(name));
        else throw PreconditionError("scenario: unresolved subset name '" + name + "'");
        rep.put("point", q.at("point").get<std::string>());
        rep.put("subset", name);
        rep.put("member", yesno(member));
        rep.human.push_back(q.at("point").get<std::string>() + (member ? " lies in " : " avoids ") +
                            name);
    } else if (cmd == "continuous") {
        const DiscPoint& x = point_arg();
        const PairOfDefinition& pod =
            Scenario::resolve(s.pods, q.at("pod").get<std::string>(), "pair of definition");
        bool cont = pt_is_continuous(x, pod);
        rep.put("point", q.at("point").get<std::string>());
        rep.put("pod", q.at("pod").get<std::string>());
        rep.put("continuous", yesno(cont));
        rep.human.push_back(q.at("point").get<std::string>() + " continuous over " + pod.name +
                            ": " + yesno(cont));
    } else if (cmd == "support") {
        const DiscPoint& x = point_arg();
        SupportIdeal sup = pt_support(x);
        rep.put("point", q.at("point").get<std::string>());
        rep.put("support", to_string(sup));
        rep.human.push_back("supp = " + to_string(sup));
    } else if (cmd == "equivalent") {
        const DiscPoint& x = point_arg("point");
        const DiscPoint& y = point_arg("other");
        std::vector<SeriesElement> probes;
        for (const auto& p : q.value("probes", Json::array()))
            probes.push_back(parse_series(s.field, s.vars, p.get<std::string>()));
        bool eq = pt_equivalent(x, y, probes);
        rep.put("point", q.at("point").get<std::string>());
        rep.put("other", q.at("other").get<std::string>());
        rep.put("equivalent", yesno(eq));
        rep.human.push_back("equivalent: " + std::string(yesno(eq)));
    } else if (cmd == "cover") {
        std::string name = q.at("covering").get<std::string>();
        std::vector<DiscPoint> pts;
        std::vector<std::string> names;
        if (q.contains("points")) {
            for (const auto& pn : q.at("points")) {
                pts.push_back(Scenario::resolve(s.points, pn.get<std::string>(), "point"));
                names.push_back(pn.get<std::string>());
            }
        } else {
            for (const auto& [pn, pt] : s.points) {
                pts.push_back(pt);
                names.push_back(pn);
            }
        }
        CoverSampleReport cr;
        if (s.coverings.count(name)) {
            cr = cov_verify_on_samples(s.coverings.at(name), pts);
        } else {
            // an ad-hoc family given as a list of subset names
            std::vector<CoveringPiece> pieces;
            for (const auto& un : q.at("family"))
                pieces.push_back(CoveringPiece{
                    Scenario::resolve(s.subsets, un.get<std::string>(), "subset")});
            cr = cov_verify_on_samples(pieces, pts);
        }
        rep.put("covering", name);
        rep.put("method", cr.method);
        rep.put("all_covered", yesno(cr.all_covered));
        for (std::size_t i = 0; i < cr.rows.size(); ++i) {
            std::string pieces_str;
            for (const auto& p : cr.rows[i].pieces)
                pieces_str += (pieces_str.empty() ? "" : "; ") + p;
            rep.put("row" + std::to_string(i),
                    names[i] + " -> " + (cr.rows[i].covered ? pieces_str : "UNCOVERED"));
            rep.human.push_back(names[i] + ": " +
                                (cr.rows[i].covered ? "covered by " + pieces_str
                                                    : "uncovered (counterexample witness)"));
        }
    } else if (cmd == "reduce") {
        const CoveringSpec& c =
            Scenario::resolve(s.coverings, q.at("covering").get<std::string>(), "covering");
        auto tree = cov_reduce_to_simple(c);
        rep.put("covering", q.at("covering").get<std::string>());
        rep.put("depth", std::to_string(tree->depth()));
        rep.put("leaves", std::to_string(tree->leaf_count()));
        rep.human.push_back("binary refinement tree: depth " + std::to_string(tree->depth()) +
                            ", " + std::to_string(tree->leaf_count()) + " leaves");
        std::vector<const LaurentTree*> stack{tree.get()};
        std::vector<std::string> leaves;
        while (!stack.empty()) {
            const LaurentTree* n = stack.back();
            stack.pop_back();
            if (n->leaf) leaves.push_back(n->leaf->label);
            else {
                stack.push_back(n->plus.get());
                stack.push_back(n->minus.get());
            }
        }
        std::sort(leaves.begin(), leaves.end());
        for (std::size_t i = 0; i < leaves.size(); ++i)
            rep.put("leaf" + std::to_string(i), leaves[i]);
    } else if (cmd == "localize") {
        const HuberPresentation& p = pres_arg();
        const RationalSubset& u =
            Scenario::resolve(s.subsets, q.at("subset").get<std::string>(), "subset");
        Localization loc = pres_localize(p, u);
        rep.put("presentation", q.at("presentation").get<std::string>());
        rep.put("subset", q.at("subset").get<std::string>());
        rep.put("raw", pres_render_ring(loc.raw));
        HuberPresentation completed =
            loc.completed ? *loc.completed : pres_complete(loc.raw, opts.precision);
        rep.put("completed", pres_render(completed));
        rep.human.push_back("raw: " + pres_render_ring(loc.raw));
        rep.human.push_back("completed: " + pres_render(completed));
    } else if (cmd == "complete") {
        const HuberPresentation& p = pres_arg();
        HuberPresentation c = pres_complete(p, opts.precision);
        rep.put("presentation", q.at("presentation").get<std::string>());
        rep.put("completed", pres_render(c));
        rep.human.push_back("completed normal form: " + pres_render(c));
    } else if (cmd == "quotient") {
        const HuberPresentation& p = pres_arg();
        SeriesElement rel = parse_series(s.field, p.vars.empty() ? s.vars : p.var_names(),
                                         q.at("relation").get<std::string>());
        QuotientResult qr = pres_quotient(p, rel);
        rep.put("presentation", q.at("presentation").get<std::string>());
        rep.put("relation", q.at("relation").get<std::string>());
        rep.put("quotient", pres_render(qr.pres));
        rep.human.push_back("quotient normal form: " + pres_render(qr.pres));
        if (qr.inversion_witness) {
            rep.put("witness",
                    qr.inversion_witness->first + " = " + to_string(qr.inversion_witness->second));
            rep.human.push_back("inversion witness: " + qr.inversion_witness->first + " = " +
                                to_string(qr.inversion_witness->second));
        }
    } else if (cmd == "generic-fiber") {
        const HuberPresentation& p = pres_arg();
        PresentationFamily fam = pres_generic_fiber(p, q.value("n_max", opts.n_max));
        rep.put("presentation", q.at("presentation").get<std::string>());
        scenario_detail::family_report(rep, fam);
    } else if (cmd == "special-fiber") {
        const HuberPresentation& p = pres_arg();
        HuberPresentation sf = pres_special_fiber(p);
        rep.put("presentation", q.at("presentation").get<std::string>());
        rep.put("special_fiber", pres_render_ring(sf));
        rep.put("topology", sf.topology == TopologyKind::discrete ? "discrete" : "adic");
        rep.human.push_back("special fiber: " + pres_render_ring(sf) +
                            (sf.topology == TopologyKind::discrete ? " (discrete)" : " (adic)"));
    } else if (cmd == "fiber-product") {
        const HuberPresentation& pb = Scenario::resolve(s.presentations,
                                                        q.at("b").get<std::string>(), "presentation");
        const HuberPresentation& pc = Scenario::resolve(s.presentations,
                                                        q.at("c").get<std::string>(), "presentation");
        const HuberPresentation& pa = Scenario::resolve(s.presentations,
                                                        q.at("over").get<std::string>(), "presentation");
        bool ascending = q.value("mode", std::string("adic")) == "ascending";
        auto result = pres_fiber_product(pb, pc, pa, ascending, q.value("i_max", opts.n_max));
        rep.put("b", q.at("b").get<std::string>());
        rep.put("c", q.at("c").get<std::string>());
        rep.put("over", q.at("over").get<std::string>());
        rep.put("mode", ascending ? "ascending" : "adic");
        if (std::holds_alternative<HuberPresentation>(result)) {
            rep.put("product", pres_render(std::get<HuberPresentation>(result)));
            rep.human.push_back("product: " + pres_render(std::get<HuberPresentation>(result)));
        } else {
            scenario_detail::family_report(rep, std::get<PresentationFamily>(result));
        }
    } else if (cmd == "analytify") {
        const HuberPresentation& p = pres_arg();
        PresentationFamily fam = pres_analytify(p, q.value("k_max", opts.n_max));
        rep.put("presentation", q.at("presentation").get<std::string>());
        scenario_detail::family_report(rep, fam);
    } else if (cmd == "glue") {
        std::string family = q.at("family").get<std::string>();
        PresentationFamily fam;
        if (family == "projective_line") fam = projective_line_family(s.field);
        else if (family == "affine_line") fam = affine_line_family(s.field, opts.n_max);
        else throw PreconditionError("scenario: unknown glue family '" + family + "'");
        GlueSections g = pres_glue_sections(fam, opts.precision);
        rep.put("family", family);
        rep.put("sections", g.render());
        rep.human.push_back("global sections: " + g.render());
        if (q.contains("test_series")) {
            for (const auto& tname : q.at("test_series")) {
                const SeriesElement& f =
                    Scenario::resolve(s.series, tname.get<std::string>(), "series");
                rep.put("contains_" + tname.get<std::string>(), yesno(g.contains(f)));
                rep.human.push_back("contains " + tname.get<std::string>() + ": " +
                                    yesno(g.contains(f)));
            }
        }
    } else if (cmd == "sheaf-check") {
        const HuberPresentation& p = pres_arg();
        SeriesElement t = parse_series(s.field, p.var_names(), q.value("t", std::string("T")));
        ExactnessReport er = sc_simple_laurent(p, t, opts.precision);
        rep.put("presentation", q.at("presentation").get<std::string>());
        rep.put("t", q.value("t", std::string("T")));
        rep.put("precision", std::to_string(er.N) + "," + std::to_string(er.D));
        rep.put("injective", yesno(er.injective));
        rep.put("middle_exact", yesno(er.middle_exact));
        rep.put("surjective", yesno(er.surjective));
        rep.human.push_back("ring: " + er.ring);
        rep.human.push_back("covering: " + er.covering);
        if (er.injective && er.middle_exact && er.surjective)
            rep.human.push_back("exactness evidence at (N, D) = (" + std::to_string(er.N) + ", " +
                                std::to_string(er.D) + ")");
        if (er.kernel_witness) {
            rep.put("kernel_witness", render_sheaf_element(*er.kernel_witness, s.field));
            rep.put("witness_reverified", yesno(er.witness_reverified));
            rep.human.push_back("kernel witness (definitive non-sheafiness proof): " +
                                render_sheaf_element(*er.kernel_witness, s.field));
            for (const auto& c : er.witness_certificates) rep.human.push_back("  " + c);
        }
        if (er.middle_defect) rep.put("middle_defect", *er.middle_defect);
    } else if (cmd == "buzver") {
        BuzverWitnessReport br = sc_buzver_witness(q.value("n_max", 16));
        rep.put("n_max", std::to_string(q.value("n_max", 16)));
        rep.put("all_ok", yesno(br.all_ok));
        for (const auto& row : br.rows) {
            rep.put("n" + std::to_string(row.n), row.ok ? "ok" : "FAILED");
            rep.human.push_back("n = " + std::to_string(row.n) + ": " + row.in_a0_t + " ; " +
                                row.in_a0_tinv + " ; " + row.not_in_pin_a0);
        }
    } else if (cmd == "strictness") {
        const HuberPresentation& p = pres_arg();
        SeriesElement t = parse_series(s.field, p.var_names(), q.value("t", std::string("T")));
        StrictnessReport sr =
            sc_stably_uniform_strictness(p, t, opts.precision, q.value("m_max", 16));
        rep.put("presentation", q.at("presentation").get<std::string>());
        rep.put("found", yesno(sr.found));
        if (sr.found) rep.put("m", std::to_string(sr.m));
        rep.put("note", sr.note);
        rep.human.push_back(sr.note);
    } else if (cmd == "spa-count") {
        int rank = q.at("rank").get<int>();
        bool discrete = q.value("discrete", false);
        SpaCount sc = spa_affinoid_field_count(rank, discrete);
        rep.put("rank", std::to_string(rank));
        rep.put("discrete", yesno(discrete));
        rep.put("count", std::to_string(sc.count));
        rep.human.push_back("Spa(k, k+) has " + std::to_string(sc.count) + " points");
        for (std::size_t i = 0; i < sc.chain.size(); ++i) {
            rep.put("chain" + std::to_string(i), sc.chain[i]);
            rep.human.push_back("  " + sc.chain[i]);
        }
    } else if (cmd == "analytic-locus") {
        const PairOfDefinition& pod =
            Scenario::resolve(s.pods, q.at("pod").get<std::string>(), "pair of definition");
        auto fam = analytic_locus(pod);
        rep.put("pod", q.at("pod").get<std::string>());
        rep.put("pieces", std::to_string(fam.size()));
        for (std::size_t i = 0; i < fam.size(); ++i) {
            rep.put("piece" + std::to_string(i), fam[i].render());
            rep.human.push_back("piece " + std::to_string(i) + ": " + fam[i].render());
        }
    } else if (cmd == "in-weighted") {
        SeriesElement f = series_arg();
        std::vector<Rational> ws;
        for (const auto& w : q.at("weights")) ws.push_back(scenario_detail::json_rational(w));
        WeightDescriptor M = WeightDescriptor::singleton_pi_powers(ws);
        bool integral = q.value("integral", false);
        bool in = se_in_weighted(f, M, integral);
        rep.put("series", q.at("series").get<std::string>());
        rep.put("integral", yesno(integral));
        rep.put("member", yesno(in));
        rep.human.push_back(std::string("weighted membership: ") + yesno(in));
    } else {
        throw PreconditionError("scenario: unknown command '" + cmd + "'");
    }
    rep.put("status", "ok");
    return rep;
}

} // namespace adic
