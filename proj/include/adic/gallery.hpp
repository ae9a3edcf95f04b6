#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "adic/scenario.hpp"

namespace adic {

/// One bundled scenario and the machine-block values its queries must
/// produce: (query index, key, expected value).
struct GalleryRow {
    std::string name;
    std::string scenario;
    std::vector<std::tuple<int, std::string, std::string>> expects;
};

struct GalleryOutcome {
    struct Row {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Row> rows;
    bool all_pass = true;

    std::string table() const {
        std::string s = "gallery conformance\n";
        for (const auto& r : rows)
            s += std::string(r.pass ? "  [pass] " : "  [FAIL] ") + r.name +
                 (r.detail.empty() ? "" : "  (" + r.detail + ")") + "\n";
        s += all_pass ? "all rows pass\n" : "some rows FAILED\n";
        return s;
    }
};

inline std::vector<GalleryRow> gallery_rows() {
    std::vector<GalleryRow> rows;

    rows.push_back({"spectrum-affinoid-field",
                    R"({"field": {"prime": 2},
  "queries": [
    {"cmd": "spa-count", "rank": 1, "discrete": false},
    {"cmd": "spa-count", "rank": 1, "discrete": true},
    {"cmd": "spa-count", "rank": 3, "discrete": false},
    {"cmd": "spa-count", "rank": 4, "discrete": true}
  ]})",
                    {{0, "count", "1"}, {1, "count", "2"}, {2, "count", "3"}, {3, "count", "5"}}});

    rows.push_back({"covering-unit-disc",
                    R"({"field": {"prime": 2},
  "define": {
    "x": {"point": {"kind": "gauss_signed", "alpha": "0", "r_log": "0", "sign": "-"}},
    "T": {"series": "T"},
    "disc": {"disc_log": "0"},
    "disc7": {"disc_log": "-1/7"},
    "sphere": {"unit_sphere": true},
    "pod": {"pod": {"preset": "tate_disc"}}
  },
  "queries": [
    {"cmd": "eval", "point": "x", "series": "T"},
    {"cmd": "member", "point": "x", "subset": "disc"},
    {"cmd": "member", "point": "x", "subset": "sphere"},
    {"cmd": "member", "point": "x", "subset": "disc7"},
    {"cmd": "continuous", "point": "x", "pod": "pod"},
    {"cmd": "classify", "point": "x"}
  ]})",
                    {{0, "value", "g^(0,-1)"},
                     {1, "member", "true"},
                     {2, "member", "false"},
                     {3, "member", "false"},
                     {4, "continuous", "true"},
                     {5, "class", "rank2-signed"}}});

    rows.push_back({"closure-unit-disc",
                    R"({"field": {"prime": 2},
  "define": {
    "x": {"point": {"kind": "gauss_signed", "alpha": "0", "r_log": "0", "sign": "+"}},
    "T": {"series": "T"},
    "pod": {"pod": {"preset": "tate_disc"}}
  },
  "queries": [
    {"cmd": "eval", "point": "x", "series": "T"},
    {"cmd": "continuous", "point": "x", "pod": "pod"}
  ]})",
                    {{0, "value", "g^(0,1)"}, {1, "continuous", "true"}}});

    rows.push_back({"trivial-valuation-not-continuous",
                    R"({"field": {"prime": 2},
  "define": {
    "x": {"point": {"kind": "trivial"}},
    "pod": {"pod": {"preset": "tate_disc"}}
  },
  "queries": [{"cmd": "continuous", "point": "x", "pod": "pod"}]})",
                    {{0, "continuous", "false"}}});

    rows.push_back({"gauss-evaluation",
                    R"({"field": {"prime": 2},
  "define": {
    "g": {"point": {"kind": "gauss", "alpha": "0", "r_log": "-1"}},
    "f": {"series": "T^2 + p*T + p^3"}
  },
  "queries": [{"cmd": "eval", "point": "g", "series": "f"}]})",
                    {{0, "value", "g^(-2)"}}});

    rows.push_back({"simple-laurent-cover",
                    R"({"field": {"prime": 2},
  "define": {
    "x": {"point": {"kind": "gauss_signed", "alpha": "0", "r_log": "0", "sign": "-", "label": "x"}},
    "c": {"point": {"kind": "classical", "alpha": "2", "label": "c"}},
    "g1": {"point": {"kind": "gauss", "alpha": "0", "r_log": "0", "label": "g1"}},
    "W": {"simple_laurent": "T"}
  },
  "queries": [{"cmd": "cover", "covering": "W", "points": ["x", "c", "g1"]}]})",
                    {{0, "all_covered", "true"},
                     {0, "row0", "x -> W-"},
                     {0, "row1", "c -> W-"},
                     {0, "row2", "g1 -> W-; W+"}}});

    rows.push_back({"union-misses-one-point",
                    R"({"field": {"prime": 2},
  "define": {
    "x": {"point": {"kind": "gauss_signed", "alpha": "0", "r_log": "0", "sign": "-", "label": "x"}},
    "outer": {"rational": {"num": ["1"], "den": "T"}},
    "d1": {"disc_log": "-1"},
    "d2": {"disc_log": "-1/2"},
    "d3": {"disc_log": "-1/5"},
    "d4": {"disc_log": "-1/20"}
  },
  "queries": [{"cmd": "cover", "covering": "adhoc", "points": ["x"],
               "family": ["outer", "d1", "d2", "d3", "d4"]}]})",
                    {{0, "all_covered", "false"}, {0, "row0", "x -> UNCOVERED"}}});

    rows.push_back({"laurent-reduction",
                    R"({"field": {"prime": 2},
  "define": {"C": {"laurent": ["T", "1 - T", "p"]}},
  "queries": [{"cmd": "reduce", "covering": "C"}]})",
                    {{0, "depth", "3"}, {0, "leaves", "8"}}});

    rows.push_back({"open-disc-localization",
                    R"({"field": {"prime": 2},
  "define": {
    "D": {"presentation": {"preset": "tate_disc"}},
    "U": {"rational": {"num": ["T^2"], "den": "p"}}
  },
  "queries": [{"cmd": "localize", "presentation": "D", "subset": "U"}]})",
                    {{0, "completed", "(Q2<T,S>/(T^2 - 2*S), Z2<T,S>/(T^2 - 2*S))"}}});

    rows.push_back({"generic-fiber-closed-disc",
                    R"({"field": {"prime": 2},
  "define": {"X": {"presentation": {"preset": "integral_disc"}}},
  "queries": [{"cmd": "generic-fiber", "presentation": "X"}]})",
                    {{0, "pieces", "1"}, {0, "piece0", "(Q2<T>, Z2<T>)"}}});

    rows.push_back({"generic-fiber-open-disc",
                    R"({"field": {"prime": 2},
  "define": {"X": {"presentation": {"preset": "power_series_model"}}},
  "queries": [{"cmd": "generic-fiber", "presentation": "X", "n_max": 3}]})",
                    {{0, "pieces", "3"},
                     {0, "piece0", "(Q2<T,S>/(T - 2*S), Z2<T,S>/(T - 2*S))"},
                     {0, "piece1", "(Q2<T,S>/(T^2 - 2*S), Z2<T,S>/(T^2 - 2*S))"},
                     {0, "marker", "truncated ascending union (first 3 pieces)"}}});

    rows.push_back({"special-fibers",
                    R"({"field": {"prime": 2},
  "define": {
    "X": {"presentation": {"preset": "integral_disc"}},
    "Y": {"presentation": {"preset": "power_series_model"}},
    "Z": {"presentation": {"preset": "base_integers"}}
  },
  "queries": [
    {"cmd": "special-fiber", "presentation": "X"},
    {"cmd": "special-fiber", "presentation": "Y"},
    {"cmd": "special-fiber", "presentation": "Z"}
  ]})",
                    {{0, "special_fiber", "F2[T]"},
                     {0, "topology", "discrete"},
                     {1, "special_fiber", "F2[[T]]"},
                     {1, "topology", "adic"},
                     {2, "special_fiber", "F2"},
                     {2, "topology", "discrete"}}});

    rows.push_back({"fiber-product-polydisc",
                    R"({"field": {"prime": 2},
  "define": {
    "D1": {"presentation": {"preset": "tate_disc", "vars": ["T"]}},
    "D2": {"presentation": {"preset": "tate_disc", "vars": ["S"]}},
    "k": {"presentation": {"preset": "base_field"}}
  },
  "queries": [{"cmd": "fiber-product", "b": "D1", "c": "D2", "over": "k"}]})",
                    {{0, "product", "(Q2<T,S>, Z2<T,S>)"}}});

    rows.push_back({"fiber-product-ascending",
                    R"({"field": {"prime": 2},
  "define": {
    "X": {"presentation": {"preset": "power_series_model"}},
    "Qp": {"presentation": {"preset": "base_field"}},
    "Zp": {"presentation": {"preset": "base_integers"}}
  },
  "queries": [{"cmd": "fiber-product", "b": "X", "c": "Qp", "over": "Zp",
               "mode": "ascending", "i_max": 3}]})",
                    {{0, "pieces", "3"},
                     {0, "marker", "truncated ascending union (first 3 pieces)"}}});

    rows.push_back({"analytify-affine-line",
                    R"({"field": {"prime": 2},
  "define": {"A1": {"presentation": {"preset": "scheme", "vars": ["T"]}}},
  "queries": [{"cmd": "analytify", "presentation": "A1", "k_max": 3}]})",
                    {{0, "pieces", "4"},
                     {0, "piece0", "(Q2<T>, Z2<T>)"},
                     {0, "piece1", "(Q2<p*T>, Z2<p*T>)"},
                     {0, "marker", "truncated ascending union (first 3 pieces)"}}});

    rows.push_back({"analytify-classical-point",
                    R"({"field": {"prime": 2},
  "define": {"X": {"presentation": {"preset": "scheme", "vars": ["T"],
                                    "relations": ["T - 1/4"]}}},
  "queries": [{"cmd": "analytify", "presentation": "X", "k_max": 3}]})",
                    {{0, "pieces", "4"}}});

    rows.push_back({"projective-line-sections",
                    R"({"field": {"prime": 2},
  "define": {
    "const5": {"series": "5"},
    "linear": {"series": "T"}
  },
  "queries": [{"cmd": "glue", "family": "projective_line",
               "test_series": ["const5", "linear"]}]})",
                    {{0, "sections", "constants k (equalizer kernel dimension 1)"},
                     {0, "contains_const5", "true"},
                     {0, "contains_linear", "false"}}});

    rows.push_back({"entire-sections",
                    R"({"field": {"prime": 2},
  "define": {
    "fast": {"series": {"text": "0", "tail": {"kind": "supergeometric", "a": 1}}},
    "slow": {"series": {"text": "0", "tail": {"kind": "geometric", "a": 1}}}
  },
  "queries": [{"cmd": "glue", "family": "affine_line",
               "test_series": ["fast", "slow"]}]})",
                    {{0, "sections", "entire power series k{{T}}"},
                     {0, "contains_fast", "true"},
                     {0, "contains_slow", "false"}}});

    rows.push_back({"weighted-quotient-qp",
                    R"({"field": {"prime": 2},
  "define": {
    "W": {"presentation": {"preset": "weighted_integral", "weight": 1}},
    "geo": {"series": {"text": "0", "tail": {"kind": "geometric", "a": 1}}}
  },
  "queries": [
    {"cmd": "quotient", "presentation": "W", "relation": "p*T - 1"},
    {"cmd": "in-weighted", "series": "geo", "weights": ["1"]}
  ]})",
                    {{0, "quotient", "(Q2, Z2)"},
                     {0, "witness", "T = 1/2"},
                     {1, "member", "false"}}});

    rows.push_back({"tate-acyclicity-evidence",
                    R"({"field": {"prime": 2},
  "define": {"D": {"presentation": {"preset": "tate_disc"}}},
  "queries": [{"cmd": "sheaf-check", "presentation": "D", "t": "T"},
              {"cmd": "strictness", "presentation": "D", "t": "T"}]})",
                    {{0, "injective", "true"},
                     {0, "middle_exact", "true"},
                     {0, "surjective", "true"},
                     {1, "found", "true"},
                     {1, "m", "0"}}});

    rows.push_back({"non-sheafy-counterexample",
                    R"({"field": {"prime": 2},
  "define": {"A": {"presentation": {"preset": "not_sheafy"}}},
  "queries": [{"cmd": "sheaf-check", "presentation": "A", "t": "T"},
              {"cmd": "strictness", "presentation": "A", "t": "T", "m_max": 8}]})",
                    {{0, "injective", "false"},
                     {0, "kernel_witness", "Z"},
                     {0, "witness_reverified", "true"},
                     {0, "surjective", "true"},
                     {1, "found", "false"}}});

    rows.push_back({"non-sheafy-witness-certificates",
                    R"({"field": {"prime": 2},
  "queries": [{"cmd": "buzver", "n_max": 16}]})",
                    {{0, "all_ok", "true"}, {0, "n16", "ok"}}});

    rows.push_back({"analytic-locus",
                    R"({"field": {"prime": 2},
  "define": {
    "pod": {"pod": {"preset": "power_series_model"}},
    "tate": {"pod": {"preset": "tate_disc"}}
  },
  "queries": [{"cmd": "analytic-locus", "pod": "pod"},
              {"cmd": "analytic-locus", "pod": "tate"}]})",
                    {{0, "pieces", "2"},
                     {0, "piece0", "R(2, T / 2)"},
                     {0, "piece1", "R(2, T / T)"},
                     {1, "pieces", "1"},
                     {1, "piece0", "R(2 / 2)"}}});

    rows.push_back({"point-equivalence",
                    R"({"field": {"prime": 2},
  "define": {
    "x1": {"point": {"kind": "gauss_signed", "alpha": "0", "r_log": "0", "sign": "-", "epsilon2": "1/2"}},
    "x2": {"point": {"kind": "gauss_signed", "alpha": "0", "r_log": "0", "sign": "-", "epsilon2": "1/3"}},
    "g1": {"point": {"kind": "gauss", "alpha": "0", "r_log": "0"}}
  },
  "queries": [
    {"cmd": "equivalent", "point": "x1", "other": "x2", "probes": ["T", "p + T^2"]},
    {"cmd": "equivalent", "point": "g1", "other": "x1", "probes": ["T"]}
  ]})",
                    {{0, "equivalent", "true"}, {1, "equivalent", "false"}}});

    rows.push_back({"support-ideals",
                    R"({"field": {"prime": 2},
  "define": {
    "origin2": {"point": {"kind": "classical", "alpha": "0", "chart_var": "S", "chart_index": 2}},
    "g": {"point": {"kind": "gauss", "alpha": "0", "r_log": "-1"}}
  },
  "queries": [
    {"cmd": "support", "point": "origin2"},
    {"cmd": "support", "point": "g"}
  ]})",
                    {{0, "support", "(S)"}, {1, "support", "(0)"}}});

    return rows;
}

/// Run the bundled gallery and collect a conformance table. Failures are
/// table rows, not errors.
inline GalleryOutcome run_gallery(const Options& opts) {
    GalleryOutcome out;
    for (const auto& row : gallery_rows()) {
        GalleryOutcome::Row r;
        r.name = row.name;
        try {
            Scenario s = parse_scenario(row.scenario);
            std::vector<Report> reports;
            for (const auto& q : s.queries) reports.push_back(run_query(s, q, opts));
            r.pass = true;
            for (const auto& [qi, key, want] : row.expects) {
                if (qi < 0 || static_cast<std::size_t>(qi) >= reports.size()) {
                    r.pass = false;
                    r.detail = "missing query " + std::to_string(qi);
                    break;
                }
                std::string got = "<absent>";
                for (const auto& [k, v] : reports[static_cast<std::size_t>(qi)].machine)
                    if (k == key) got = v;
                if (got != want) {
                    r.pass = false;
                    r.detail = key + ": expected '" + want + "', got '" + got + "'";
                    break;
                }
            }
        } catch (const Error& e) {
            r.pass = false;
            r.detail = e.what();
        }
        out.all_pass = out.all_pass && r.pass;
        out.rows.push_back(std::move(r));
    }
    return out;
}

} // namespace adic
