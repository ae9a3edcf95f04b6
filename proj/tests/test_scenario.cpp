#include <catch2/catch_amalgamated.hpp>

#include "adic/gallery.hpp"

using namespace adic;

namespace {

const char* kSmallScenario = R"({
  "field": {"prime": 5, "residue_algebraic_over_finite": true},
  "define": {
    "x": {"point": {"kind": "gauss_signed", "alpha": "0", "r_log": "0", "sign": "-"}},
    "f": {"series": "1 + 3*T + p^2*T^2"},
    "U": {"rational": {"num": ["T"], "den": "p"}}
  },
  "queries": [
    {"cmd": "eval", "point": "x", "series": "f"},
    {"cmd": "member", "point": "x", "subset": "U"}
  ]
})";

} // namespace

TEST_CASE("scenario parsing resolves the documented literals") {
    Scenario s = parse_scenario(kSmallScenario);
    CHECK(s.field.prime == 5);
    CHECK(s.points.count("x") == 1);
    CHECK(s.series.count("f") == 1);
    CHECK(s.subsets.count("U") == 1);
    REQUIRE(s.queries.size() == 2);

    Options opts;
    Report r0 = run_query(s, s.queries[0], opts);
    // max(|1|, |3| eps, |25| eps^2) = 1
    bool found = false;
    for (const auto& [k, v] : r0.machine)
        if (k == "value") {
            found = true;
            CHECK(v == "g^(0,0)");
        }
    CHECK(found);

    // |T(x)| = eps > |p| = |g|, so x avoids R(T/p)
    Report r1 = run_query(s, s.queries[1], opts);
    for (const auto& [k, v] : r1.machine)
        if (k == "member") CHECK(v == "false");
}

TEST_CASE("scenario errors quote the violated precondition and the name") {
    Scenario s = parse_scenario(kSmallScenario);
    Options opts;
    Json bad = Json::parse(R"({"cmd": "eval", "point": "nope", "series": "f"})");
    try {
        run_query(s, bad, opts);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        std::string msg = e.what();
        CHECK(msg.find("nope") != std::string::npos);
        CHECK(msg.find("unresolved") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_scenario("{ not json"), PreconditionError);
    CHECK_THROWS_AS(parse_scenario(R"({"define": {"q": {"mystery": 1}}})"), PreconditionError);

    // malformed series exponents are rejected by the parser
    CHECK_THROWS_AS(parse_scenario(R"({"define": {"f": {"series": "T^x"}}})"),
                    PreconditionError);

    // epsilon2 consistency for signed points is validated, then discarded
    CHECK_THROWS_AS(
        parse_scenario(
            R"({"define": {"x": {"point": {"kind": "gauss_signed", "sign": "-", "epsilon2": "2"}}}})"),
        PreconditionError);
}

TEST_CASE("reports are byte-identical across runs") {
    Options opts;
    for (int round = 0; round < 2; ++round) {
        Scenario s1 = parse_scenario(kSmallScenario);
        Scenario s2 = parse_scenario(kSmallScenario);
        std::string out1, out2;
        for (const auto& q : s1.queries) out1 += run_query(s1, q, opts).render();
        for (const auto& q : s2.queries) out2 += run_query(s2, q, opts).render();
        CHECK(out1 == out2);
        CHECK(out1.find("--- machine") != std::string::npos);
    }
}

TEST_CASE("the bundled gallery passes") {
    Options opts;
    GalleryOutcome out = run_gallery(opts);
    for (const auto& r : out.rows) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.pass);
    }
    CHECK(out.all_pass);
    CHECK(out.rows.size() >= 15);
}

TEST_CASE("the gallery is robust at precision (4, 16)") {
    Options opts;
    opts.precision = Precision::of(4, 16);
    GalleryOutcome out = run_gallery(opts);
    for (const auto& r : out.rows) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.pass);
    }
    CHECK(out.all_pass);
}
