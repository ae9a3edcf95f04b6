#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "adic/series_parse.hpp"
#include "adic/subset.hpp"

using namespace adic;

namespace {

const BaseField k3(3);

SeriesElement S(const std::string& text) { return parse_series(k3, {"T"}, text); }

DiscPoint x_01_minus() {
    return DiscPoint::gauss_signed(k3, FieldElement(0), Rational(0), GaussSign::minus, {},
                                   "x_{0,1-}");
}

std::vector<DiscPoint> sample_points() {
    return {
        DiscPoint::classical(k3, FieldElement(0), {}, "x_0"),
        DiscPoint::classical(k3, FieldElement(Rational(3)), {}, "x_p"),
        DiscPoint::classical(k3, FieldElement(Rational(2)), {}, "x_2"),
        DiscPoint::gauss(k3, FieldElement(0), Rational(0), {}, "gauss(0,1)"),
        DiscPoint::gauss(k3, FieldElement(0), Rational(-1), {}, "gauss(0,|p|)"),
        DiscPoint::gauss(k3, FieldElement(Rational(3)), Rational(-1, 2), {}, "gauss(p,p^-1/2)"),
        x_01_minus(),
    };
}

} // namespace

TEST_CASE("membership on the unit-disc landmarks") {
    // the whole space contains every point with |1(x)| != 0
    RationalSubset whole = RationalSubset::whole_space(k3, "T");
    for (const auto& x : sample_points()) CHECK(rs_member(x, whole));

    // x_{0,1-} avoids the sphere and every strictly smaller disc
    SubsetIntersection sphere = unit_sphere(k3, "T");
    CHECK_FALSE(rs_member(x_01_minus(), sphere));
    CHECK(rs_member(DiscPoint::gauss(k3, FieldElement(0), Rational(0)), sphere));
    CHECK_FALSE(rs_member(x_01_minus(), RationalSubset::disc(k3, "T", Rational(-1, 7))));
    for (int m = 1; m <= 20; ++m)
        CHECK_FALSE(rs_member(x_01_minus(), RationalSubset::disc(k3, "T", Rational(-1, m))));
    // but it lies in the closed unit disc
    CHECK(rs_member(x_01_minus(), RationalSubset::disc(k3, "T", Rational(0))));

    // a classical point inside: |g(x)| = 0 makes membership false, not an error
    RationalSubset over_t = RationalSubset::of({S("1")}, S("T"));
    CHECK_FALSE(rs_member(DiscPoint::classical(k3, FieldElement(0)), over_t));
}

TEST_CASE("certificates for open ideals") {
    auto cert = find_bezout_certificate({S("T"), S("1 - T")});
    REQUIRE(cert.has_value());
    CHECK(verify_bezout(*cert, {S("T"), S("1 - T")}));

    auto pi_cert = find_bezout_certificate({S("p")});
    REQUIRE(pi_cert.has_value());

    auto none = find_bezout_certificate({S("T"), S("T^2")});
    CHECK_FALSE(none.has_value());

    BezoutCertificate bogus{{S("1"), S("0")}};
    CHECK_FALSE(verify_bezout(bogus, {S("T"), S("1 - T")}));
    CHECK(verify_bezout(BezoutCertificate{{S("1"), S("1")}}, {S("T"), S("1 - T")}));
}

TEST_CASE("covering pieces") {
    // simple Laurent for t = T: {|T| <= 1}, {|T| >= 1}
    auto simple = cov_pieces(CoveringSpec::simple_laurent(S("T")));
    REQUIRE(simple.size() == 2);
    CHECK(simple[0].render() == "W-");
    CHECK(simple[1].render() == "W+");
    CHECK(piece_member(x_01_minus(), simple[0]));
    CHECK_FALSE(piece_member(x_01_minus(), simple[1]));

    // standard Laurent with two generators: 4 sign patterns
    auto pieces = cov_pieces(CoveringSpec::standard_laurent({S("T"), S("1 - T")}));
    CHECK(pieces.size() == 4);

    // standard rational for (T, 1-T) with certificate 1 = T + (1-T)
    auto rat = cov_pieces(CoveringSpec::standard_rational({S("T"), S("1 - T")}));
    REQUIRE(rat.size() == 2);
    const auto& u0 = std::get<RationalSubset>(rat[0].impl);
    CHECK(u0.nums.size() == 2);
    CHECK(u0.den == S("T"));
    const auto& u1 = std::get<RationalSubset>(rat[1].impl);
    CHECK(u1.den == S("1 - T"));

    // a missing certificate is a hard precondition failure
    CoveringSpec bad = CoveringSpec::standard_rational({S("T"), S("T^2")});
    CHECK_THROWS_AS(cov_pieces(bad), PreconditionError);
}

TEST_CASE("sample verification of coverings") {
    auto pts = sample_points();

    // simple Laurent t = T covers every sample; gauss(0,1) sits in both pieces
    CoverSampleReport rep =
        cov_verify_on_samples(CoveringSpec::simple_laurent(S("T")), pts);
    CHECK(rep.all_covered);
    for (const auto& row : rep.rows) {
        if (row.point == "gauss(0,1)") {
            REQUIRE(row.pieces.size() == 2);
        }
        if (row.point == "x_{0,1-}") {
            REQUIRE(row.pieces.size() == 1);
            CHECK(row.pieces[0] == "W-");
        }
        if (row.point == "x_p") CHECK(row.pieces[0] == "W-");
    }

    // the non-covering family: sphere pieces and small discs miss x_{0,1-}
    std::vector<CoveringPiece> family;
    SubsetIntersection sphere = unit_sphere(k3, "T");
    for (const auto& part : sphere.parts) family.push_back(CoveringPiece{part});
    // represent the sphere by its binding condition |1| <= |T| plus discs
    family.clear();
    family.push_back(CoveringPiece{RationalSubset::unit_annulus_outer(k3, "T")});
    for (int m = 1; m <= 20; ++m)
        family.push_back(CoveringPiece{RationalSubset::disc(k3, "T", Rational(-1, m))});
    CoverSampleReport gap = cov_verify_on_samples(family, {x_01_minus()});
    CHECK_FALSE(gap.all_covered);
    CHECK(gap.rows[0].pieces.empty()); // the uncovered witness

    // empty sample list passes vacuously
    CHECK(cov_verify_on_samples(family, {}).all_covered);

    // standard Laurent pieces cover by order totality: random samples
    CoveringSpec laurent = CoveringSpec::standard_laurent({S("T"), S("1 - T"), S("p")});
    CoverSampleReport lrep = cov_verify_on_samples(laurent, pts);
    CHECK(lrep.all_covered);

    // standard rational pieces cover whenever the certificate exists
    std::mt19937_64 rng(64);
    std::uniform_int_distribution<long> num(-9, 9);
    std::vector<DiscPoint> random_pts;
    for (int i = 0; i < 500; ++i) {
        if (i % 2 == 0) {
            random_pts.push_back(DiscPoint::classical(k3, FieldElement(Rational(num(rng)))));
        } else {
            random_pts.push_back(
                DiscPoint::gauss(k3, FieldElement(Rational(3 * num(rng))), Rational(num(rng) % 3 - 2)));
        }
    }
    CoverSampleReport rrep =
        cov_verify_on_samples(CoveringSpec::standard_rational({S("T"), S("1 - T")}), random_pts);
    CHECK(rrep.all_covered);
}

TEST_CASE("reduction of Laurent coverings to simple ones") {
    // (t1) is already simple: a single split
    auto t1 = cov_reduce_to_simple(CoveringSpec::standard_laurent({S("T")}));
    CHECK(t1->depth() == 1);
    CHECK(t1->leaf_count() == 2);

    // (t1, t2): root splits on t2, children on t1, 4 leaves
    auto t2 = cov_reduce_to_simple(CoveringSpec::standard_laurent({S("T"), S("1 - T")}));
    CHECK(t2->depth() == 2);
    CHECK(t2->leaf_count() == 4);
    REQUIRE(t2->split.has_value());
    CHECK(*t2->split == S("1 - T"));
    REQUIRE(t2->minus->split.has_value());
    CHECK(*t2->minus->split == S("T"));
    CHECK(t2->minus->remaining.size() == 1);

    // structural recursion oracle: depth-3 tree with 8 leaves
    auto t3 = cov_reduce_to_simple(CoveringSpec::standard_laurent({S("T"), S("1 - T"), S("p")}));
    CHECK(t3->depth() == 3);
    CHECK(t3->leaf_count() == 8);

    CHECK_THROWS_AS(cov_reduce_to_simple(CoveringSpec::standard_laurent({})), PreconditionError);

    // leaf pieces agree with the original sign-pattern pieces on samples
    auto pieces = cov_pieces(CoveringSpec::standard_laurent({S("T"), S("1 - T"), S("p")}));
    auto pts = sample_points();
    std::vector<const LaurentTree*> stack{t3.get()};
    while (!stack.empty()) {
        const LaurentTree* node = stack.back();
        stack.pop_back();
        if (node->leaf) {
            bool found = false;
            for (const auto& piece : pieces) {
                const auto& sp = std::get<SignPatternPiece>(piece.impl);
                if (sp.le == node->leaf->le) {
                    found = true;
                    for (const auto& x : pts)
                        CHECK(piece_member(x, *node->leaf) == piece_member(x, piece));
                }
            }
            CHECK(found);
        } else {
            stack.push_back(node->minus.get());
            stack.push_back(node->plus.get());
        }
    }
}

TEST_CASE("analytic locus families") {
    // Zp[[T]] with I = (p, T): two pieces R(p,T/p) and R(p,T/T)
    auto fam = analytic_locus(pod_power_series_model(k3));
    REQUIRE(fam.size() == 2);
    CHECK(fam[0].den == S("p"));
    CHECK(fam[1].den == S("T"));
    CHECK(fam[0].nums.size() == 2);

    // Tate ring with I = (pi): the single piece R(pi/pi) is the whole space
    auto tate = analytic_locus(pod_tate_disc(k3));
    REQUIRE(tate.size() == 1);
    for (const auto& x : sample_points()) CHECK(rs_member(x, tate[0]));

    // single non-unit generator: the locus |s| != 0
    PairOfDefinition single;
    single.name = "(A0, (T))";
    single.ideal_gens = {S("T")};
    auto locus = analytic_locus(single);
    REQUIRE(locus.size() == 1);
    CHECK_FALSE(rs_member(DiscPoint::classical(k3, FieldElement(0)), locus[0]));
    CHECK(rs_member(DiscPoint::classical(k3, FieldElement(Rational(3))), locus[0]));

    PairOfDefinition empty;
    CHECK_THROWS_AS(analytic_locus(empty), PreconditionError);
}

TEST_CASE("generalized rational expansion agrees pointwise") {
    // on the Zp[[T]] generic-fiber family: R(T^n / p) for the sampled points
    std::vector<SeriesElement> ideal = {S("p"), S("T")};
    std::vector<DiscPoint> pts{
        DiscPoint::classical(k3, FieldElement(Rational(3)), {}, "x_p"),
        DiscPoint::classical(k3, FieldElement(Rational(9)), {}, "x_p2"),
        DiscPoint::gauss(k3, FieldElement(0), Rational(-1), {}, "gauss(0,|p|)"),
        DiscPoint::gauss(k3, FieldElement(0), Rational(-1, 2), {}, "gauss(0,p^-1/2)"),
        x_01_minus(),
        DiscPoint::classical(k3, FieldElement(0), {}, "x_0"),
    };
    for (int n = 1; n <= 3; ++n) {
        SeriesElement tn = SeriesElement::monomial(k3, {"T"}, {n, 0}, FieldElement(1));
        RationalSubset u{{tn}, S("p"), std::nullopt, ""};
        auto expansion = generalized_rational_expansion(u, ideal, 8);
        REQUIRE(expansion.size() == 8);
        for (const auto& x : pts) {
            bool lhs = rs_member(x, u);
            bool rhs = false;
            for (const auto& piece : expansion) rhs = rhs || rs_member(x, piece);
            CHECK(lhs == rhs);
        }
    }
    // E_r generators of (p,T)^r: r+1 monomials p^a T^b with a+b = r
    CHECK(ideal_power_generators(ideal, 3).size() == 4);
}
