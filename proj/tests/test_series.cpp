#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "adic/series.hpp"
#include "adic/series_parse.hpp"

using namespace adic;

namespace {

const BaseField k3(3);

SeriesElement S(const std::string& text, const BaseField& k = k3,
                std::vector<std::string> vars = {"T"}) {
    return parse_series(k, std::move(vars), text);
}

// ---- independent oracles ---------------------------------------------

// Naive Taylor re-expansion: repeatedly divide by (T - alpha) with
// synthetic (Horner) division, collecting remainders b_0, b_1, ...
std::map<int, Rational> shift_oracle(const std::map<int, Rational>& poly, const Rational& alpha) {
    int deg = 0;
    for (const auto& [i, c] : poly) deg = std::max(deg, i);
    std::vector<Rational> cs(static_cast<std::size_t>(deg) + 1, Rational(0));
    for (const auto& [i, c] : poly) cs[static_cast<std::size_t>(i)] = c;
    std::map<int, Rational> out;
    for (int j = 0; j <= deg; ++j) {
        Rational b = cs.back();
        std::vector<Rational> q;
        if (cs.size() > 1) {
            q.assign(cs.size() - 1, Rational(0));
            for (std::size_t i = cs.size() - 1; i-- > 0;) {
                q[i] = b;
                b = cs[i] + alpha * b;
            }
        }
        if (b != 0) out[j] = b;
        if (q.empty()) break;
        cs = q;
    }
    return out;
}

// Direct enumeration of max_i |b_i| r^i over the shifted coefficients.
ValueGroupElement gauss_oracle(const BaseField& k, const std::map<int, Rational>& poly,
                               const Rational& alpha, const ValueGroupElement& r) {
    std::map<int, Rational> b = alpha == 0 ? poly : shift_oracle(poly, alpha);
    ValueGroupElement best = ValueGroupElement::zero();
    for (const auto& [i, c] : b) {
        if (c == 0) continue;
        ValueGroupElement term =
            vg_mul(ValueGroupElement::from_logvec({-padic_val(c, Integer(k.prime))})
                       .embedded(r.rank()),
                   vg_pow(r, i));
        if (best.is_zero() || vg_lt(best, term)) best = term;
    }
    return best;
}

std::map<int, Rational> random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 12);
    std::map<int, Rational> poly;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) {
        Rational c(num(rng), den(rng));
        if (c != 0) poly[i] = c;
    }
    return poly;
}

SeriesElement from_poly(const BaseField& k, const std::map<int, Rational>& poly) {
    SeriesElement s = SeriesElement::constant(k, {"T"}, FieldElement(0));
    for (const auto& [i, c] : poly)
        s = se_add(s, SeriesElement::monomial(k, {"T"}, {i, 0}, FieldElement(c)));
    return s;
}

} // namespace

TEST_CASE("series literals parse to exact heads") {
    SeriesElement f = S("1 + 3*T + p^2*T^2");
    CHECK(f.head().at({0, 0}).rational_value() == 1);
    CHECK(f.head().at({1, 0}).rational_value() == 3);
    CHECK(f.head().at({2, 0}).rational_value() == 9);
    CHECK(S("T^-1").head().count({-1, 0}) == 1);
    CHECK(S("p*S - T^2", k3, {"T", "S"}).head().at({0, 1}).rational_value() == 3);
    CHECK_THROWS_AS(S("T^x"), PreconditionError);
    CHECK_THROWS_AS(S("1 + Q"), PreconditionError);
    CHECK_THROWS_AS(S("T^(1/2)"), PreconditionError);
    CHECK(S("p^(1/2)").constant_value().pi_exponent() == Rational(1, 2));
}

TEST_CASE("se_add and se_mul on the stated examples") {
    CHECK(se_add(S("T"), S("p*T")) == S("4*T")); // (1+p)T with p = 3
    CHECK(se_mul(S("1 + T"), S("1 - T")) == S("1 - T^2"));

    // telescoping product oracle: (sum p^i T^i truncated at D=4) * (1 - p*T)
    SeriesElement geo = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(1)));
    SeriesElement trunc = geo.with_precision(Precision{std::nullopt, 4});
    REQUIRE(trunc.head().at({4, 0}).rational_value() == 81);
    SeriesElement prod = se_mul(trunc, S("1 - p*T"));
    CHECK(prod == S("1").with_precision(Precision{std::nullopt, 4}));
    CHECK(prod.precision().D == 4);

    CHECK_THROWS_AS(se_add(S("T"), S("Z", k3, {"Z"})), PreconditionError);
}

TEST_CASE("tail arithmetic stays in the catalog where possible") {
    SeriesElement geo = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(1)));
    SeriesElement sum = se_add(geo, geo);
    REQUIRE(sum.tail().has_value());
    CHECK(sum.tail()->c == 2);

    SeriesElement cancel = se_sub(geo, geo);
    CHECK(cancel.is_zero());

    // adding a polynomial shifts the tail start past its degree
    SeriesElement mixed = se_add(geo, S("5*T^2"));
    REQUIRE(mixed.tail().has_value());
    CHECK(mixed.tail()->start == 3);
    CHECK(mixed.head().at({2, 0}).rational_value() == Rational(14)); // 9 + 5

    // multiplying by a monomial re-indexes a geometric law exactly
    SeriesElement shifted = se_mul(geo, S("p*T"));
    REQUIRE(shifted.tail().has_value());
    CHECK(shifted.tail()->start == 1);
    CHECK(shifted.tail()->a == 1);
    CHECK(shifted.tail()->b == 0); // p * p^(i-1) = p^i
    CHECK(shifted.tail()->c == 1);

    // supergeometric times a non-constant monomial leaves the catalog
    SeriesElement super = SeriesElement::from_tail(k3, "T", TailSpec::supergeometric(Rational(1)));
    SeriesElement dropped = se_mul(super, S("T"));
    CHECK_FALSE(dropped.tail().has_value());
    CHECK(dropped.precision().D == kFallbackDegree);
}

TEST_CASE("gauss evaluation matches the enumeration oracle on the stated examples") {
    // f = T^2 + p*T + p^3 at alpha = 0, r = |p|: max(|p^3|, |p| |p|, |p|^2)
    SeriesElement f = S("T^2 + p*T + p^3");
    ValueGroupElement r = ValueGroupElement::from_logvec({Rational(-1)});
    EvalResult res = se_gauss_eval(f, FieldElement(0), r);
    CHECK(res.exact());
    CHECK(res.value == ValueGroupElement::from_logvec({Rational(-2)}));
    CHECK(res.value == gauss_oracle(k3, {{0, Rational(27)}, {1, Rational(3)}, {2, Rational(1)}},
                                    Rational(0), r));

    // constant 1 evaluates to the identity at any radius
    CHECK(se_gauss_eval(S("1"), FieldElement(Rational(1, 2)), r).value ==
          ValueGroupElement::identity(1));

    // rank-2 radius epsilon = (0,-1): |f(x_{0,1-})| = max |a_i| eps^i
    ValueGroupElement eps = ValueGroupElement::from_logvec({Rational(0), Rational(-1)});
    EvalResult at_eps = se_gauss_eval(S("T"), FieldElement(0), eps);
    CHECK(at_eps.value == eps);
    EvalResult at_eps2 = se_gauss_eval(S("p + T^2"), FieldElement(0), eps);
    CHECK(at_eps2.value == ValueGroupElement::from_logvec({Rational(0), Rational(-2)}));

    CHECK_THROWS_AS(se_gauss_eval(S("T"), FieldElement(0), ValueGroupElement::zero()),
                    PreconditionError);
    CHECK_THROWS_AS(se_gauss_eval(S("T"), FieldElement(Rational(1, 3)), r), PreconditionError);
}

TEST_CASE("gauss evaluation is a valuation: 1000 random pairs against the oracle") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> alpha_num(-3, 3);
    std::uniform_int_distribution<int> radius_num(-3, 0);
    for (int t = 0; t < 1000; ++t) {
        auto pf = random_poly(rng, 9);
        auto pg = random_poly(rng, 9);
        Rational alpha(alpha_num(rng) * 3); // |alpha| <= 1 in the 3-adic model
        if (t % 3 == 0) alpha = 0;
        ValueGroupElement r = ValueGroupElement::from_logvec({Rational(radius_num(rng), 2)});
        SeriesElement f = from_poly(k3, pf), g = from_poly(k3, pg);

        EvalResult vf = se_gauss_eval(f, FieldElement(alpha), r);
        EvalResult vg_ = se_gauss_eval(g, FieldElement(alpha), r);
        EvalResult vfg = se_gauss_eval(se_mul(f, g), FieldElement(alpha), r);
        EvalResult vsum = se_gauss_eval(se_add(f, g), FieldElement(alpha), r);

        CHECK(vf.value == gauss_oracle(k3, pf, alpha, r));
        CHECK(vfg.value == vg_mul(vf.value, vg_.value)); // multiplicative
        ValueGroupElement vmax = vg_le(vf.value, vg_.value) ? vg_.value : vf.value;
        CHECK(vg_le(vsum.value, vmax)); // ultrametric
        if (vg_cmp(vf.value, vg_.value) != Ordering::EQ) CHECK(vsum.value == vmax);
    }
}

TEST_CASE("taylor shift round-trips on polynomials of degree <= 32") {
    std::mt19937_64 rng(9001);
    for (int t = 0; t < 200; ++t) {
        auto poly = random_poly(rng, 32);
        Rational alpha(std::uniform_int_distribution<long>(-5, 5)(rng));
        auto shifted = taylor_shift(from_poly(k3, poly), alpha);
        SeriesElement back = from_poly(k3, shifted);
        auto round = taylor_shift(back, -alpha);
        CHECK(round == poly);
        CHECK(shifted == shift_oracle(poly, alpha));
    }
}

TEST_CASE("membership in restricted algebras over the catalog") {
    SeriesElement super = SeriesElement::from_tail(k3, "T", TailSpec::supergeometric(Rational(1)));
    SeriesElement geo = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(1)));
    SeriesElement ones = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(0)));

    for (int m = 0; m <= 10; ++m) CHECK(se_in_restricted(super, m)); // sum pi^(i^2) T^i
    CHECK_FALSE(se_in_restricted(ones, 1));                          // sum T^i at m = 1
    CHECK(se_in_restricted(S("1 + 7*T^5"), 12));                     // polynomials always pass

    CHECK(se_is_entire(super));
    CHECK_FALSE(se_is_entire(geo));
    CHECK(se_is_entire(S("1")));

    // closed form cross-check: |a_i| p^(im) decays iff a > m, spot check numerically
    for (int m = 0; m <= 3; ++m) {
        bool claimed = se_in_restricted(geo, m);
        // v_p(a_i) - i*m = i(1 - m) must go to infinity
        bool numeric = (1 - m) > 0;
        CHECK(claimed == numeric);
    }

    // monotonicity: membership at m implies membership at any m' <= m
    std::vector<SeriesElement> fs{super, geo, ones, S("1 + T^3")};
    for (const auto& f : fs)
        for (int m = -2; m <= 6; ++m)
            if (se_in_restricted(f, m))
                for (int mp = -2; mp <= m; ++mp) CHECK(se_in_restricted(f, mp));

    SeriesElement trunc = S("1 + T").with_precision(Precision{std::nullopt, 8});
    CHECK_THROWS_AS(se_in_restricted(trunc, 1), PreconditionError);
}

TEST_CASE("membership in open-disc section rings") {
    SeriesElement ones = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(0)));
    SeriesElement inv = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(-1)));
    CHECK(se_in_open_disc_sections(ones, 1));        // p^(-i/1) -> 0
    CHECK_FALSE(se_in_open_disc_sections(inv, 2));   // p^i p^(-i/2) grows
    CHECK(se_in_open_disc_sections(S("0"), 3));
    CHECK_THROWS_AS(se_in_open_disc_sections(ones, 0), PreconditionError);
}

TEST_CASE("membership in weighted algebras with singleton weights") {
    WeightDescriptor M = WeightDescriptor::singleton_pi_powers({Rational(1)});
    SeriesElement geo = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(1)));
    CHECK_FALSE(se_in_weighted(geo, M, false)); // sum p^i T^i not in Zp<T>_{p}
    SeriesElement fast = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(2)));
    CHECK(se_in_weighted(fast, M, false));      // sum p^(2i) T^i converges
    CHECK(se_in_weighted(fast, M, true));       // and is integral: v_p = 2i >= i
    CHECK(se_in_weighted(S("1"), M, false));

    // integral condition rejects a single bad head coefficient
    SeriesElement bad = se_add(fast, S("T^2"));
    CHECK_FALSE(se_in_weighted(bad, M, true));
    CHECK(se_in_weighted(bad, M, false));

    WeightDescriptor empty;
    empty.sets.push_back({FieldElement(0)});
    CHECK_THROWS_AS(se_in_weighted(geo, empty, false), PreconditionError);
}

TEST_CASE("precision-aware equality") {
    Precision p812 = Precision::of(8, 32);
    CHECK(se_equal_at_precision(S("1 + p^9*T"), S("1"), p812));
    CHECK_FALSE(se_equal_at_precision(S("1 + p^7*T"), S("1"), p812));
    CHECK(se_equal_at_precision(S("T^40"), S("0"), p812)); // beyond the degree window
    SeriesElement geo = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(1)));
    CHECK_FALSE(se_equal_at_precision(geo, S("0"), Precision{8, std::nullopt}));
    SeriesElement deep = SeriesElement::from_tail(k3, "T", TailSpec::geometric(Rational(1), Rational(9)));
    CHECK(se_equal_at_precision(deep, S("0"), Precision{8, std::nullopt}));
}

TEST_CASE("substitution helpers") {
    // S := T^-1 eliminates S: p*S - T^2 becomes p*T^-1 - T^2
    SeriesElement rel = S("p*S - T^2", k3, {"T", "S"});
    SeriesElement out = se_substitute_monomial(rel, "S", FieldElement(1), "T", -1);
    CHECK(out == S("p*T^-1 - T^2"));

    CHECK(se_substitute(S("T^2 + p"), {FieldElement(Rational(3))}).rational_value() == 12);

    // undecidable evaluation: all known coefficients vanish mod p^N
    SeriesElement small = S("p^9*T").with_precision(Precision{8, std::nullopt});
    EvalResult z = se_gauss_eval(small, FieldElement(0), ValueGroupElement::identity(1));
    CHECK(z.value.is_zero());
    CHECK(z.zero_at_precision == 8);
}
