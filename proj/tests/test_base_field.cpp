#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "adic/base_field.hpp"

using namespace adic;

namespace {

// Trial-division factorization oracle for v_p of an integer.
long vp_factor_oracle(long n, long p) {
    REQUIRE(n != 0);
    if (n < 0) n = -n;
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

Rational random_nonzero_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-400, 400);
    std::uniform_int_distribution<long> den(1, 120);
    Rational r;
    do {
        r = Rational(num(rng), den(rng));
    } while (r == 0);
    return r;
}

} // namespace

TEST_CASE("BaseField validates its prime") {
    CHECK_NOTHROW(BaseField(2));
    CHECK_NOTHROW(BaseField(97));
    CHECK_THROWS_AS(BaseField(1), PreconditionError);
    CHECK_THROWS_AS(BaseField(15), PreconditionError);
}

TEST_CASE("fe_abs on the stated examples") {
    BaseField k2(2);
    CHECK(fe_abs(k2, FieldElement(Rational(2))) ==
          ValueGroupElement::from_logvec({Rational(-1)}));
    // v_2(12) = 2 by the factorization oracle
    CHECK(vp_factor_oracle(12, 2) == 2);
    CHECK(fe_abs(k2, FieldElement(Rational(12))) ==
          ValueGroupElement::from_logvec({Rational(-vp_factor_oracle(12, 2))}));
    CHECK(fe_abs(k2, FieldElement(Rational(0))).is_zero());
}

TEST_CASE("topological nilpotence and powerboundedness") {
    BaseField k5(5);
    CHECK(fe_is_topologically_nilpotent(k5, FieldElement(Rational(5))));
    CHECK_FALSE(fe_is_topologically_nilpotent(k5, FieldElement(Rational(1))));
    CHECK_FALSE(fe_is_topologically_nilpotent(k5, FieldElement(Rational(1, 5))));

    CHECK(fe_is_powerbounded(k5, FieldElement(Rational(5))));
    CHECK_FALSE(fe_is_powerbounded(k5, FieldElement(Rational(3, 5))));
    CHECK(fe_is_powerbounded(k5, FieldElement(Rational(7))));
}

TEST_CASE("formal pi powers value and resolve correctly") {
    BaseField k3(3);
    FieldElement half = FieldElement::pi_power(Rational(1, 2));
    CHECK(fe_abs(k3, half) == ValueGroupElement::from_logvec({Rational(-1, 2)}));
    CHECK_FALSE(half.resolvable(k3));
    CHECK_THROWS_AS(half.resolved(k3), PreconditionError);

    FieldElement two = FieldElement::pi_power(Rational(2));
    CHECK(two.resolved(k3) == Rational(9));
    FieldElement inv = FieldElement::pi_power(Rational(-1));
    CHECK(inv.resolved(k3) == Rational(1, 3));
    CHECK(fe_mul(k3, half, half).resolved(k3) == Rational(3));
}

TEST_CASE("fe_abs is multiplicative on random pairs") {
    BaseField k3(3);
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 1000; ++t) {
        FieldElement a(random_nonzero_rational(rng));
        FieldElement b(random_nonzero_rational(rng));
        CHECK(fe_abs(k3, fe_mul(k3, a, b)) == vg_mul(fe_abs(k3, a), fe_abs(k3, b)));
    }
}

TEST_CASE("ultrametric inequality with equality for distinct values") {
    BaseField k2(2);
    std::mt19937_64 rng(77);
    for (int t = 0; t < 1000; ++t) {
        FieldElement a(random_nonzero_rational(rng));
        FieldElement b(random_nonzero_rational(rng));
        ValueGroupElement va = fe_abs(k2, a);
        ValueGroupElement vb = fe_abs(k2, b);
        ValueGroupElement vs = fe_abs(k2, fe_add(k2, a, b));
        ValueGroupElement vmax = vg_le(va, vb) ? vb : va;
        CHECK(vg_le(vs, vmax));
        if (vg_cmp(va, vb) != Ordering::EQ) CHECK(vs == vmax);
    }
}

TEST_CASE("powerbounded iff the inverse is not below one") {
    BaseField k7(7);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 500; ++t) {
        Rational a = random_nonzero_rational(rng);
        bool bounded = fe_is_powerbounded(k7, FieldElement(a));
        ValueGroupElement inv_abs = fe_abs(k7, FieldElement(Rational(1) / a));
        CHECK(bounded == vg_le(ValueGroupElement::identity(1), inv_abs));
    }
}

TEST_CASE("field elements render exactly") {
    CHECK(to_string(FieldElement(Rational(-3, 6))) == "-1/2");
    CHECK(to_string(FieldElement::pi_power(Rational(1, 2))) == "p^(1/2)");
}
