#include <doctest.h>

#include "tcone/coefficients.hpp"
#include "tcone/errors.hpp"

using namespace tcone;

TEST_CASE("P_m^k examples") {
    CHECK(pmk(1, 1) == PolyInD::constant(1));
    CHECK(pmk(2, 1) == PolyInD::linear(1, -2));
    CHECK(pmk(2, 2) == PolyInD::constant(1));
    // P_3^1 = (d-2)(d-4), P_3^2 = d-4.
    CHECK(pmk(3, 1) == PolyInD::linear(1, -2) * PolyInD::linear(1, -4));
    CHECK(pmk(3, 2) == PolyInD::linear(1, -4));
    CHECK(pmk(3, 1).evaluate(5) == 3);
    CHECK(pmk(3, 1).to_string() == "d^2 - 6d + 8");
    CHECK_THROWS_AS(pmk(3, 0), ArgumentError);
    CHECK_THROWS_AS(pmk(3, 4), ArgumentError);
    for (int m = 1; m <= 10; ++m) {
        for (int k = 1; k <= m; ++k) CHECK(pmk(m, k).degree() == m - k);
    }
}

TEST_CASE("c_m^k examples and rows") {
    CHECK(cmk(5, 3) == 3);
    CHECK(cmk(5, 4) == 2);
    CHECK(cmk(4, 3) == 2);
    const CoeffTable t = coeff_table(6);
    CHECK(t.c == std::vector<BigInt>{1, 1, 4, 3, 3, 1});
    for (int m = 2; m <= 16; ++m) {
        CHECK(cmk(m, 1) == 1);
        CHECK(cmk(m, m) == 1);
        CHECK(cmk(m, m - 1) == m / 2);
        for (int k = 1; k <= m; ++k) CHECK(cmk(m, k) > 0);
    }
    CHECK_THROWS_AS(cmk(4, 5), ArgumentError);
}

TEST_CASE("recurrence identities hold exactly through m = 16") {
    for (int m = 1; m <= 16; ++m) {
        CHECK(verify_pmk_identity(m));
        CHECK(verify_cmk_identity(m));
        CHECK(p1_product_check(m));
        CHECK(sigma_identity_check(m));
    }
}

TEST_CASE("a broken table is caught") {
    const CmkSource broken = [](int m, int k) { return (m == 5 && k == 3) ? BigInt(4) : cmk(m, k); };
    CHECK_FALSE(verify_cmk_identity(5, broken));
    const PmkSource shifted = [](int m, int k) {
        return (m == 4 && k == 2) ? pmk(m, k) + PolyInD::constant(1) : pmk(m, k);
    };
    CHECK_FALSE(verify_pmk_identity(4, shifted));
}

TEST_CASE("exact big-integer coefficients do not overflow") {
    // P_17^1(d) has degree 16 with constant term prod_{j=1}^{16} (-2j) = 2^16 16!.
    const BigInt c0 = pmk(17, 1).coeffs().front();
    BigInt expect = 1;
    for (int j = 1; j <= 16; ++j) expect *= 2 * j;
    CHECK(c0 == expect);
    CHECK(double_factorial(7) == 105);
    CHECK(double_factorial(0) == 1);
    CHECK(double_factorial(-1) == 1);
}

TEST_CASE("pi multiples of the source factors and sphere areas") {
    CHECK(source_multiplier(0) == PiMultiple{BigRational(2), 0});
    CHECK(source_multiplier(1) == PiMultiple{BigRational(8), 1});
    CHECK(source_multiplier(2) == PiMultiple{BigRational(64), 2});
    CHECK(sigma_odd(1) == PiMultiple{BigRational(4), 1});
    CHECK(sigma_odd(2) == PiMultiple{BigRational(8, 3), 2});
    CHECK(source_multiplier(1).to_string() == "8*pi");
}

TEST_CASE("table formatting") {
    const std::string t = format_cmk_table(6);
    CHECK(t.find("1 1 4 3 3 1") != std::string::npos);
    CHECK(format_pmk_table(2).find("d - 2") != std::string::npos);
}
