#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

#include "adhoc1d/network.hpp"
#include "adhoc1d/ratio.hpp"

using namespace adhoc1d;

TEST_CASE("Ratio keeps the exact binary64 value") {
    const Ratio r = Ratio::from_double(0.1);
    CHECK(r.value() == 0.1);
    CHECK(r.exact() == mpq_class(0.1));
    CHECK(r.exact().get_den() == mpz_class(1) << 55);
    CHECK(Ratio::from_double(3.0).floor() == 3);
    CHECK(Ratio::from_double(std::nextafter(3.0, 0.0)).floor() == 2);
    CHECK(Ratio::from_double(0.25).floor() == 0);
    CHECK(Ratio::from_length_radius(10.0, 4.0).value() == 2.5);

    CHECK_THROWS_AS(Ratio::from_double(0.0), DomainError);
    CHECK_THROWS_AS(Ratio::from_double(-1.0), DomainError);
    CHECK_THROWS_AS(Ratio::from_double(INFINITY), DomainError);
    CHECK_THROWS_AS(Ratio::from_double(NAN), DomainError);
    CHECK_THROWS_AS(Ratio::from_length_radius(1.0, 0.0), DomainError);
}

TEST_CASE("to_double_rounded round-trips every binary64") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20000; ++i) {
        const std::uint64_t bits = rng() & 0x7FEFFFFFFFFFFFFFULL;  // finite, positive
        const double d = std::bit_cast<double>(bits);
        if (d < 1e-300) continue;
        REQUIRE(to_double_rounded(mpq_class(d)) == d);
        REQUIRE(to_double_rounded(mpq_class(-d)) == -d);
    }
    CHECK(to_double_rounded(mpq_class(0)) == 0.0);
}

TEST_CASE("to_double_rounded rounds to nearest, ties to even") {
    const mpz_class two53 = mpz_class(1) << 53;
    // 2^53 + 1 is halfway between 2^53 and 2^53 + 2: even neighbour is 2^53.
    CHECK(to_double_rounded(mpq_class(two53 + 1)) == 9007199254740992.0);
    // 2^53 + 3 is halfway between 2^53 + 2 and 2^53 + 4: even is 2^53 + 4.
    CHECK(to_double_rounded(mpq_class(two53 + 3)) == 9007199254740996.0);
    // Just above a tie rounds up.
    mpq_class above(two53 * 4 + 5, 4);
    above.canonicalize();
    CHECK(to_double_rounded(above) == 9007199254740994.0);
    CHECK(to_double_rounded(mpq_class(1, 3)) == 1.0 / 3.0);
    CHECK(to_double_rounded(mpq_class(2, 3)) == 2.0 / 3.0);
    CHECK(to_double_rounded(mpq_class(14, 27)) == 14.0 / 27.0);
}
