#include <doctest.h>

#include <cmath>
#include <set>

#include "adhoc1d/philox.hpp"

using namespace adhoc1d;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("trial streams are reproducible and distinct") {
    TrialStream a(42, 7);
    TrialStream b(42, 7);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());

    std::set<std::uint64_t> firsts;
    for (std::uint64_t trial = 0; trial < 1000; ++trial) firsts.insert(TrialStream(42, trial).next_u64());
    for (std::uint64_t seed = 0; seed < 1000; ++seed) firsts.insert(TrialStream(seed, 0).next_u64());
    CHECK(firsts.size() == 1999);  // (42, 0) appears in both loops
}

TEST_CASE("golden samples for seed 42, trial 0") {
    TrialStream s(42, 0);
    // Frozen from this implementation after the known-answer vectors passed.
    const double expected[] = {0.46858651833910492, 0.34086154938517876, 0.32706338120338474,
                               0.45431560173488827};
    for (double e : expected) CHECK(s.next_unit() == e);
}

TEST_CASE("unit draws lie in [0, 1) and look uniform") {
    const int draws = 10000;
    int below_half = 0;
    for (int i = 0; i < draws; ++i) {
        TrialStream s(1234, static_cast<std::uint64_t>(i));
        const double u = s.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        below_half += u < 0.5 ? 1 : 0;
    }
    const double cdf = static_cast<double>(below_half) / draws;
    CHECK(std::abs(cdf - 0.5) <= 4.0 * std::sqrt(0.25 / draws));
}

TEST_CASE("derive_seed mixes every argument") {
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
    CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
    CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
}
