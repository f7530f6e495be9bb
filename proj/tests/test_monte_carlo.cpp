#include <doctest.h>

#include <cmath>
#include <numeric>

#include "adhoc1d/compare.hpp"
#include "adhoc1d/exact.hpp"
#include "adhoc1d/monte_carlo.hpp"

using namespace adhoc1d;

TEST_CASE("sample_realization") {
    TrialStream stream(1, 0);
    const auto only_ap = sample_realization({0, 1.0, 0.5, 0.0}, stream);
    REQUIRE(only_ap.positions().size() == 1);
    CHECK(only_ap.positions()[0] == 0.0);

    const NetworkConfig config{3, 10.0, 1.0, std::nullopt};
    TrialStream a(99, 5), b(99, 5);
    const auto ra = sample_realization(config, a);
    const auto rb = sample_realization(config, b);
    REQUIRE(ra.positions().size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(ra.positions()[i] == rb.positions()[i]);
        CHECK(ra.positions()[i] >= 0.0);
        CHECK(ra.positions()[i] <= 10.0);
        if (i > 0) CHECK(ra.positions()[i - 1] <= ra.positions()[i]);
    }
}

TEST_CASE("wilson interval") {
    const auto mid = wilson_interval(50, 100);
    CHECK(mid.low == doctest::Approx(0.4038).epsilon(1e-3));
    CHECK(mid.high == doctest::Approx(0.5962).epsilon(1e-3));
    const auto zero = wilson_interval(0, 1000);
    CHECK(zero.low == 0.0);
    CHECK(zero.high > 0.0);
    const auto one = wilson_interval(1000, 1000);
    CHECK(one.high == 1.0);
    CHECK(one.low < 1.0);
    CHECK_THROWS_AS(wilson_interval(0, 0), DomainError);
}

TEST_CASE("L < r forces a single component") {
    const NetworkConfig config{5, 0.5, 1.0, std::nullopt};
    const auto est = estimate_distribution(config, 10000, 3);
    REQUIRE(est.size() == 1);
    CHECK(est[0].m == 1);
    CHECK(est[0].p_hat == 1.0);
}

TEST_CASE("anchored n=1 rho=2 matches 1/2") {
    const NetworkConfig config{1, 2.0, 1.0, 0.0};
    const auto est = estimate_distribution(config, 1000000, 42);
    REQUIRE(est.size() == 2);
    CHECK(std::abs(est[0].p_hat - 0.5) <= 4.0 * est[0].std_error);
}

TEST_CASE("free n=5 rho=5 matches the exact distribution") {
    const NetworkConfig config{5, 5.0, 1.0, std::nullopt};
    const auto est = estimate_distribution(config, 1000000, 42);
    const auto exact = distribution(ModelKind::Free, 5, Ratio::from_double(5.0), EvalMode::Rational);
    for (const auto& e : est) {
        CAPTURE(e.m);
        CHECK(std::abs(e.p_hat - exact.at(e.m)) <= 4.0 * e.std_error);
    }
}

TEST_CASE("estimates are identical for any worker count") {
    const NetworkConfig config{8, 6.0, 1.0, 0.0};
    const auto one = estimate_distribution(config, 20001, 11, 1);
    for (unsigned workers : {2u, 3u, 7u, 0u}) {
        const auto many = estimate_distribution(config, 20001, 11, workers);
        REQUIRE(one.size() == many.size());
        for (std::size_t i = 0; i < one.size(); ++i) {
            CHECK(one[i].m == many[i].m);
            CHECK(one[i].count == many[i].count);
            CHECK(one[i].p_hat == many[i].p_hat);
        }
    }
}

TEST_CASE("estimate invariants") {
    const NetworkConfig config{10, 8.0, 1.0, std::nullopt};
    const auto est = estimate_distribution(config, 40000, 5);
    std::uint64_t total = 0;
    double p_total = 0.0;
    for (const auto& e : est) {
        total += e.count;
        p_total += e.p_hat;
        CHECK(e.ci_low <= e.p_hat);
        CHECK(e.p_hat <= e.ci_high);
        CHECK(e.ci_low >= 0.0);
        CHECK(e.ci_high <= 1.0);
        CHECK(e.p_hat * 40000.0 == static_cast<double>(e.count));
        CHECK(e.seed == 5);
    }
    CHECK(total == 40000);
    CHECK(p_total == doctest::Approx(1.0).epsilon(1e-12));

    // Quadrupling trials halves the standard error at a fixed p_hat.
    McEstimate small{1, 250, 1000, 0.25, std::sqrt(0.25 * 0.75 / 1000), 0, 0, 0};
    const double quadrupled = std::sqrt(0.25 * 0.75 / 4000);
    CHECK(quadrupled == doctest::Approx(small.std_error / 2).epsilon(1e-15));

    CHECK_THROWS_AS(estimate_distribution(config, 0, 1), DomainError);
    CHECK_THROWS_AS(estimate_distribution({3, 1.0, 0.0, std::nullopt}, 10, 1), DomainError);
}

TEST_CASE("access point at L mirrors the access point at 0") {
    const NetworkConfig left{6, 4.0, 1.0, 0.0};
    const NetworkConfig right{6, 4.0, 1.0, 4.0};
    const auto a = estimate_distribution(left, 200000, 17);
    const auto b = estimate_distribution(right, 200000, 18);
    const auto exact = distribution(ModelKind::Anchored, 6, Ratio::from_double(4.0), EvalMode::Rational);
    for (const auto& ea : a) {
        for (const auto& eb : b) {
            if (ea.m != eb.m) continue;
            const double se = std::sqrt(ea.std_error * ea.std_error + eb.std_error * eb.std_error);
            if (se > 0.0) CHECK(std::abs(ea.p_hat - eb.p_hat) / se <= 4.0);
        }
        CHECK(std::abs(z_score(ea.p_hat, exact.at(ea.m), ea.trials)) <= 4.0);
    }
}
