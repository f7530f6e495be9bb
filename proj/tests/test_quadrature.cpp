#include <doctest.h>

#include <cmath>

#include "adhoc1d/exact.hpp"
#include "adhoc1d/monte_carlo.hpp"
#include "adhoc1d/quadrature.hpp"

using namespace adhoc1d;

namespace {
Ratio rho(double value) { return Ratio::from_double(value); }
}  // namespace

TEST_CASE("quadrature reproduces closed cases") {
    const auto anchored = quadrature_q_m(Model::anchored(), 1, 1, rho(2), 1024);
    CHECK(anchored.grid_points_per_dim == 1024);
    CHECK(anchored.richardson_error <= 1e-3);
    CHECK(std::abs(anchored.value - 0.5) <= std::max(anchored.richardson_error, 1e-12));

    const auto pair = quadrature_q_m(Model::free(), 2, 1, rho(2), 1024);
    CHECK(std::abs(pair.value - 0.75) <= 2e-3);
    CHECK(pair.richardson_error >= 0.0);

    const auto triple = quadrature_q_m(Model::free(), 3, 2, rho(3), 512);
    CHECK(triple.value == doctest::Approx(0.51895339787006378).epsilon(1e-15));
    CHECK(triple.richardson_error == doctest::Approx(0.0012995749711990356).epsilon(1e-12));
}

TEST_CASE("quadrature refuses unsupported sizes") {
    CHECK_THROWS_AS(quadrature_q_m(Model::free(), 4, 1, rho(2), 64), DomainError);
    CHECK_THROWS_AS(quadrature_q_m(Model::free(), 0, 1, rho(2), 64), DomainError);
    CHECK_THROWS_AS(quadrature_q_m(Model::free(), 2, 1, rho(2), 32), DomainError);
    CHECK_THROWS_AS(quadrature_q_m(Model::free(), 2, 1, rho(2), 65), DomainError);
    CHECK_THROWS_AS(quadrature_q_m(Model::free(), 2, 0, rho(2), 64), DomainError);
    CHECK(quadrature_q_m(Model::free(), 2, 3, rho(2), 64).value == 0.0);
}

TEST_CASE("quadrature values form a distribution") {
    for (double r : {0.5, 2.0, 7.5}) {
        const auto all = quadrature_distribution(Model::anchored(), 3, rho(r), 128);
        double total = 0.0;
        for (const auto& q : all) {
            CHECK(q.value >= 0.0);
            CHECK(q.value <= 1.0);
            total += q.value;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("oracle agrees with the closed form (n <= 2, fine grid)") {
    for (ModelKind model : {ModelKind::Free, ModelKind::Anchored}) {
        for (std::size_t n = 1; n <= 2; ++n) {
            for (double r : {0.5, 1.5, 2.0, 3.0, 5.0, 7.5}) {
                const auto oracle = quadrature_distribution(Model{model, 0.0}, n, rho(r), 1024);
                for (std::size_t m = 1; m <= oracle.size(); ++m) {
                    CAPTURE(n);
                    CAPTURE(m);
                    CAPTURE(r);
                    const double exact = q_m(model, n, m, rho(r), EvalMode::Rational).value;
                    CHECK(std::abs(oracle[m - 1].value - exact) <=
                          std::max(5.0 * oracle[m - 1].richardson_error, 1e-4));
                }
            }
        }
    }
}

TEST_CASE("refinement error shrinks roughly like 1/grid") {
    const double e128 = quadrature_q_m(Model::free(), 2, 1, rho(3), 128).richardson_error;
    const double e512 = quadrature_q_m(Model::free(), 2, 1, rho(3), 512).richardson_error;
    const double e2048 = quadrature_q_m(Model::free(), 2, 1, rho(3), 2048).richardson_error;
    CHECK(e512 < e128);
    CHECK(e2048 < e512);
    CHECK(e128 / e2048 > 4.0);
}

TEST_CASE("oracle agrees with the simulator, including an interior access point") {
    const auto oracle = quadrature_distribution(Model::anchored(0.3), 2, rho(4), 1024);
    const NetworkConfig config{2, 1.0, 0.25, 0.3};
    const auto est = estimate_distribution(config, 1000000, 8);
    for (const auto& e : est) {
        CAPTURE(e.m);
        CHECK(std::abs(oracle[e.m - 1].value - e.p_hat) <=
              4.0 * e.std_error + oracle[e.m - 1].richardson_error);
    }
}

TEST_CASE("quadrature is identical for any worker count") {
    const auto one = quadrature_distribution(Model::free(), 3, rho(2.5), 128, 1);
    const auto many = quadrature_distribution(Model::free(), 3, rho(2.5), 128, 5);
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].value == many[i].value);
}
