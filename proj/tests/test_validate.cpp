#include <doctest.h>

#include <cmath>

#include "adhoc1d/summation.hpp"
#include "adhoc1d/validate.hpp"

using namespace adhoc1d;

namespace {

// Float-only re-implementation of the closed form with the sign of the
// first free-model term flipped. Test-only; never linked into the library.
ExactValue sign_flipped(ModelKind model, std::size_t n, std::size_t m, const Ratio& rho, EvalMode mode) {
    if (model == ModelKind::Anchored) return q_m(model, n, m, rho, mode);
    ExactValue out = q_m(model, n, m, rho, mode);
    const std::size_t k = truncation_index(model, n, rho);
    if (m - 1 > k) return out;
    CompensatedSum total;
    for (std::size_t i = m - 1; i <= k; ++i) {
        const double c = binomial(i, m - 1).get_d() * binomial(n - 1, i).get_d();
        const double term = c * std::pow(1.0 - static_cast<double>(i) / rho.value(), static_cast<double>(n));
        const bool negative = (i - (m - 1)) % 2 == 1;
        const bool flip = i == m - 1;
        total.add((negative != flip) ? -term : term);
    }
    out.value = total.value();
    out.rational.reset();
    return out;
}

}  // namespace

TEST_CASE("quick validation passes") {
    ValidationOptions options;
    const auto report = run_validation(options);
    CHECK(report.passed());
    CHECK(report.checks.size() == 5);
    for (const auto& c : report.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.passed);
        CHECK(c.cells > 0);
    }
}

TEST_CASE("a sign flip is caught at the first normalization cell") {
    ValidationOptions options;
    options.evaluator = sign_flipped;
    const auto report = run_validation(options);
    CHECK_FALSE(report.passed());
    REQUIRE_FALSE(report.checks[0].passed);
    CHECK(report.checks[0].detail.find("(model=free, n=1, m=*, rho=0.3)") == 0);
}

TEST_CASE("agreement summary counts") {
    std::vector<double> rhos{3.0, 6.0};
    const auto points = agreement_sweep(Model::anchored(), {5}, rhos, 20000, 3, 2);
    REQUIRE(points.size() == 2);
    CHECK(points[0].rho == 3.0);
    const auto stats = summarize_agreement(points, 6);
    CHECK(stats.chi_points == 2);
    CHECK(stats.cells > 0);
    CHECK(stats.within_5 <= stats.cells);
    CHECK(stats.within_2 <= stats.within_5);
    CHECK_FALSE(stats.worst.empty());
}

TEST_CASE("validation level parsing") {
    CHECK(parse_validation_level("quick") == ValidationLevel::Quick);
    CHECK(parse_validation_level("full") == ValidationLevel::Full);
    CHECK_THROWS_AS(parse_validation_level("fast"), DomainError);
}
