#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adhoc1d/monte_carlo.hpp"
#include "adhoc1d/network.hpp"

namespace adhoc1d {

struct ComparisonRow {
    std::size_t m = 0;
    double exact = 0.0;
    std::uint64_t count = 0;
    double p_hat = 0.0;
    double std_error = 0.0;
    /// (p_hat - exact) / std_error; falls back to the exact-variance
    /// denominator sqrt(Q(1-Q)/trials) when p_hat is 0 or 1.
    double z = 0.0;
};

/// A chi-square bin after pooling: component counts [first_m, last_m].
struct PooledBin {
    std::size_t first_m = 0;
    std::size_t last_m = 0;
    double expected = 0.0;
    std::uint64_t observed = 0;
};

struct ComparisonReport {
    std::uint64_t trials = 0;
    std::vector<ComparisonRow> rows;
    std::vector<PooledBin> bins;
    double chi_square = 0.0;
    /// bins.size() - 1; zero only when every trial lands in a single pooled bin.
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// z-score of an estimate against an exact probability.
double z_score(double p_hat, double exact, std::uint64_t trials);

/// Merges bins whose expected count is below `min_expected` into their
/// neighbour toward the mode. `expected[i]` and `observed[i]` describe m = i + 1.
std::vector<PooledBin> pool_bins(std::span<const double> expected,
                                 std::span<const std::uint64_t> observed,
                                 double min_expected = 5.0);

/// Upper tail of the chi-square distribution.
double chi_square_p_value(double statistic, std::size_t dof);

/// Per-m z-scores and a pooled chi-square goodness-of-fit test of Monte Carlo
/// estimates against an exact distribution. Throws DomainError when the
/// distribution describes a different (model, n, rho) than `config`, or when
/// `estimates` is empty.
ComparisonReport compare(const NetworkConfig& config, std::span<const McEstimate> estimates,
                         const ComponentDistribution& exact);

}  // namespace adhoc1d
