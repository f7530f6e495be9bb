#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "adhoc1d/network.hpp"
#include "adhoc1d/philox.hpp"

namespace adhoc1d {

/// Two-sided 95% normal quantile used for Wilson intervals.
inline constexpr double kWilsonZ95 = 1.959963984540054;

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for `successes` out of `trials`.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = kWilsonZ95);

/// Monte Carlo estimate of Q_m for one component count.
struct McEstimate {
    std::size_t m = 0;
    std::uint64_t count = 0;
    std::uint64_t trials = 0;
    double p_hat = 0.0;
    /// sqrt(p_hat (1 - p_hat) / trials)
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
};

/// Draws n uniform positions on [0, L] from `stream`, adds the access point
/// and sorts.
Realization sample_realization(const NetworkConfig& config, TrialStream& stream);

/// Histogram of component counts: counts[m] is the number of trials with m
/// components (index 0 is unused unless the graph is empty).
std::vector<std::uint64_t> simulate_counts(const NetworkConfig& config, std::uint64_t trials,
                                           std::uint64_t seed, unsigned workers = 1);

/// One McEstimate per observed component count, ascending in m. Identical
/// for identical (config, trials, seed) whatever the worker count; workers
/// == 0 means one per hardware thread.
std::vector<McEstimate> estimate_distribution(const NetworkConfig& config, std::uint64_t trials,
                                              std::uint64_t seed, unsigned workers = 1);

}  // namespace adhoc1d
