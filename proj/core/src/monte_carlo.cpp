#include "adhoc1d/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace adhoc1d {
namespace {

void draw_positions(const NetworkConfig& config, TrialStream& stream, std::vector<double>& out) {
    out.clear();
    for (std::size_t i = 0; i < config.n; ++i) out.push_back(stream.next_unit() * config.length);
    if (config.access_point) out.push_back(*config.access_point);
    std::sort(out.begin(), out.end());
}

void accumulate_range(const NetworkConfig& config, std::uint64_t seed, std::uint64_t begin,
                      std::uint64_t end, std::vector<std::uint64_t>& counts) {
    std::vector<double> positions;
    positions.reserve(config.vertex_count());
    for (std::uint64_t trial = begin; trial < end; ++trial) {
        TrialStream stream(seed, trial);
        draw_positions(config, stream, positions);
        ++counts[count_components(positions, config.radius)];
    }
}

}  // namespace

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw DomainError("wilson_interval: trials must be positive");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // Rounding can push the bounds a hair past p_hat or [0, 1].
    return {std::clamp(std::min(centre - half, p), 0.0, 1.0),
            std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

Realization sample_realization(const NetworkConfig& config, TrialStream& stream) {
    require_valid(config);
    std::vector<double> random_positions;
    random_positions.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i)
        random_positions.push_back(stream.next_unit() * config.length);
    return Realization::from_positions(config, std::move(random_positions));
}

std::vector<std::uint64_t> simulate_counts(const NetworkConfig& config, std::uint64_t trials,
                                           std::uint64_t seed, unsigned workers) {
    require_valid(config);
    if (trials == 0) throw DomainError("trials must be >= 1");
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

    const std::size_t bins = config.vertex_count() + 1;
    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));
    const std::uint64_t chunk = trials / workers;
    const std::uint64_t extra = trials % workers;

    {
        std::vector<std::jthread> pool;
        std::uint64_t begin = 0;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
            if (w + 1 == workers) {
                accumulate_range(config, seed, begin, end, partial[w]);
            } else {
                pool.emplace_back([&, w, begin, end] {
                    accumulate_range(config, seed, begin, end, partial[w]);
                });
            }
            begin = end;
        }
    }

    std::vector<std::uint64_t> counts(bins, 0);
    for (const auto& p : partial)
        for (std::size_t m = 0; m < bins; ++m) counts[m] += p[m];
    return counts;
}

std::vector<McEstimate> estimate_distribution(const NetworkConfig& config, std::uint64_t trials,
                                              std::uint64_t seed, unsigned workers) {
    const auto counts = simulate_counts(config, trials, seed, workers);
    std::vector<McEstimate> estimates;
    const double n = static_cast<double>(trials);
    for (std::size_t m = 0; m < counts.size(); ++m) {
        if (counts[m] == 0) continue;
        McEstimate e;
        e.m = m;
        e.count = counts[m];
        e.trials = trials;
        e.p_hat = static_cast<double>(counts[m]) / n;
        e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / n);
        const auto ci = wilson_interval(counts[m], trials);
        e.ci_low = ci.low;
        e.ci_high = ci.high;
        e.seed = seed;
        estimates.push_back(e);
    }
    return estimates;
}

}  // namespace adhoc1d
