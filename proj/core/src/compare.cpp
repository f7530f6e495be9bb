#include "adhoc1d/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <boost/math/special_functions/gamma.hpp>

namespace adhoc1d {

double z_score(double p_hat, double exact, std::uint64_t trials) {
    const double n = static_cast<double>(trials);
    const double diff = p_hat - exact;
    const double sample_var = p_hat * (1.0 - p_hat) / n;
    if (sample_var > 0.0) return diff / std::sqrt(sample_var);
    const double q = std::clamp(exact, 0.0, 1.0);
    const double exact_var = q * (1.0 - q) / n;
    if (exact_var > 0.0) return diff / std::sqrt(exact_var);
    if (diff == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

std::vector<PooledBin> pool_bins(std::span<const double> expected,
                                 std::span<const std::uint64_t> observed, double min_expected) {
    const std::size_t size = expected.size();
    if (size == 0) return {};
    const std::size_t mode = static_cast<std::size_t>(
        std::max_element(expected.begin(), expected.end()) - expected.begin());

    auto single = [&](std::size_t i) {
        return PooledBin{i + 1, i + 1, expected[i], observed[i]};
    };
    auto absorb = [](PooledBin& into, const PooledBin& from) {
        into.first_m = std::min(into.first_m, from.first_m);
        into.last_m = std::max(into.last_m, from.last_m);
        into.expected += from.expected;
        into.observed += from.observed;
    };

    PooledBin centre = single(mode);
    std::vector<PooledBin> left;
    std::vector<PooledBin> right;

    std::optional<PooledBin> pending;
    for (std::size_t i = 0; i < mode; ++i) {
        if (pending) absorb(*pending, single(i)); else pending = single(i);
        if (pending->expected >= min_expected) {
            left.push_back(*pending);
            pending.reset();
        }
    }
    if (pending) absorb(centre, *pending);

    pending.reset();
    for (std::size_t i = size; i-- > mode + 1;) {
        if (pending) absorb(*pending, single(i)); else pending = single(i);
        if (pending->expected >= min_expected) {
            right.push_back(*pending);
            pending.reset();
        }
    }
    if (pending) absorb(centre, *pending);

    std::vector<PooledBin> bins = std::move(left);
    bins.push_back(centre);
    bins.insert(bins.end(), right.rbegin(), right.rend());
    return bins;
}

double chi_square_p_value(double statistic, std::size_t dof) {
    if (dof == 0) return 1.0;
    if (!std::isfinite(statistic)) return 0.0;
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

ComparisonReport compare(const NetworkConfig& config, std::span<const McEstimate> estimates,
                         const ComponentDistribution& exact) {
    if (estimates.empty()) throw DomainError("compare: no estimates");
    if (!(config.model() == exact.model) || config.n != exact.n || config.ratio() != exact.rho)
        throw DomainError("compare: exact distribution describes a different (model, n, rho)");

    ComparisonReport report;
    report.trials = estimates.front().trials;
    for (const auto& e : estimates) {
        if (e.trials != report.trials) throw DomainError("compare: estimates disagree on trials");
    }

    std::size_t top = exact.probs.empty() ? 0 : exact.probs.rbegin()->first;
    for (const auto& e : estimates) top = std::max(top, e.m);

    std::vector<double> expected(top, 0.0);
    std::vector<std::uint64_t> observed(top, 0);
    for (const auto& [m, q] : exact.probs) {
        if (m >= 1) expected[m - 1] = std::max(q, 0.0) * static_cast<double>(report.trials);
    }
    for (const auto& e : estimates) {
        if (e.m >= 1) observed[e.m - 1] = e.count;
    }

    const double n = static_cast<double>(report.trials);
    for (std::size_t m = 1; m <= top; ++m) {
        ComparisonRow row;
        row.m = m;
        row.exact = exact.at(m);
        row.count = observed[m - 1];
        row.p_hat = static_cast<double>(row.count) / n;
        row.std_error = std::sqrt(row.p_hat * (1.0 - row.p_hat) / n);
        row.z = z_score(row.p_hat, row.exact, report.trials);
        report.rows.push_back(row);
    }

    report.bins = pool_bins(expected, observed);
    for (const auto& bin : report.bins) {
        const double diff = static_cast<double>(bin.observed) - bin.expected;
        if (bin.expected > 0.0)
            report.chi_square += diff * diff / bin.expected;
        else if (bin.observed > 0)
            report.chi_square = std::numeric_limits<double>::infinity();
    }
    report.dof = report.bins.empty() ? 0 : report.bins.size() - 1;
    report.p_value = chi_square_p_value(report.chi_square, report.dof);
    return report;
}

}  // namespace adhoc1d
