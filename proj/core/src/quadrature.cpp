#include "adhoc1d/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <thread>

namespace adhoc1d {
namespace {

void check_oracle_domain(std::size_t n, std::size_t grid) {
    if (n == 0 || n > kQuadratureMaxNodes)
        throw DomainError("quadrature oracle supports 1 <= n <= 3 (cost grows as grid^n)");
    if (grid < kQuadratureMinGrid || grid % 2 != 0)
        throw DomainError("quadrature grid must be an even number >= 64");
}

// Permutations of a sorted index tuple: n! divided by the factorial of
// every run of equal indices.
std::uint64_t multiplicity(const std::array<std::size_t, 3>& idx, std::size_t n) {
    static constexpr std::uint64_t factorial[] = {1, 1, 2, 6};
    std::uint64_t result = factorial[n];
    std::size_t run = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < n && idx[i] == idx[i - 1]) {
            ++run;
        } else {
            result /= factorial[run];
            run = 1;
        }
    }
    return result;
}

// Weighted component histogram over the g^n midpoint cells. The integrand is
// symmetric in the nodes, so only ordered index tuples are visited.
std::vector<std::uint64_t> histogram(const Model& model, std::size_t n, double radius,
                                     std::size_t grid, unsigned workers) {
    const bool anchored = model.kind == ModelKind::Anchored;
    const std::size_t bins = n + 2;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid));

    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));
    const double cell = 1.0 / static_cast<double>(grid);

    auto visit = [&](std::size_t first, std::vector<std::uint64_t>& counts) {
        std::array<std::size_t, 3> idx{first, 0, 0};
        std::array<double, 4> positions{};
        auto evaluate = [&] {
            std::size_t size = 0;
            for (std::size_t i = 0; i < n; ++i)
                positions[size++] = (static_cast<double>(idx[i]) + 0.5) * cell;
            if (anchored) {
                positions[size++] = model.anchor;
                std::sort(positions.begin(), positions.begin() + static_cast<long>(size));
            }
            const auto m = count_components(std::span<const double>(positions.data(), size), radius);
            counts[m] += multiplicity(idx, n);
        };
        if (n == 1) {
            evaluate();
        } else {
            for (idx[1] = first; idx[1] < grid; ++idx[1]) {
                if (n == 2) {
                    evaluate();
                } else {
                    for (idx[2] = idx[1]; idx[2] < grid; ++idx[2]) evaluate();
                }
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t first = w; first < grid; first += workers) visit(first, partial[w]);
            });
        }
    }

    // Integer counts: the merge is exact in any order.
    std::vector<std::uint64_t> total(bins, 0);
    for (const auto& p : partial)
        for (std::size_t m = 0; m < bins; ++m) total[m] += p[m];
    return total;
}

}  // namespace

std::vector<QuadratureResult> quadrature_distribution(const Model& model, std::size_t n,
                                                      const Ratio& rho, std::size_t grid,
                                                      unsigned workers) {
    check_oracle_domain(n, grid);
    if (model.kind == ModelKind::Anchored && !(model.anchor >= 0.0 && model.anchor <= 1.0))
        throw DomainError("quadrature anchor must be a fraction of the segment in [0, 1]");

    const double radius = 1.0 / rho.value();
    const auto fine = histogram(model, n, radius, grid, workers);
    const auto coarse = histogram(model, n, radius, grid / 2, workers);
    const double fine_cells = std::pow(static_cast<double>(grid), static_cast<double>(n));
    const double coarse_cells = std::pow(static_cast<double>(grid / 2), static_cast<double>(n));

    const std::size_t top = n + (model.kind == ModelKind::Anchored ? 1 : 0);
    std::vector<QuadratureResult> results;
    for (std::size_t m = 1; m <= top; ++m) {
        QuadratureResult r;
        r.grid_points_per_dim = grid;
        r.value = static_cast<double>(fine[m]) / fine_cells;
        r.richardson_error = std::abs(r.value - static_cast<double>(coarse[m]) / coarse_cells);
        results.push_back(r);
    }
    return results;
}

QuadratureResult quadrature_q_m(const Model& model, std::size_t n, std::size_t m,
                                const Ratio& rho, std::size_t grid, unsigned workers) {
    if (m == 0) throw DomainError("component count m must be >= 1");
    auto all = quadrature_distribution(model, n, rho, grid, workers);
    if (m > all.size()) return QuadratureResult{0.0, grid, 0.0};
    return all[m - 1];
}

}  // namespace adhoc1d
