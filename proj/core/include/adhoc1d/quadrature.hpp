#pragma once

// Brute-force reference values for small n: the midpoint rule over the unit
// cube of node positions, applied to the indicator "exactly m components".
// Contains no closed-form code, so it can check the exact evaluator
// independently.

#include <cstddef>
#include <vector>

#include "adhoc1d/network.hpp"
#include "adhoc1d/ratio.hpp"

namespace adhoc1d {

inline constexpr std::size_t kQuadratureMaxNodes = 3;
inline constexpr std::size_t kQuadratureMinGrid = 64;

struct QuadratureResult {
    double value = 0.0;
    std::size_t grid_points_per_dim = 0;
    /// |value(grid) - value(grid / 2)|
    double richardson_error = 0.0;
};

/// P(exactly m components) on the unit segment with r = 1 / rho. The model's
/// anchor is taken as a fraction of the segment. Throws DomainError unless
/// 1 <= n <= 3 and grid is an even number >= 64.
QuadratureResult quadrature_q_m(const Model& model, std::size_t n, std::size_t m,
                                const Ratio& rho, std::size_t grid, unsigned workers = 0);

/// Results for m = 1 .. vertex count, from one pass over each grid.
std::vector<QuadratureResult> quadrature_distribution(const Model& model, std::size_t n,
                                                      const Ratio& rho, std::size_t grid,
                                                      unsigned workers = 0);

}  // namespace adhoc1d
