#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adhoc1d/exact.hpp"
#include "adhoc1d/network.hpp"

namespace adhoc1d {

/// Inclusive arithmetic grid start, start + step, ..., <= stop.
struct RhoGrid {
    double start = 0.25;
    double stop = 30.0;
    double step = 0.25;

    /// Points are computed as start + j * step, never accumulated.
    std::vector<double> values() const;
};

struct SweepSpec {
    Model model = Model::anchored();
    std::vector<std::size_t> n_values{5, 10, 20};
    std::vector<std::size_t> m_values{1};
    RhoGrid rho;
    /// Monte Carlo budget per (n, rho) point; 0 disables simulation.
    std::uint64_t trials = 0;
    std::uint64_t seed = 42;
    EvalMode mode = EvalMode::Auto;
    unsigned workers = 1;
};

/// Throws DomainError on an empty n/m list, a bad grid, or a model without
/// a closed form.
void validate_spec(const SweepSpec& spec);

struct SweepRow {
    Model model;
    std::size_t n = 0;
    std::size_t m = 0;
    double rho = 0.0;
    double q_exact = 0.0;
    EvalMode eval_mode = EvalMode::Float;
    /// Cancellation ratio of the binary64 pass (the rational pass's own when
    /// rational mode was requested directly).
    double cancellation_ratio = 0.0;
    std::optional<double> p_hat;
    std::optional<double> std_error;
    std::optional<std::uint64_t> trials;
    std::optional<double> z;
};

/// Seed of the simulation at one (n, rho) grid point.
std::uint64_t point_seed(std::uint64_t root, std::size_t n, double rho);

/// The row a single exact evaluation produces (no simulation columns).
SweepRow exact_row(const Model& model, std::size_t n, std::size_t m, double rho, EvalMode mode);

/// Rows ordered by (n, m, rho) whatever the worker count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader =
    "model,n,m,rho,q_exact,eval_mode,cancellation_ratio,p_hat,stderr,trials,z";

/// Shortest decimal that parses back to the same binary64.
std::string format_double(double value);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
/// Throws DomainError on a malformed header or row.
std::vector<SweepRow> read_csv(std::istream& in);

/// Line chart of q_exact against rho (one line per n) with simulated points
/// as markers.
std::string render_svg(const std::vector<SweepRow>& rows, const std::string& title);

struct FigureOptions {
    std::filesystem::path out_dir = ".";
    std::uint64_t trials = 0;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    EvalMode mode = EvalMode::Auto;
    RhoGrid rho;
    std::vector<std::size_t> n_values{5, 10, 20};
    std::size_t figure_count = 6;
    bool svg = false;
};

/// Writes fig1.csv .. fig6.csv (one per m, anchored model) plus optional
/// SVGs; returns the paths written. Throws std::runtime_error if the
/// directory cannot be created or written.
std::vector<std::filesystem::path> write_figures(const FigureOptions& options);

}  // namespace adhoc1d
