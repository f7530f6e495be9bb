#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "adhoc1d/compare.hpp"
#include "adhoc1d/exact.hpp"

namespace adhoc1d {

enum class ValidationLevel { Quick, Full };

ValidationLevel parse_validation_level(const std::string& text);

/// Signature of q_m; replaceable so the suite's sensitivity can be tested.
using QmEvaluator =
    std::function<ExactValue(ModelKind, std::size_t n, std::size_t m, const Ratio&, EvalMode)>;

struct ValidationOptions {
    ValidationLevel level = ValidationLevel::Quick;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    unsigned workers = 0;
    QmEvaluator evaluator;  // empty means q_m
};

struct CheckResult {
    std::string name;
    bool passed = true;
    std::size_t cells = 0;
    /// First failing (model, n, m, rho) tuple, or a summary when passed.
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

ValidationReport run_validation(const ValidationOptions& options);

/// Monte Carlo vs exact at one (n, rho) point of an agreement sweep.
struct PointComparison {
    std::size_t n = 0;
    double rho = 0.0;
    ComparisonReport report;
};

/// Simulates every (n, rho) point with its own derived seed and compares
/// against the exact distribution. Output order follows (n, rho) input order.
std::vector<PointComparison> agreement_sweep(const Model& model,
                                             const std::vector<std::size_t>& n_values,
                                             const std::vector<double>& rho_values,
                                             std::uint64_t trials, std::uint64_t seed,
                                             unsigned workers);

/// Summary of an agreement sweep over component counts 1..max_m.
struct AgreementStats {
    std::size_t cells = 0;          // cells with exact Q_m >= min_q
    std::size_t within_2 = 0;       // of those, |z| <= 2
    std::size_t within_5 = 0;       // of those, |z| <= 5
    std::size_t chi_points = 0;
    std::size_t chi_passing = 0;    // p_value > 0.001
    std::string worst;              // tuple with the largest |z|
};

AgreementStats summarize_agreement(const std::vector<PointComparison>& points, std::size_t max_m,
                                   double min_q = 1e-3);

}  // namespace adhoc1d
