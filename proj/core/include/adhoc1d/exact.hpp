#pragma once

// Closed-form component-count probabilities for the random interval graph.
//
// With N = n - 1 (Free) or N = n (Anchored) and k = min(N, floor(rho)):
//
//   Q_m = sum_{i=m-1}^{k} (-1)^(i-m+1) C(i, m-1) C(N, i) (1 - i/rho)^n
//
// The summands alternate in sign and can exceed the result by many orders of
// magnitude, so every evaluation reports the largest summand it met and the
// ratio of that summand to the result.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "adhoc1d/network.hpp"
#include "adhoc1d/ratio.hpp"

namespace adhoc1d {

enum class EvalMode { Float, Rational, Auto };

std::string to_string(EvalMode mode);
EvalMode parse_eval_mode(const std::string& text);

/// Auto mode switches to rational arithmetic above this cancellation ratio.
inline constexpr double kEscalationThreshold = 1e8;

/// Diagnostic of the binary64 pass that Auto mode discarded.
struct FloatAttempt {
    double value = 0.0;
    double max_term_magnitude = 0.0;
    double cancellation_ratio = 0.0;
};

struct ExactValue {
    /// Raw binary64 result. Never clamped; in rational mode this is the
    /// correctly rounded rational.
    double value = 0.0;
    std::optional<mpq_class> rational;
    double max_term_magnitude = 0.0;
    /// max_term_magnitude / max(|value|, DBL_MIN).
    double cancellation_ratio = 0.0;
    /// Float or Rational; never Auto.
    EvalMode mode_used = EvalMode::Float;
    /// Set when Auto mode escalated.
    std::optional<FloatAttempt> float_attempt;
};

/// Exact C(a, b); zero when b > a.
mpz_class binomial(unsigned long a, unsigned long b);

/// ln C(a, b) in binary64; -infinity when b > a.
double log_binomial(unsigned long a, unsigned long b);

/// Upper summation limit k: min(n-1, floor(rho)) for Free, min(n, floor(rho))
/// for Anchored. Throws DomainError for n == 0.
std::size_t truncation_index(ModelKind model, std::size_t n, const Ratio& rho);

/// Largest component count with non-zero probability: n (Free) or n+1 (Anchored).
std::size_t max_components(ModelKind model, std::size_t n);

/// Q_m for the Free or Anchored-at-0 model. Throws DomainError for n == 0 or
/// m == 0. Counts above the truncation index give exactly zero.
ExactValue q_m(ModelKind model, std::size_t n, std::size_t m, const Ratio& rho,
               EvalMode mode = EvalMode::Auto);

/// Binary64 connectivity probability Q_1 without the C(i, 0) column.
/// Bit-identical to q_m(model, n, 1, rho, EvalMode::Float).
ExactValue q_1_float(ModelKind model, std::size_t n, const Ratio& rho);

/// Q_m for m = 1 .. max_components(model, n). In Auto mode the whole vector
/// escalates together when any entry crosses the threshold.
std::vector<ExactValue> distribution_values(ModelKind model, std::size_t n, const Ratio& rho,
                                            EvalMode mode = EvalMode::Auto);

ComponentDistribution distribution(ModelKind model, std::size_t n, const Ratio& rho,
                                   EvalMode mode = EvalMode::Auto);

}  // namespace adhoc1d
