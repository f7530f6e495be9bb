#pragma once

#include <gmpxx.h>

namespace adhoc1d {

/// The dimensionless ratio rho = L / r. Holds the binary64 value together
/// with its exact rational expansion, so float and rational evaluation answer
/// the same question.
class Ratio {
public:
    /// Throws DomainError unless rho is finite and positive.
    static Ratio from_double(double rho);
    /// Reduces (L, r) to rho = L / r rounded to binary64.
    static Ratio from_length_radius(double length, double radius);

    double value() const { return value_; }
    const mpq_class& exact() const { return exact_; }
    /// floor(rho), computed on the rational form.
    mpz_class floor() const;

private:
    explicit Ratio(double value);

    double value_;
    mpq_class exact_;
};

/// Rounds an exact rational to the nearest binary64 (ties to even).
double to_double_rounded(const mpq_class& value);

}  // namespace adhoc1d
