#pragma once

#include <cmath>

namespace adhoc1d {

/// Neumaier's variant of Kahan summation: keeps a running compensation for
/// the low-order bits lost by each addition, including when the addend is
/// larger than the running sum.
class CompensatedSum {
public:
    void add(double term) {
        const double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term))
            compensation_ += (sum_ - t) + term;
        else
            compensation_ += (term - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace adhoc1d
