#include "adhoc1d/exact.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "adhoc1d/summation.hpp"

namespace adhoc1d {
namespace {

// Pascal rows in binary64 stay finite up to row 1029; products of two
// binomials can still overflow earlier, which the term loop handles.
constexpr std::size_t kPascalLimit = 1000;

std::size_t summation_width(ModelKind model, std::size_t n) {
    return model == ModelKind::Free ? n - 1 : n;
}

double cancellation(double max_term, double value) {
    return max_term / std::max(std::abs(value), DBL_MIN);
}

void check_domain(std::size_t n, std::size_t m) {
    if (n == 0) throw DomainError("closed forms need at least one random node (n >= 1)");
    if (m == 0) throw DomainError("component count m must be >= 1");
}

// Binary64 evaluation state shared by every m at one (model, n, rho).
class FloatSums {
public:
    FloatSums(ModelKind model, std::size_t n, const Ratio& rho)
        : n_(n), width_(summation_width(model, n)), k_(truncation_index(model, n, rho)),
          log_domain_(width_ > kPascalLimit) {
        const double r = rho.value();
        powers_.resize(k_ + 1);
        log_powers_.resize(k_ + 1);
        for (std::size_t i = 0; i <= k_; ++i) {
            const double base = (r - static_cast<double>(i)) / r;
            powers_[i] = std::pow(base, static_cast<double>(n_));
            log_powers_[i] = static_cast<double>(n_) * std::log(base);
        }
        if (!log_domain_) build_pascal();
    }

    std::size_t k() const { return k_; }

    ExactValue sum(std::size_t m) const {
        ExactValue out;
        out.mode_used = EvalMode::Float;
        if (m - 1 > k_) return out;

        CompensatedSum total;
        double max_term = 0.0;
        for (std::size_t i = m - 1; i <= k_; ++i) {
            double magnitude = 0.0;
            if (!log_domain_) {
                magnitude = (triangle_[i][m - 1] * row_[i]) * powers_[i];
            }
            if (log_domain_ || !std::isfinite(magnitude)) {
                magnitude = std::exp((log_binomial(i, m - 1) + log_binomial(width_, i)) +
                                     log_powers_[i]);
            }
            const double term = ((i - (m - 1)) % 2 == 0) ? magnitude : -magnitude;
            max_term = std::max(max_term, std::abs(term));
            total.add(term);
        }
        out.value = total.value();
        out.max_term_magnitude = max_term;
        out.cancellation_ratio = cancellation(max_term, out.value);
        return out;
    }

    // Same arithmetic as sum(1) with the C(i, 0) factor dropped; multiplying
    // by 1.0 and adding 0.0 are exact, so the two agree bit for bit.
    ExactValue sum_connected() const {
        ExactValue out;
        out.mode_used = EvalMode::Float;
        CompensatedSum total;
        double max_term = 0.0;
        for (std::size_t i = 0; i <= k_; ++i) {
            double magnitude = 0.0;
            if (!log_domain_) magnitude = row_[i] * powers_[i];
            if (log_domain_ || !std::isfinite(magnitude))
                magnitude = std::exp(log_binomial(width_, i) + log_powers_[i]);
            const double term = (i % 2 == 0) ? magnitude : -magnitude;
            max_term = std::max(max_term, std::abs(term));
            total.add(term);
        }
        out.value = total.value();
        out.max_term_magnitude = max_term;
        out.cancellation_ratio = cancellation(max_term, out.value);
        return out;
    }

private:
    // Rows 0..k of Pascal's triangle (for C(i, m-1)) plus row `width_`.
    void build_pascal() {
        std::vector<double> current{1.0};
        triangle_.reserve(k_ + 1);
        for (std::size_t r = 0;; ++r) {
            if (r <= k_) triangle_.push_back(current);
            if (r == width_) break;
            std::vector<double> next(current.size() + 1, 1.0);
            for (std::size_t j = 1; j < current.size(); ++j) next[j] = current[j - 1] + current[j];
            current = std::move(next);
        }
        row_ = std::move(current);
    }

    std::size_t n_;
    std::size_t width_;
    std::size_t k_;
    bool log_domain_;
    std::vector<double> powers_;
    std::vector<double> log_powers_;
    std::vector<std::vector<double>> triangle_;
    std::vector<double> row_;
};

// Exact evaluation. With rho = P/Q in lowest terms, 1 - i/rho = (P - iQ)/P,
// so every summand shares the denominator P^n and the sum is an integer.
class RationalSums {
public:
    RationalSums(ModelKind model, std::size_t n, const Ratio& rho)
        : k_(truncation_index(model, n, rho)) {
        const mpz_class& p = rho.exact().get_num();
        const mpz_class& q = rho.exact().get_den();
        const unsigned long width = summation_width(model, n);
        mpz_pow_ui(denominator_.get_mpz_t(), p.get_mpz_t(), n);
        weights_.resize(k_ + 1);
        for (std::size_t i = 0; i <= k_; ++i) {
            mpz_class base = p - q * static_cast<unsigned long>(i);
            mpz_class power;
            mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), n);
            weights_[i] = binomial(width, i) * power;
        }
    }

    ExactValue sum(std::size_t m) const {
        ExactValue out;
        out.mode_used = EvalMode::Rational;
        if (m - 1 > k_) {
            out.rational = mpq_class(0);
            return out;
        }
        mpz_class total = 0;
        mpz_class max_term = 0;
        for (std::size_t i = m - 1; i <= k_; ++i) {
            mpz_class term = binomial(i, m - 1) * weights_[i];
            if (term > max_term) max_term = term;
            if ((i - (m - 1)) % 2 == 0)
                total += term;
            else
                total -= term;
        }
        mpq_class value(total, denominator_);
        value.canonicalize();
        mpq_class max_ratio(max_term, denominator_);
        max_ratio.canonicalize();
        out.value = to_double_rounded(value);
        out.max_term_magnitude = to_double_rounded(max_ratio);
        out.cancellation_ratio = cancellation(out.max_term_magnitude, out.value);
        out.rational = std::move(value);
        return out;
    }

private:
    std::size_t k_;
    mpz_class denominator_;
    std::vector<mpz_class> weights_;
};

bool needs_escalation(const ExactValue& v) {
    return !(v.cancellation_ratio <= kEscalationThreshold) || !std::isfinite(v.value);
}

ExactValue escalate(ExactValue rational, const ExactValue& float_pass) {
    rational.float_attempt =
        FloatAttempt{float_pass.value, float_pass.max_term_magnitude, float_pass.cancellation_ratio};
    return rational;
}

}  // namespace

std::string to_string(EvalMode mode) {
    switch (mode) {
    case EvalMode::Float: return "float";
    case EvalMode::Rational: return "rational";
    case EvalMode::Auto: return "auto";
    }
    return "unknown";
}

EvalMode parse_eval_mode(const std::string& text) {
    if (text == "float") return EvalMode::Float;
    if (text == "rational") return EvalMode::Rational;
    if (text == "auto") return EvalMode::Auto;
    throw DomainError("unknown evaluation mode '" + text + "' (expected float, rational or auto)");
}

mpz_class binomial(unsigned long a, unsigned long b) {
    mpz_class result;
    if (b > a) return result;
    mpz_bin_uiui(result.get_mpz_t(), a, b);
    return result;
}

double log_binomial(unsigned long a, unsigned long b) {
    if (b > a) return -std::numeric_limits<double>::infinity();
    if (b == 0 || b == a) return 0.0;
    const double x = static_cast<double>(a);
    const double y = static_cast<double>(b);
    return std::lgamma(x + 1.0) - std::lgamma(y + 1.0) - std::lgamma(x - y + 1.0);
}

std::size_t truncation_index(ModelKind model, std::size_t n, const Ratio& rho) {
    if (n == 0) throw DomainError("closed forms need at least one random node (n >= 1)");
    const std::size_t width = summation_width(model, n);
    const mpz_class floor_rho = rho.floor();
    if (floor_rho >= static_cast<unsigned long>(width)) return width;
    return floor_rho.get_ui();
}

std::size_t max_components(ModelKind model, std::size_t n) {
    return model == ModelKind::Free ? n : n + 1;
}

ExactValue q_m(ModelKind model, std::size_t n, std::size_t m, const Ratio& rho, EvalMode mode) {
    check_domain(n, m);
    if (mode == EvalMode::Rational) return RationalSums(model, n, rho).sum(m);

    ExactValue float_pass = FloatSums(model, n, rho).sum(m);
    if (mode == EvalMode::Float || !needs_escalation(float_pass)) return float_pass;
    return escalate(RationalSums(model, n, rho).sum(m), float_pass);
}

ExactValue q_1_float(ModelKind model, std::size_t n, const Ratio& rho) {
    check_domain(n, 1);
    return FloatSums(model, n, rho).sum_connected();
}

std::vector<ExactValue> distribution_values(ModelKind model, std::size_t n, const Ratio& rho,
                                            EvalMode mode) {
    check_domain(n, 1);
    const std::size_t top = max_components(model, n);
    std::vector<ExactValue> values;
    values.reserve(top);

    if (mode != EvalMode::Rational) {
        const FloatSums sums(model, n, rho);
        for (std::size_t m = 1; m <= top; ++m) values.push_back(sums.sum(m));
        if (mode == EvalMode::Float ||
            std::none_of(values.begin(), values.end(), needs_escalation))
            return values;
    }

    const RationalSums sums(model, n, rho);
    std::vector<ExactValue> exact;
    exact.reserve(top);
    for (std::size_t m = 1; m <= top; ++m) {
        ExactValue v = sums.sum(m);
        exact.push_back(mode == EvalMode::Auto ? escalate(std::move(v), values[m - 1]) : std::move(v));
    }
    return exact;
}

ComponentDistribution distribution(ModelKind model, std::size_t n, const Ratio& rho,
                                   EvalMode mode) {
    const auto values = distribution_values(model, n, rho, mode);
    ComponentDistribution dist;
    dist.model = Model{model, 0.0};
    dist.n = n;
    dist.rho = rho.value();
    const bool rational = values.front().mode_used == EvalMode::Rational;
    dist.provenance = rational ? Provenance::ExactRational : Provenance::ExactFloat;
    for (std::size_t m = 1; m <= values.size(); ++m) {
        dist.probs[m] = values[m - 1].value;
        if (rational) dist.exact[m] = *values[m - 1].rational;
    }
    return dist;
}

}  // namespace adhoc1d
