#include "adhoc1d/validate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "adhoc1d/monte_carlo.hpp"
#include "adhoc1d/quadrature.hpp"
#include "adhoc1d/sweep.hpp"

namespace adhoc1d {
namespace {

const std::vector<double> kNormalizationRhos{0.3, 0.9, 1.0, 1.5, 2.5, 5.0, 10.0, 17.3, 30.0};
const std::vector<double> kOracleRhos{0.5, 1.5, 2.0, 3.0, 5.0, 7.5};
constexpr ModelKind kModels[] = {ModelKind::Free, ModelKind::Anchored};

std::string cell(ModelKind model, std::size_t n, std::size_t m, double rho) {
    std::ostringstream out;
    out << "(model=" << to_string(model) << ", n=" << n << ", m=" << (m == 0 ? "*" : std::to_string(m))
        << ", rho=" << format_double(rho) << ")";
    return out.str();
}

// Records the first failure only; later cells still count toward `cells`.
struct Recorder {
    CheckResult result;
    explicit Recorder(std::string name) { result.name = std::move(name); }
    void check(bool ok, const std::string& where, const std::string& what) {
        ++result.cells;
        if (!ok && result.passed) {
            result.passed = false;
            result.detail = where + ": " + what;
        }
    }
    CheckResult finish() {
        if (result.passed) result.detail = std::to_string(result.cells) + " cells";
        return result;
    }
};

CheckResult normalization_float(const QmEvaluator& eval, std::size_t max_n) {
    Recorder rec("normalization (float, |sum - 1| <= 1e-9)");
    for (ModelKind model : kModels) {
        for (std::size_t n = 1; n <= max_n; ++n) {
            for (double rho : kNormalizationRhos) {
                const Ratio ratio = Ratio::from_double(rho);
                double sum = 0.0;
                for (std::size_t m = 1; m <= max_components(model, n); ++m)
                    sum += eval(model, n, m, ratio, EvalMode::Float).value;
                rec.check(std::abs(sum - 1.0) <= 1e-9, cell(model, n, 0, rho),
                          "sum = " + format_double(sum));
            }
        }
    }
    return rec.finish();
}

CheckResult normalization_rational(const QmEvaluator& eval, std::size_t max_n) {
    Recorder rec("normalization (rational, sum == 1 exactly)");
    for (ModelKind model : kModels) {
        for (std::size_t n = 1; n <= max_n; ++n) {
            for (double rho : kNormalizationRhos) {
                const Ratio ratio = Ratio::from_double(rho);
                mpq_class sum = 0;
                bool exact = true;
                for (std::size_t m = 1; m <= max_components(model, n); ++m) {
                    const auto v = eval(model, n, m, ratio, EvalMode::Rational);
                    if (!v.rational) exact = false; else sum += *v.rational;
                }
                rec.check(exact && sum == 1, cell(model, n, 0, rho),
                          exact ? "sum = " + sum.get_str() : "no rational value returned");
            }
        }
    }
    return rec.finish();
}

CheckResult trivial_cases(const QmEvaluator& eval) {
    Recorder rec("closed cases (anchored n=1, free n=2; 1e-12)");
    for (double rho : {0.25, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 17.3, 30.0, 1000.0}) {
        const Ratio ratio = Ratio::from_double(rho);
        const double anchored = eval(ModelKind::Anchored, 1, 1, ratio, EvalMode::Rational).value;
        const double anchored_expected = rho <= 1.0 ? 1.0 : 1.0 / rho;
        rec.check(std::abs(anchored - anchored_expected) <= 1e-12,
                  cell(ModelKind::Anchored, 1, 1, rho), "got " + format_double(anchored));
        const double free = eval(ModelKind::Free, 2, 1, ratio, EvalMode::Rational).value;
        const double free_expected = rho <= 1.0 ? 1.0 : 1.0 - (1.0 - 1.0 / rho) * (1.0 - 1.0 / rho);
        rec.check(std::abs(free - free_expected) <= 1e-12, cell(ModelKind::Free, 2, 1, rho),
                  "got " + format_double(free));
    }
    return rec.finish();
}

CheckResult saturated_and_empty(const QmEvaluator& eval) {
    Recorder rec("saturated regime and empty sums");
    for (ModelKind model : kModels) {
        for (std::size_t n = 1; n <= 12; ++n) {
            const std::size_t top = max_components(model, n);
            for (double rho : {0.3, 0.9, 1.0}) {
                const Ratio ratio = Ratio::from_double(rho);
                for (std::size_t m = 1; m <= top; ++m) {
                    const auto v = eval(model, n, m, ratio, EvalMode::Rational);
                    const bool ok = v.rational && *v.rational == (m == 1 ? 1 : 0);
                    rec.check(ok, cell(model, n, m, rho), "got " + format_double(v.value));
                }
            }
            for (double rho : {2.5, 5.0, 17.3}) {
                const Ratio ratio = Ratio::from_double(rho);
                const std::size_t k = truncation_index(model, n, ratio);
                for (std::size_t m = k + 2; m <= top + 1; ++m) {
                    for (EvalMode mode : {EvalMode::Float, EvalMode::Rational}) {
                        const auto v = eval(model, n, m, ratio, mode);
                        rec.check(v.value == 0.0, cell(model, n, m, rho),
                                  "empty sum gave " + format_double(v.value));
                    }
                }
            }
        }
    }
    return rec.finish();
}

CheckResult rational_range(const QmEvaluator& eval, std::size_t max_n) {
    Recorder rec("range (rational Q_m in [0, 1])");
    for (ModelKind model : kModels) {
        for (std::size_t n = 1; n <= max_n; ++n) {
            for (double rho : kNormalizationRhos) {
                const Ratio ratio = Ratio::from_double(rho);
                for (std::size_t m = 1; m <= max_components(model, n); ++m) {
                    const auto v = eval(model, n, m, ratio, EvalMode::Rational);
                    const bool ok = v.rational && *v.rational >= 0 && *v.rational <= 1;
                    rec.check(ok, cell(model, n, m, rho), "got " + format_double(v.value));
                }
            }
        }
    }
    return rec.finish();
}

CheckResult oracle_agreement(const QmEvaluator& eval, unsigned workers) {
    Recorder rec("quadrature oracle (n <= 3)");
    for (ModelKind model : kModels) {
        for (std::size_t n = 1; n <= kQuadratureMaxNodes; ++n) {
            const std::size_t grid = n == 3 ? 512 : 1024;
            for (double rho : kOracleRhos) {
                const Ratio ratio = Ratio::from_double(rho);
                const auto oracle = quadrature_distribution(Model{model, 0.0}, n, ratio, grid, workers);
                for (std::size_t m = 1; m <= oracle.size(); ++m) {
                    const double exact = eval(model, n, m, ratio, EvalMode::Rational).value;
                    const double tol = std::max(5.0 * oracle[m - 1].richardson_error, 1e-4);
                    const double diff = std::abs(oracle[m - 1].value - exact);
                    rec.check(diff <= tol, cell(model, n, m, rho),
                              "oracle " + format_double(oracle[m - 1].value) + " vs " +
                                  format_double(exact) + " (tol " + format_double(tol) + ")");
                }
            }
        }
    }
    return rec.finish();
}

CheckResult simulator_agreement(const ValidationOptions& options) {
    std::vector<double> rhos;
    for (int r = 2; r <= 30; r += 2) rhos.push_back(r);
    const auto points =
        agreement_sweep(Model::anchored(), {5, 10, 20}, rhos, options.trials, options.seed, options.workers);
    const auto stats = summarize_agreement(points, 6);

    CheckResult result;
    result.name = "monte carlo agreement (anchored, n in {5,10,20})";
    result.cells = stats.cells;
    const bool z2 = static_cast<double>(stats.within_2) >= 0.95 * static_cast<double>(stats.cells);
    const bool z5 = stats.within_5 == stats.cells;
    const bool chi = static_cast<double>(stats.chi_passing) >= 0.99 * static_cast<double>(stats.chi_points);
    result.passed = z2 && z5 && chi;
    std::ostringstream detail;
    detail << stats.within_2 << "/" << stats.cells << " |z|<=2, " << stats.within_5 << "/"
           << stats.cells << " |z|<=5, " << stats.chi_passing << "/" << stats.chi_points
           << " chi-square p>0.001; worst " << stats.worst;
    result.detail = detail.str();
    return result;
}

}  // namespace

ValidationLevel parse_validation_level(const std::string& text) {
    if (text == "quick") return ValidationLevel::Quick;
    if (text == "full") return ValidationLevel::Full;
    throw DomainError("unknown validation level '" + text + "' (expected quick or full)");
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validation(const ValidationOptions& options) {
    const QmEvaluator eval = options.evaluator
                                 ? options.evaluator
                                 : QmEvaluator([](ModelKind model, std::size_t n, std::size_t m,
                                                  const Ratio& rho, EvalMode mode) {
                                       return q_m(model, n, m, rho, mode);
                                   });
    const bool full = options.level == ValidationLevel::Full;
    const std::size_t rational_n = full ? 50 : 20;

    ValidationReport report;
    report.checks.push_back(normalization_float(eval, 50));
    report.checks.push_back(normalization_rational(eval, rational_n));
    report.checks.push_back(trivial_cases(eval));
    report.checks.push_back(saturated_and_empty(eval));
    report.checks.push_back(rational_range(eval, rational_n));
    if (full) {
        report.checks.push_back(oracle_agreement(eval, options.workers));
        report.checks.push_back(simulator_agreement(options));
    }
    return report;
}

std::vector<PointComparison> agreement_sweep(const Model& model,
                                             const std::vector<std::size_t>& n_values,
                                             const std::vector<double>& rho_values,
                                             std::uint64_t trials, std::uint64_t seed,
                                             unsigned workers) {
    if (!model.has_closed_form()) throw DomainError("agreement sweep needs a closed-form model");
    if (trials == 0) throw DomainError("trials must be >= 1");
    std::vector<PointComparison> points;
    for (std::size_t n : n_values)
        for (double rho : rho_values) points.push_back({n, rho, {}});

    auto evaluate = [&](PointComparison& point) {
        NetworkConfig config{point.n, point.rho, 1.0, std::nullopt};
        if (model.kind == ModelKind::Anchored) config.access_point = 0.0;
        const auto estimates =
            estimate_distribution(config, trials, point_seed(seed, point.n, point.rho), 1);
        const auto exact = distribution(model.kind, point.n, Ratio::from_double(point.rho));
        point.report = compare(config, estimates, exact);
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, points.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < points.size(); i = next++) evaluate(points[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = points.size();
                }
            });
        }
    }
    for (const auto& error : errors)
        if (error) std::rethrow_exception(error);
    return points;
}

AgreementStats summarize_agreement(const std::vector<PointComparison>& points, std::size_t max_m,
                                   double min_q) {
    AgreementStats stats;
    double worst = -1.0;
    for (const auto& point : points) {
        ++stats.chi_points;
        if (point.report.p_value > 1e-3) ++stats.chi_passing;
        for (const auto& row : point.report.rows) {
            if (row.m > max_m || row.exact < min_q) continue;
            ++stats.cells;
            const double az = std::abs(row.z);
            if (az <= 2.0) ++stats.within_2;
            if (az <= 5.0) ++stats.within_5;
            if (az > worst) {
                worst = az;
                std::ostringstream out;
                out << "(n=" << point.n << ", m=" << row.m << ", rho=" << format_double(point.rho)
                    << ", z=" << format_double(row.z) << ")";
                stats.worst = out.str();
            }
        }
    }
    return stats;
}

}  // namespace adhoc1d
