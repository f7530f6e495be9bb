// adhoc1d: component-count probabilities for one-dimensional ad hoc networks.
//
//   adhoc1d exact    --model anchored --n 5 --m 2 --rho 5
//   adhoc1d simulate --model anchored --x 0 --n 5 --rho 5 --trials 100000
//   adhoc1d figures  --out figures --trials 100000 --svg
//   adhoc1d validate --level full
//
// Exit codes: 0 success, 1 validation or statistical failure, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adhoc1d/compare.hpp"
#include "adhoc1d/exact.hpp"
#include "adhoc1d/monte_carlo.hpp"
#include "adhoc1d/sweep.hpp"
#include "adhoc1d/validate.hpp"

namespace {

using namespace adhoc1d;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string model = "free";
    std::optional<double> x;
    std::optional<double> length;
    std::optional<double> radius;
    std::optional<double> rho;
    std::size_t n = 0;
    std::size_t m = 1;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    std::string mode = "auto";
    std::string out = "figures";
    bool svg = false;
    std::string level = "quick";
    double rho_start = 0.25;
    double rho_stop = 30.0;
    double rho_step = 0.25;
    std::string config_file;
};

void add_model_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--model", f.model, "Network model")
        ->check(CLI::IsMember({"free", "anchored"}))
        ->capture_default_str();
    sub->add_option("--rho", f.rho, "Ratio L/r")->check(CLI::PositiveNumber);
    sub->add_option("--L", f.length, "Segment length")->check(CLI::PositiveNumber);
    sub->add_option("--r", f.radius, "Transmission radius")->check(CLI::PositiveNumber);
    sub->add_option("--n", f.n, "Number of random nodes")->required()->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
}

void add_run_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--seed", f.seed, "Root seed")->envname("ADHOC1D_SEED")->capture_default_str();
    sub->add_option("--workers", f.workers, "Worker threads (0 = one per hardware thread)")
        ->envname("ADHOC1D_WORKERS")
        ->capture_default_str();
}

void add_config_flag(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config_file,
                    "File of 'flag = value' lines; command-line flags take precedence");
}

void add_mode_flag(CLI::App* sub, Flags& f) {
    sub->add_option("--mode", f.mode, "Exact evaluation mode")
        ->check(CLI::IsMember({"float", "rational", "auto"}))
        ->capture_default_str();
}

// Resolves --rho / --L / --r into (L, r). Without --L the segment length is
// rho itself and r = 1, which keeps rho exact.
std::pair<double, double> resolve_geometry(const Flags& f) {
    if (f.rho && f.radius && f.length)
        throw UsageError("--rho: give either --rho or --L with --r, not all three");
    if (f.rho && f.radius) throw UsageError("--r: cannot be combined with --rho (use --L with --rho)");
    if (f.rho) {
        if (f.length) return {*f.length, *f.length / *f.rho};
        return {*f.rho, 1.0};
    }
    if (f.length && f.radius) return {*f.length, *f.radius};
    throw UsageError("--rho: required (or both --L and --r)");
}

NetworkConfig resolve_config(const Flags& f) {
    const auto [length, radius] = resolve_geometry(f);
    NetworkConfig config{f.n, length, radius, std::nullopt};
    if (f.model == "anchored") {
        config.access_point = f.x.value_or(0.0);
    } else if (f.x) {
        throw UsageError("--x: an access point needs --model anchored");
    }
    auto check = validate_config(config);
    if (auto* violations = std::get_if<std::vector<ConfigViolation>>(&check)) {
        const auto& v = violations->front();
        const std::string flag = v.field == "access_point" ? "--x" : v.field == "length" ? "--L" : "--r";
        throw UsageError(flag + ": " + v.constraint);
    }
    return config;
}

std::string describe(const Model& model, std::size_t n, double rho) {
    return "model=" + to_string(model) + " n=" + std::to_string(n) + " rho=" + format_double(rho);
}

int cmd_exact(const Flags& f) {
    const auto [length, radius] = resolve_geometry(f);
    if (f.x && !(f.model == "anchored" && *f.x == 0.0))
        throw UsageError("--x: exact values exist only for the free model and an access point at 0");
    const Ratio rho = Ratio::from_length_radius(length, radius);
    const ModelKind kind = parse_model_kind(f.model);
    const ExactValue v = q_m(kind, f.n, f.m, rho, parse_eval_mode(f.mode));

    std::cout << describe(Model{kind, 0.0}, f.n, rho.value()) << " m=" << f.m << '\n';
    std::cout << "q_exact: " << format_double(std::clamp(v.value, 0.0, 1.0)) << '\n';
    if (v.value < 0.0 || v.value > 1.0) std::cout << "raw: " << format_double(v.value) << '\n';
    if (v.rational) std::cout << "rational: " << v.rational->get_str() << '\n';
    std::cout << "eval_mode: " << to_string(v.mode_used) << '\n';
    std::cout << "max_term_magnitude: " << format_double(v.max_term_magnitude) << '\n';
    std::cout << "cancellation_ratio: " << format_double(v.cancellation_ratio) << '\n';
    if (v.float_attempt) {
        std::cout << "float_attempt: value=" << format_double(v.float_attempt->value)
                  << " cancellation_ratio=" << format_double(v.float_attempt->cancellation_ratio)
                  << " (escalated above " << format_double(kEscalationThreshold) << ")\n";
    }
    return kExitOk;
}

int cmd_simulate(const Flags& f) {
    if (f.trials == 0) throw UsageError("--trials: must be >= 1");
    const NetworkConfig config = resolve_config(f);
    const auto estimates = estimate_distribution(config, f.trials, f.seed, f.workers);
    const Model model = config.model();

    std::cout << describe(model, config.n, config.ratio()) << " trials=" << f.trials
              << " seed=" << f.seed << '\n';
    std::printf("%4s %10s %12s %12s %12s %12s\n", "m", "count", "p_hat", "stderr", "ci_low", "ci_high");
    for (const auto& e : estimates) {
        std::printf("%4zu %10llu %12.6g %12.6g %12.6g %12.6g\n", e.m,
                    static_cast<unsigned long long>(e.count), e.p_hat, e.std_error, e.ci_low, e.ci_high);
    }

    if (!model.has_closed_form()) {
        std::cout << "note: no closed form is available for an access point at x="
                  << format_double(*config.access_point) << "; estimates only\n";
        return kExitOk;
    }

    const auto exact = distribution(model.kind, config.n, Ratio::from_double(config.ratio()),
                                    parse_eval_mode(f.mode));
    const auto report = compare(config, estimates, exact);
    std::cout << "comparison against the closed form:\n";
    std::printf("%4s %12s %12s %9s\n", "m", "q_exact", "p_hat", "z");
    for (const auto& row : report.rows)
        std::printf("%4zu %12.6g %12.6g %9.3f\n", row.m, row.exact, row.p_hat, row.z);
    std::printf("chi_square=%.6g dof=%zu p_value=%.6g\n", report.chi_square, report.dof, report.p_value);
    return kExitOk;
}

int cmd_figures(const Flags& f) {
    FigureOptions options;
    options.out_dir = f.out;
    options.trials = f.trials;
    options.seed = f.seed;
    options.workers = f.workers;
    options.mode = parse_eval_mode(f.mode);
    options.svg = f.svg;
    options.rho = {f.rho_start, f.rho_stop, f.rho_step};
    std::vector<std::filesystem::path> written;
    try {
        written = write_figures(options);
    } catch (const std::runtime_error& e) {
        throw UsageError(std::string("--out: ") + e.what());
    }
    for (const auto& path : written) std::cout << path.string() << '\n';
    return kExitOk;
}

int cmd_validate(const Flags& f) {
    ValidationOptions options;
    options.level = parse_validation_level(f.level);
    options.trials = f.trials;
    options.seed = f.seed;
    options.workers = f.workers;
    const auto report = run_validation(options);
    for (const auto& check : report.checks) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << " -- " << check.detail << '\n';
    }
    std::cout << (report.passed() ? "validation passed\n" : "validation FAILED\n");
    return report.passed() ? kExitOk : kExitFailure;
}

// Expands "--config FILE" into flags. Each non-empty, non-comment line is
// "key = value"; a key already given on the command line is skipped.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    std::set<std::string> given;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (a.rfind("--config=", 0) == 0) path = a.substr(9);
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') - 2));
    }
    if (!path) return args;

    std::ifstream in(*path);
    if (!in) throw UsageError("--config: cannot read " + *path);
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("--config: expected 'key = value' in '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config" || given.count(key)) continue;
        if (key == "svg") {
            if (value == "true" || value == "1") args.push_back("--svg");
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    Flags f;
    CLI::App app{"Component-count probabilities for one-dimensional ad hoc networks"};
    app.require_subcommand(1);

    auto* exact = app.add_subcommand("exact", "Evaluate Q_m from the closed form");
    add_model_flags(exact, f);
    exact->add_option("--m", f.m, "Component count")->required()->check(CLI::PositiveNumber);
    exact->add_option("--x", f.x, "Access point position (only 0 has a closed form)");
    add_mode_flag(exact, f);
    add_config_flag(exact, f);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the component distribution");
    add_model_flags(simulate, f);
    simulate->add_option("--x", f.x, "Access point position in [0, L] (anchored model)");
    simulate->add_option("--trials", f.trials, "Number of trials")->capture_default_str();
    add_run_flags(simulate, f);
    add_mode_flag(simulate, f);
    add_config_flag(simulate, f);

    auto* figures = app.add_subcommand("figures", "Write fig1.csv .. fig6.csv (anchored model, n = 5, 10, 20)");
    figures->add_option("--out", f.out, "Output directory")->capture_default_str();
    figures->add_option("--trials", f.trials, "Monte Carlo trials per (n, rho) point; 0 = exact only")
        ->capture_default_str();
    figures->add_flag("--svg", f.svg, "Also render one SVG chart per file");
    figures->add_option("--rho-start", f.rho_start, "First rho")->capture_default_str();
    figures->add_option("--rho-stop", f.rho_stop, "Last rho")->capture_default_str();
    figures->add_option("--rho-step", f.rho_step, "rho increment")->capture_default_str();
    add_run_flags(figures, f);
    add_mode_flag(figures, f);
    add_config_flag(figures, f);

    auto* validate = app.add_subcommand("validate", "Run the invariant, oracle and simulation checks");
    validate->add_option("--level", f.level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();
    validate->add_option("--trials", f.trials, "Monte Carlo trials per point (full level)")
        ->capture_default_str();
    add_run_flags(validate, f);
    add_config_flag(validate, f);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*exact) return cmd_exact(f);
        if (*simulate) return cmd_simulate(f);
        if (*figures) return cmd_figures(f);
        if (*validate) return cmd_validate(f);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
