#include "adhoc1d/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "adhoc1d/compare.hpp"
#include "adhoc1d/monte_carlo.hpp"
#include "adhoc1d/philox.hpp"

namespace adhoc1d {

std::vector<double> RhoGrid::values() const {
    if (!(start > 0.0) || !(step > 0.0) || !(stop >= start))
        throw DomainError("rho grid needs start > 0, step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j) out.push_back(start + static_cast<double>(j) * step);
    return out;
}

void validate_spec(const SweepSpec& spec) {
    if (spec.n_values.empty()) throw DomainError("sweep needs at least one n");
    if (spec.m_values.empty()) throw DomainError("sweep needs at least one m");
    if (std::find(spec.n_values.begin(), spec.n_values.end(), 0u) != spec.n_values.end())
        throw DomainError("sweep n values must be >= 1");
    if (std::find(spec.m_values.begin(), spec.m_values.end(), 0u) != spec.m_values.end())
        throw DomainError("sweep m values must be >= 1");
    if (!spec.model.has_closed_form())
        throw DomainError("sweeps need a closed form: use the free model or an access point at 0");
    (void)spec.rho.values();
}

std::uint64_t point_seed(std::uint64_t root, std::size_t n, double rho) {
    return derive_seed(root, n, std::bit_cast<std::uint64_t>(rho));
}

SweepRow exact_row(const Model& model, std::size_t n, std::size_t m, double rho, EvalMode mode) {
    const ExactValue v = q_m(model.kind, n, m, Ratio::from_double(rho), mode);
    SweepRow row;
    row.model = model;
    row.n = n;
    row.m = m;
    row.rho = rho;
    row.q_exact = v.value;
    row.eval_mode = v.mode_used;
    row.cancellation_ratio = v.float_attempt ? v.float_attempt->cancellation_ratio : v.cancellation_ratio;
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    validate_spec(spec);
    const auto rhos = spec.rho.values();

    struct Point {
        std::size_t n;
        double rho;
        std::vector<SweepRow> rows;  // one per m, in spec order
    };
    std::vector<Point> points;
    for (std::size_t n : spec.n_values)
        for (double rho : rhos) points.push_back({n, rho, {}});

    auto evaluate = [&](Point& point) {
        std::vector<std::uint64_t> counts;
        if (spec.trials > 0) {
            NetworkConfig config{point.n, point.rho, 1.0, std::nullopt};
            if (spec.model.kind == ModelKind::Anchored) config.access_point = 0.0;
            counts = simulate_counts(config, spec.trials, point_seed(spec.seed, point.n, point.rho), 1);
        }
        for (std::size_t m : spec.m_values) {
            SweepRow row = exact_row(spec.model, point.n, m, point.rho, spec.mode);
            if (spec.trials > 0) {
                const double t = static_cast<double>(spec.trials);
                const std::uint64_t c = m < counts.size() ? counts[m] : 0;
                const double p = static_cast<double>(c) / t;
                row.p_hat = p;
                row.std_error = std::sqrt(p * (1.0 - p) / t);
                row.trials = spec.trials;
                row.z = z_score(p, row.q_exact, spec.trials);
            }
            point.rows.push_back(std::move(row));
        }
    };

    unsigned workers = spec.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : spec.workers;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, points.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < points.size(); i = next++) {
                    try {
                        evaluate(points[i]);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);

    // points are (n, rho)-major; emit (n, m, rho).
    std::vector<SweepRow> rows;
    rows.reserve(points.size() * spec.m_values.size());
    for (std::size_t ni = 0; ni < spec.n_values.size(); ++ni)
        for (std::size_t mi = 0; mi < spec.m_values.size(); ++mi)
            for (std::size_t ri = 0; ri < rhos.size(); ++ri)
                rows.push_back(points[ni * rhos.size() + ri].rows[mi]);
    return rows;
}

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << to_string(r.model.kind) << ',' << r.n << ',' << r.m << ',' << format_double(r.rho)
            << ',' << format_double(r.q_exact) << ',' << to_string(r.eval_mode) << ','
            << format_double(r.cancellation_ratio) << ',';
        if (r.p_hat) out << format_double(*r.p_hat);
        out << ',';
        if (r.std_error) out << format_double(*r.std_error);
        out << ',';
        if (r.trials) out << *r.trials;
        out << ',';
        if (r.z) out << format_double(*r.z);
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

template <typename T>
T parse_number(const std::string& text, const char* column) {
    T value{};
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw DomainError(std::string("csv: bad value in column ") + column + ": '" + text + "'");
    return value;
}

double parse_real(const std::string& text, const char* column) {
    if (text == "inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    if (text == "nan") return NAN;
    return parse_number<double>(text, column);
}

}  // namespace

std::vector<SweepRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw DomainError("csv: unexpected header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 11) throw DomainError("csv: expected 11 fields in '" + line + "'");
        SweepRow r;
        r.model = Model{parse_model_kind(f[0]), 0.0};
        r.n = parse_number<std::size_t>(f[1], "n");
        r.m = parse_number<std::size_t>(f[2], "m");
        r.rho = parse_real(f[3], "rho");
        r.q_exact = parse_real(f[4], "q_exact");
        r.eval_mode = parse_eval_mode(f[5]);
        r.cancellation_ratio = parse_real(f[6], "cancellation_ratio");
        if (!f[7].empty()) r.p_hat = parse_real(f[7], "p_hat");
        if (!f[8].empty()) r.std_error = parse_real(f[8], "stderr");
        if (!f[9].empty()) r.trials = parse_number<std::uint64_t>(f[9], "trials");
        if (!f[10].empty()) r.z = parse_real(f[10], "z");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string render_svg(const std::vector<SweepRow>& rows, const std::string& title) {
    constexpr double width = 640, height = 420, left = 60, right = 20, top = 40, bottom = 50;
    double rho_min = INFINITY, rho_max = -INFINITY, y_max = 0.0;
    std::map<std::size_t, std::vector<const SweepRow*>> by_n;
    for (const auto& r : rows) {
        rho_min = std::min(rho_min, r.rho);
        rho_max = std::max(rho_max, r.rho);
        y_max = std::max({y_max, r.q_exact, r.p_hat.value_or(0.0)});
        by_n[r.n].push_back(&r);
    }
    if (rows.empty()) rho_min = 0.0, rho_max = 1.0;
    if (rho_max <= rho_min) rho_max = rho_min + 1.0;
    y_max = y_max > 0.0 ? std::min(1.0, y_max * 1.05) : 1.0;

    auto sx = [&](double rho) { return left + (rho - rho_min) / (rho_max - rho_min) * (width - left - right); };
    auto sy = [&](double q) { return height - bottom - std::clamp(q, 0.0, 1.0) / y_max * (height - top - bottom); };

    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n"
        << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
        << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << height - bottom << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">L/r</text>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double q = y_max * tick / 4.0;
        svg << "<text x=\"" << left - 6 << "\" y=\"" << sy(q) + 4 << "\" text-anchor=\"end\">"
            << format_double(std::round(q * 1000.0) / 1000.0) << "</text>\n";
    }
    std::size_t series = 0;
    for (const auto& [n, points] : by_n) {
        const char* colour = palette[series % std::size(palette)];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (const auto* p : points) svg << sx(p->rho) << ',' << sy(p->q_exact) << ' ';
        svg << "\"/>\n";
        for (const auto* p : points) {
            if (p->p_hat)
                svg << "<circle cx=\"" << sx(p->rho) << "\" cy=\"" << sy(*p->p_hat)
                    << "\" r=\"2\" fill=\"" << colour << "\"/>\n";
        }
        svg << "<text x=\"" << width - right - 60 << "\" y=\"" << top + 16 * static_cast<double>(series)
            << "\" fill=\"" << colour << "\">n = " << n << "</text>\n";
        ++series;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::filesystem::path> write_figures(const FigureOptions& options) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec || !fs::is_directory(options.out_dir))
        throw std::runtime_error("cannot create output directory " + options.out_dir.string());

    SweepSpec spec;
    spec.model = Model::anchored();
    spec.n_values = options.n_values;
    spec.m_values.clear();
    for (std::size_t m = 1; m <= options.figure_count; ++m) spec.m_values.push_back(m);
    spec.rho = options.rho;
    spec.trials = options.trials;
    spec.seed = options.seed;
    spec.mode = options.mode;
    spec.workers = options.workers;
    const auto rows = run_sweep(spec);

    std::vector<fs::path> written;
    for (std::size_t m : spec.m_values) {
        std::vector<SweepRow> figure;
        std::copy_if(rows.begin(), rows.end(), std::back_inserter(figure),
                     [m](const SweepRow& r) { return r.m == m; });
        const std::string stem = "fig" + std::to_string(m);

        const fs::path csv_path = options.out_dir / (stem + ".csv");
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
        write_csv(csv, figure);
        if (!csv.flush()) throw std::runtime_error("write failed: " + csv_path.string());
        written.push_back(csv_path);

        if (options.svg) {
            const fs::path svg_path = options.out_dir / (stem + ".svg");
            std::ofstream svg(svg_path, std::ios::binary);
            if (!svg) throw std::runtime_error("cannot write " + svg_path.string());
            svg << render_svg(figure, "Q_" + std::to_string(m) + " (anchored) vs L/r");
            written.push_back(svg_path);
        }
    }
    return written;
}

}  // namespace adhoc1d
