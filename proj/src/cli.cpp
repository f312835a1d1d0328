#include "legendre_fd/cli.hpp"

#include "legendre_fd/errors.hpp"
#include "legendre_fd/fd_core.hpp"
#include "legendre_fd/real.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace legendre_fd {

namespace {

constexpr std::array<double, 5> kSleign2{-1.98326983, 0.855187683, 4.89606686, 10.4183770, 18.8163965};

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(trim(item));
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

int parse_int(const std::string& text, const std::string& what) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigurationError("invalid " + what + ": '" + text + "'");
    }
    return value;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        return parse_real<double>(text);
    } catch (const std::exception&) {
        throw ConfigurationError("invalid " + what + ": '" + text + "'");
    }
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i ? "," : "") + items[i];
    }
    return out;
}

std::size_t expected_params(const std::string& kind) {
    if (kind == "zero") {
        return 0;
    }
    if (kind == "constant") {
        return 1;
    }
    if (kind == "log_product") {
        return 2;
    }
    return std::numeric_limits<std::size_t>::max();
}

template <typename Real>
PotentialSpec<Real> make_potential(const PotentialChoice& choice) {
    std::vector<Real> p;
    for (const auto& s : choice.params) {
        p.push_back(parse_real<Real>(s));
    }
    if (choice.kind == "zero") {
        return PotentialSpec<Real>::zero();
    }
    if (choice.kind == "constant") {
        return PotentialSpec<Real>::constant(p.at(0));
    }
    if (choice.kind == "polynomial") {
        return PotentialSpec<Real>::polynomial(p);
    }
    if (choice.kind == "log_product") {
        return PotentialSpec<Real>::log_product(p.at(0), p.at(1));
    }
    throw ConfigurationError("unknown potential kind '" + choice.kind + "'");
}

template <typename Real>
std::vector<Real> make_breakpoints(const RunConfig& config, const PotentialSpec<Real>& spec) {
    std::vector<Real> out;
    if (config.breakpoints.empty()) {
        out.push_back(Real(-1));
        out.insert(out.end(), spec.singularities().begin(), spec.singularities().end());
        out.push_back(Real(1));
        return out;
    }
    for (const auto& s : config.breakpoints) {
        out.push_back(parse_real<Real>(s));
    }
    return out;
}

template <typename Real>
Mesh<Real> make_mesh(int K, std::vector<Real> breakpoints) {
    if constexpr (std::is_same_v<Real, double>) {
        return build_mesh<double>(K, std::move(breakpoints), cached_delta_table(K, default_delta_cache_path()));
    } else {
        return build_mesh<Real>(K, std::move(breakpoints));
    }
}

struct SolveRecord {
    int n = 0;
    double lambda = 0;
    std::string lambda_text;
    std::vector<double> lambda_steps;
    std::vector<double> lambda_partial;
    std::vector<double> unorm_l2;
    std::vector<double> unorm_sup;
    std::vector<double> eta;
    std::vector<std::array<double, 3>> samples;
    double norm_q = 0;
    BoundReport bound;
};

template <typename Real>
std::string full_digits(const Real& x) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<Real>::max_digits10) << x;
    return out.str();
}

template <typename Real>
std::vector<double> to_doubles(const std::vector<Real>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.push_back(static_cast<double>(x));
    }
    return out;
}

template <typename Real>
SolveRecord record(const FDSolution<Real>& s, const Mesh<Real>& mesh) {
    SolveRecord r;
    r.n = s.n;
    r.lambda = static_cast<double>(s.lambda);
    r.lambda_text = full_digits(s.lambda);
    r.lambda_steps = to_doubles(s.lambda_steps);
    r.lambda_partial = to_doubles(s.lambda_partial);
    r.unorm_l2 = to_doubles(s.unorm_l2);
    r.unorm_sup = to_doubles(s.unorm_sup);
    r.eta = to_doubles(s.eta);
    r.norm_q = s.norm_q;
    r.bound = s.bound;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const auto& sub = mesh.subinterval(k);
        for (int i = -mesh.K(); i <= mesh.K(); ++i) {
            r.samples.push_back({static_cast<double>(sub.node(i).x), static_cast<double>(s.u(k, i)),
                                 static_cast<double>(s.du(k, i))});
        }
    }
    return r;
}

/// Runs `task(i)` for i in [0, count) on at most `jobs` threads; rethrows the
/// first failure in index order.
template <typename Task>
void parallel_for(std::size_t count, int jobs, Task task) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned threads = jobs > 0 ? static_cast<unsigned>(jobs) : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

template <typename Real>
std::vector<SolveRecord> solve_all(const RunConfig& config, std::vector<std::string>& breakpoints_used) {
    const auto spec = make_potential<Real>(config.potential);
    const auto breakpoints = make_breakpoints(config, spec);
    for (const auto& b : breakpoints) {
        breakpoints_used.push_back(format_real(static_cast<double>(b)));
    }
    const auto mesh = make_mesh<Real>(config.K, breakpoints);
    const bool allow = config.allow_interior_singularities;
    const double norm_q = static_cast<double>(weighted_l1_norm(spec, mesh, allow));
    const auto samples = sample_potential(spec, mesh);

    std::vector<SolveRecord> out(config.n_list.size());
    parallel_for(out.size(), config.jobs, [&](std::size_t i) {
        const auto s = solve(LegendreOrder(config.n_list[i]), config.m, spec, mesh, samples, norm_q,
                             FDOptions{allow});
        out[i] = record(s, mesh);
    });
    return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) {
        throw ConfigurationError("cannot write " + path.string());
    }
    return f;
}

void write_steps_csv(const std::filesystem::path& path, const SolveRecord& r) {
    auto f = open_output(path);
    const auto ref = sleign2_reference(r.n);
    f << "m,lambda,unorm_l2,unorm_sup,eta,ref_diff\n";
    for (std::size_t d = 0; d < r.lambda_partial.size(); ++d) {
        f << d << ',' << format_real(r.lambda_partial[d]) << ',' << format_real(r.unorm_l2[d]) << ','
          << format_real(r.unorm_sup[d]) << ',' << format_real(r.eta[d]) << ',';
        if (ref) {
            f << format_real(std::abs(r.lambda_partial[d] - *ref));
        }
        f << '\n';
    }
}

void write_samples_csv(const std::filesystem::path& path, const SolveRecord& r) {
    auto f = open_output(path);
    f << "x,u,du\n";
    for (const auto& [x, u, du] : r.samples) {
        f << format_real(x) << ',' << format_real(u) << ',' << format_real(du) << '\n';
    }
}

std::string precision_name(Precision p) {
    return p == Precision::extended_precision ? "extended" : "double";
}

void write_summary(std::ostream& f, const RunConfig& config, Precision used,
                   const std::vector<std::string>& breakpoints, const std::vector<SolveRecord>& records) {
    f << "potential = " << config.potential.kind;
    if (!config.potential.params.empty()) {
        f << ':' << join(config.potential.params);
    }
    f << '\n';
    f << "precision = " << precision_name(used) << '\n';
    f << "K = " << config.K << '\n';
    f << "m = " << config.m << '\n';
    f << "breakpoints = " << join(breakpoints) << '\n';
    if (!records.empty()) {
        f << "norm_q = " << format_real(records.front().norm_q) << '\n';
        f << "n0 = " << records.front().bound.n0 << '\n';
    }
    for (const auto& r : records) {
        const std::string p = "n" + std::to_string(r.n) + ".";
        f << '\n';
        f << p << "lambda = " << r.lambda_text << '\n';
        f << p << "last_correction = " << format_real(r.lambda_steps.back()) << '\n';
        f << p << "eta = " << format_real(r.eta.back()) << '\n';
        f << p << "unorm_l2 = " << format_real(r.unorm_l2.back()) << '\n';
        f << p << "unorm_sup = " << format_real(r.unorm_sup.back()) << '\n';
        const auto ref = compare_reference(r.lambda, r.n);
        if (ref.has_reference) {
            f << p << "sleign2 = " << format_real(ref.reference) << '\n';
            f << p << "sleign2_difference = " << format_real(ref.difference) << '\n';
        } else {
            f << p << "sleign2 = no reference\n";
        }
        f << p << "converges_by_theorem = " << (r.bound.convergent ? "true" : "false") << '\n';
    }
}

void write_bounds(std::ostream& f, const std::vector<SolveRecord>& records) {
    for (const auto& r : records) {
        const auto& b = r.bound;
        const std::string p = "n" + std::to_string(r.n) + ".";
        f << p << "norm_q = " << format_real(b.norm_q) << '\n';
        f << p << "n0 = " << b.n0 << '\n';
        f << p << "applicable = " << (b.applicable ? "true" : "false") << '\n';
        if (b.applicable) {
            f << p << "alpha_tilde = " << format_real(b.alpha_tilde) << '\n';
            f << p << "beta = " << format_real(b.beta) << '\n';
            f << p << "beta_bound = " << format_real(b.beta_bound) << '\n';
        }
        f << p << "convergent = " << (b.convergent ? "true" : "false") << '\n';
        f << p << "coefficient_bound_holds = " << (b.coefficient_bound_holds ? "true" : "false") << '\n';
        f << p << "lambda_error_bound = " << format_real(b.lambda_error) << '\n';
        f << p << "u_error_bound = " << format_real(b.u_error) << '\n';
    }
}

}  // namespace

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::ostringstream out;
    out << std::setprecision(17) << value;
    return out.str();
}

RunConfig paper_experiment_config() {
    RunConfig c;
    c.n_list = {0, 1, 2, 3, 4};
    c.m = 30;
    c.K = 250;
    c.breakpoints = {"-1", "-1/3", "0", "5/12", "1"};
    c.potential = {"log_product", {"5/12", "1/3"}};
    return c;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split(text, ',')) {
        if (item.empty()) {
            throw ConfigurationError("empty entry in eigenindex list '" + text + "'");
        }
        if (const auto dots = item.find(".."); dots != std::string::npos) {
            const int lo = parse_int(trim(item.substr(0, dots)), "eigenindex");
            const int hi = parse_int(trim(item.substr(dots + 2)), "eigenindex");
            if (hi < lo) {
                throw ConfigurationError("empty eigenindex range '" + item + "'");
            }
            for (int n = lo; n <= hi; ++n) {
                out.push_back(n);
            }
        } else {
            out.push_back(parse_int(item, "eigenindex"));
        }
    }
    if (out.empty()) {
        throw ConfigurationError("no eigenindices given");
    }
    return out;
}

PotentialChoice parse_potential(const std::string& text) {
    const auto t = trim(text);
    if (t == "paper") {
        return {"log_product", {"5/12", "1/3"}};
    }
    PotentialChoice c;
    const auto colon = t.find(':');
    c.kind = trim(t.substr(0, colon));
    c.params.clear();
    if (colon != std::string::npos) {
        c.params = split(t.substr(colon + 1), ',');
    }
    if (c.kind != "zero" && c.kind != "constant" && c.kind != "polynomial" && c.kind != "log_product") {
        throw ConfigurationError("unknown potential kind '" + c.kind +
                                 "' (expected zero, constant, polynomial, log_product or paper)");
    }
    for (const auto& p : c.params) {
        parse_double(p, "potential parameter");
    }
    const auto want = expected_params(c.kind);
    if (want != std::numeric_limits<std::size_t>::max() && c.params.size() != want) {
        throw ConfigurationError("potential " + c.kind + " takes " + std::to_string(want) + " parameter(s)");
    }
    if (c.kind == "polynomial" && c.params.empty()) {
        throw ConfigurationError("polynomial potential needs at least one coefficient");
    }
    return c;
}

std::vector<std::string> parse_breakpoints(const std::string& text) {
    auto parts = split(text, ',');
    for (const auto& p : parts) {
        parse_double(p, "breakpoint");
    }
    return parts;
}

unsigned parse_emit(const std::string& text) {
    unsigned out = 0;
    for (const auto& item : split(text, ',')) {
        if (item == "steps_csv") {
            out |= static_cast<unsigned>(Emit::steps_csv);
        } else if (item == "summary") {
            out |= static_cast<unsigned>(Emit::summary);
        } else if (item == "samples") {
            out |= static_cast<unsigned>(Emit::samples);
        } else if (item == "bounds") {
            out |= static_cast<unsigned>(Emit::bounds);
        } else {
            throw ConfigurationError("unknown output '" + item + "' (expected steps_csv, summary, samples, bounds)");
        }
    }
    return out;
}

Precision parse_precision(const std::string& text) {
    if (text == "double") {
        return Precision::double_precision;
    }
    if (text == "extended") {
        return Precision::extended_precision;
    }
    throw ConfigurationError("precision must be double or extended, got '" + text + "'");
}

void validate(const RunConfig& config) {
    if (config.n_list.empty()) {
        throw ConfigurationError("no eigenindices given");
    }
    for (int n : config.n_list) {
        try {
            LegendreOrder check(n);
            (void)check;
        } catch (const DomainError& e) {
            throw ConfigurationError(e.what());
        }
    }
    if (config.m < 0) {
        throw ConfigurationError("step count m must be non-negative");
    }
    if (config.K < 1) {
        throw ConfigurationError("quadrature half-width K must be positive");
    }
    if (config.jobs < 0) {
        throw ConfigurationError("jobs must be non-negative");
    }
    const auto spec = make_potential<double>(config.potential);
    if (!config.breakpoints.empty()) {
        std::vector<double> bps;
        for (const auto& b : config.breakpoints) {
            bps.push_back(parse_double(b, "breakpoint"));
        }
        build_mesh<double>(1, bps);
    }
    if (config.subdivision_study && config.potential.kind != "log_product") {
        throw ConfigurationError("the subdivision study needs the log_product potential");
    }
}

std::optional<double> sleign2_reference(int n) {
    if (n < 0 || n >= static_cast<int>(kSleign2.size())) {
        return std::nullopt;
    }
    return kSleign2[static_cast<std::size_t>(n)];
}

ReferenceRow compare_reference(double lambda, int n) {
    ReferenceRow row;
    row.n = n;
    if (const auto ref = sleign2_reference(n)) {
        row.has_reference = true;
        row.reference = *ref;
        row.difference = std::abs(lambda - *ref);
    }
    return row;
}

std::vector<SubdivisionRow> subdivision_study(const RunConfig& config) {
    if (config.potential.kind != "log_product") {
        throw ConfigurationError("the subdivision study needs the log_product potential");
    }
    const auto spec = make_potential<double>(config.potential);
    std::vector<std::string> aligned{"-1", "0", "1"};
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string& p = config.potential.params[i];
        const double v = parse_real<double>(p) * (i == 0 ? 1 : -1);
        if (v > -1 && v < 1 && v != 0) {
            aligned.push_back(i == 0 ? p : (p.front() == '-' ? p.substr(1) : "-" + p));
        }
    }
    std::sort(aligned.begin(), aligned.end(),
              [](const std::string& x, const std::string& y) { return parse_real<double>(x) < parse_real<double>(y); });

    std::vector<SubdivisionRow> rows{
        {"N=1, none", {"-1", "1"}, 0, {}},
        {"N=4, uniform", {"-1", "-1/2", "0", "1/2", "1"}, 0, {}},
        {"N=" + std::to_string(aligned.size() - 1) + ", singularity-aligned", aligned, 0, {}},
    };
    parallel_for(rows.size(), config.jobs, [&](std::size_t i) {
        std::vector<double> bps;
        for (const auto& b : rows[i].breakpoints) {
            bps.push_back(parse_real<double>(b));
        }
        const auto mesh = make_mesh<double>(config.K, bps);
        const auto s = solve(LegendreOrder(0), config.m, spec, mesh, FDOptions{true});
        rows[i].lambda = s.lambda;
        rows[i].reference = compare_reference(s.lambda, 0);
    });
    return rows;
}

int run(const RunConfig& input, std::ostream& out, std::ostream& err) {
    RunConfig config = input;
    try {
        validate(config);
        if (config.precision == Precision::extended_precision && !has_extended_precision) {
            err << "warning: extended precision is not available in this build; using double\n";
            config.precision = Precision::double_precision;
        }
        if (config.emit != 0) {
            std::filesystem::create_directories(config.output_dir);
        }

        if (config.subdivision_study) {
            const auto rows = subdivision_study(config);
            std::ostringstream table;
            table << "subdivision,breakpoints,lambda,sleign2_difference\n";
            for (const auto& r : rows) {
                table << '"' << r.label << "\",\"" << join(r.breakpoints) << "\"," << format_real(r.lambda) << ','
                      << format_real(r.reference.difference) << '\n';
            }
            out << table.str();
            if (config.emit != 0) {
                auto f = open_output(config.output_dir / "subdivision.csv");
                f << table.str();
            }
            return 0;
        }

        std::vector<std::string> breakpoints;
        std::vector<SolveRecord> records;
        if (config.precision == Precision::extended_precision) {
            records = solve_all<extended>(config, breakpoints);
        } else {
            records = solve_all<double>(config, breakpoints);
        }

        out << "n,lambda,eta,sleign2_difference\n";
        for (const auto& r : records) {
            const auto ref = compare_reference(r.lambda, r.n);
            out << r.n << ',' << r.lambda_text << ',' << format_real(r.eta.back()) << ','
                << (ref.has_reference ? format_real(ref.difference) : "no reference") << '\n';
            if (config.emits(Emit::steps_csv)) {
                write_steps_csv(config.output_dir / ("steps_n" + std::to_string(r.n) + ".csv"), r);
            }
            if (config.emits(Emit::samples)) {
                write_samples_csv(config.output_dir / ("samples_n" + std::to_string(r.n) + ".csv"), r);
            }
        }
        if (config.emits(Emit::summary)) {
            auto f = open_output(config.output_dir / "summary.txt");
            write_summary(f, config, config.precision, breakpoints, records);
        }
        if (config.emits(Emit::bounds)) {
            auto f = open_output(config.output_dir / "bounds.txt");
            write_bounds(f, records);
        }
        return 0;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const ConfigurationError& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace legendre_fd
