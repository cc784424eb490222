#include "conespline/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "conespline/approx.hpp"
#include "conespline/bench.hpp"
#include "conespline/diagnostics.hpp"
#include "conespline/minimize.hpp"
#include "conespline/testbed.hpp"

namespace conespline::cli {

namespace {

/// Errors in flag values that CLI11 cannot see (e.g. a > b).
class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct FunctionFlags
{
    std::string fn = "hump";
    double c = 0.0;
    double delta = 0.2;
    double d = 1.0;
    double a = -1.0;
    double b = 1.0;
    int n_init = 20;
    double c0 = 10.0;
};

void add_function_flags(CLI::App& cmd, FunctionFlags& flags)
{
    cmd.add_option("--fn", flags.fn, "Test function; hump is the negated hump (minimum -1 at c)")
        ->check(CLI::IsMember({"hump", "oscillatory", "osc-parabola", "parabola"}))
        ->capture_default_str();
    cmd.add_option("--c", flags.c, "Hump centre")->capture_default_str();
    cmd.add_option("--delta", flags.delta, "Hump half-width parameter")->capture_default_str();
    cmd.add_option("--d", flags.d, "Oscillation parameter")->capture_default_str();
    cmd.add_option("--a", flags.a, "Left end of the interval")->capture_default_str();
    cmd.add_option("--b", flags.b, "Right end of the interval")->capture_default_str();
    cmd.add_option("--ninit", flags.n_init, "Initial number of subintervals")->capture_default_str();
    cmd.add_option("--c0", flags.c0, "Inflation constant")->capture_default_str();
}

Interval domain_of(const FunctionFlags& flags)
{
    try {
        return Interval(flags.a, flags.b);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--a/--b: ") + e.what());
    }
}

ConeParams params_of(const FunctionFlags& flags)
{
    try {
        return ConeParams(flags.n_init, flags.c0);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--ninit/--c0: ") + e.what());
    }
}

TestFunction function_of(const FunctionFlags& flags)
{
    const Interval domain = domain_of(flags);
    try {
        if (flags.fn == "hump")
            return make_hump(flags.c, flags.delta, domain, params_of(flags), HumpFit::clipped).scaled(-1.0);
        if (flags.fn == "oscillatory")
            return make_oscillatory(flags.d, domain);
        if (flags.fn == "osc-parabola")
            return make_osc_parabola(flags.d, domain);
        return make_parabola(domain);
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

void check_tolerance(double tol)
{
    if (!(tol > 0.0))
        throw UsageError("--tol must be positive");
}

// ---------------------------------------------------------------------------
// Plot data

void write_series(const std::filesystem::path& dir,
                  const std::string& label,
                  const std::string& series,
                  const std::vector<std::pair<double, double>>& points)
{
    const std::filesystem::path path = dir / (label + "_" + series + ".csv");
    std::ofstream file(path);
    if (!file)
        throw IoError("cannot write " + path.string());
    file << "x,value\n";
    for (const auto& [x, y] : points)
        file << bench::format_double(x) << ',' << bench::format_double(y + 0.0) << '\n'; // no "-0"
    if (!file)
        throw IoError("error writing " + path.string());
}

std::vector<std::pair<double, double>> samples_of(const DyadicPartition& partition)
{
    std::vector<std::pair<double, double>> points;
    points.reserve(partition.size());
    for (const DyadicPartition::Node& node : partition.nodes())
        points.emplace_back(node.x, node.value);
    return points;
}

template <class G>
std::vector<std::pair<double, double>> dense_series(const G& g, const Interval& on, long m)
{
    std::vector<std::pair<double, double>> points;
    points.reserve(static_cast<std::size_t>(m) + 1);
    for (long k = 0; k <= m; ++k) {
        const double x = k == m ? on.b() : on.a() + on.width() * static_cast<double>(k) / static_cast<double>(m);
        points.emplace_back(x, g(x));
    }
    return points;
}

constexpr long plot_points = 2000;

std::string status_name(RunStatus status)
{
    switch (status) {
    case RunStatus::running:
        return "running";
    case RunStatus::converged:
        return "converged";
    case RunStatus::budget_exhausted:
        return "budget_exhausted";
    case RunStatus::resolution_exhausted:
        return "resolution_exhausted";
    }
    return "unknown";
}

void print_header(std::ostream& out, const TestFunction& t, const FunctionFlags& flags, double tol)
{
    out << "function: " << t.label << " (" << flags.fn << ")\n"
        << "interval: [" << t.domain.a() << ", " << t.domain.b() << "]\n"
        << "tolerance: " << tol << "\n"
        << "ninit: " << flags.n_init << "\n"
        << "c0: " << flags.c0 << "\n";
}

// ---------------------------------------------------------------------------
// Subcommands

struct RunFlags
{
    FunctionFlags function;
    double tol = 0.0;
    std::size_t max_points = 1'000'000;
    long grid = 100'000;
    std::string dump;
};

void add_run_flags(CLI::App& cmd, RunFlags& flags)
{
    add_function_flags(cmd, flags.function);
    cmd.add_option("--tol", flags.tol, "Absolute error tolerance")->required();
    cmd.add_option("--max-points", flags.max_points, "Evaluation budget")->capture_default_str();
    cmd.add_option("--grid", flags.grid, "Dense reference grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--dump", flags.dump, "Directory for plot-data CSV files");
}

int cmd_approx(const RunFlags& flags, std::ostream& out)
{
    check_tolerance(flags.tol);
    const TestFunction t = function_of(flags.function);
    const ApproxConfig config{flags.tol, params_of(flags.function), t.domain, flags.max_points};
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    ApproxState state(t.f, config);
    while (!state.done())
        approx_step(state);
    const ApproxReport report = state.report();
    const double error = dense_sup_error(t.f, report.spline, flags.grid);

    print_header(out, t, flags.function, flags.tol);
    out << "points: " << report.n_points << "\n"
        << "iterations: " << report.n_iterations << "\n"
        << "checks: " << report.trace.size() << "\n"
        << "converged: " << (report.converged ? "true" : "false") << "\n"
        << "status: " << status_name(report.status) << "\n"
        << "sup_error: " << error << " (grid " << flags.grid << ")\n";

    if (!flags.dump.empty()) {
        const std::string label = "approx-" + flags.function.fn;
        write_series(flags.dump, label, "samples", samples_of(state.partition()));
        write_series(flags.dump, label, "spline", dense_series(report.spline, t.domain, plot_points));
        write_series(flags.dump, label, "function", dense_series(t.f, t.domain, plot_points));
    }
    return exit_ok;
}

int cmd_min(const RunFlags& flags, std::ostream& out)
{
    check_tolerance(flags.tol);
    const TestFunction t = function_of(flags.function);
    const MinConfig config{flags.tol, params_of(flags.function), t.domain, flags.max_points};
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    MinState state(t.f, config);
    while (!state.done())
        min_step(state);
    const MinReport report = state.report();

    print_header(out, t, flags.function, flags.tol);
    out << "value: " << bench::format_double(report.value) << "\n"
        << "points: " << report.n_points << "\n"
        << "iterations: " << report.n_iterations << "\n"
        << "checks: " << report.trace.size() << "\n"
        << "converged: " << (report.converged ? "true" : "false") << "\n"
        << "status: " << status_name(report.status) << "\n";
    if (t.known_min)
        out << "known_min: " << bench::format_double(t.known_min->value) << "\n";
    out << "argmin_candidates:";
    for (const Interval& iv : report.argmin_candidates)
        out << " [" << iv.a() << ", " << iv.b() << "]";
    out << "\n";

    if (!flags.dump.empty()) {
        const std::string label = "min-" + flags.function.fn;
        write_series(flags.dump, label, "samples", samples_of(state.partition()));
        write_series(flags.dump, label, "function", dense_series(t.f, t.domain, plot_points));
    }
    return exit_ok;
}

struct BenchFlags
{
    std::string mode = "approx";
    std::vector<std::string> families{"f1", "f2", "f3"};
    std::size_t trials = 100;
    std::uint64_t seed = 7;
    double tol = 1e-6;
    int n_init = 20;
    double c0 = 10.0;
    std::size_t max_points = 1'000'000;
    long grid = 0;
    std::string out = "-";
    unsigned threads = 0;
};

unsigned worker_count(unsigned flag)
{
    if (flag > 0)
        return flag;
    if (const char* env = std::getenv("CONESPLINE_THREADS"); env && *env) {
        char* end = nullptr;
        const unsigned long n = std::strtoul(env, &end, 10);
        if (*end != '\0' || n == 0 || n > 1024)
            throw UsageError("CONESPLINE_THREADS must be a positive integer");
        return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err)
{
    check_tolerance(flags.tol);
    bench::BenchOptions options{.mode = flags.mode == "min" ? bench::Mode::min : bench::Mode::approx,
                                .families = flags.families,
                                .trials = flags.trials,
                                .seed = flags.seed,
                                .tolerance = flags.tol,
                                .n_init = flags.n_init,
                                .c0 = flags.c0,
                                .max_points = flags.max_points,
                                .grid = flags.grid,
                                .threads = worker_count(flags.threads)};
    try {
        (void)ConeParams(flags.n_init, flags.c0);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    // Open the destination first so an unwritable path fails fast.
    std::ofstream file;
    const bool to_stdout = flags.out == "-";
    if (!to_stdout) {
        file.open(flags.out);
        if (!file)
            throw IoError("cannot write " + flags.out);
    }

    const std::vector<bench::BenchRow> rows = bench::run_bench(options);
    std::ostream& csv = to_stdout ? out : file;
    bench::write_csv(csv, rows);
    csv.flush();
    if (!csv)
        throw IoError("error writing " + flags.out);
    bench::write_summary(to_stdout ? err : out, rows, flags.families);
    return exit_ok;
}

struct DiagFlags
{
    FunctionFlags function;
    int resolution = 64;
    double tol = 0.0;
    long cells = 0;
    int estimator = 64;
};

int cmd_diag_cone(const DiagFlags& flags, std::ostream& out)
{
    const TestFunction t = function_of(flags.function);
    const ConeParams params = params_of(flags.function);
    const int r = flags.resolution;
    const ConeScanReport report = cone_membership_scan(t.oracle(), params, t.domain, {r, r, r, r, r});

    out << "function: " << t.label << " (" << flags.function.fn << ")\n"
        << "critical_width: " << critical_width(params, t.domain) << "\n"
        << "violated: " << (report.violated ? "true" : "false") << "\n";
    if (report.witness) {
        const ConeWitness& w = *report.witness;
        out << "witness: alpha=" << w.alpha << " beta=" << w.beta << " h_minus=" << w.h_minus
            << " h_plus=" << w.h_plus << "\n"
            << "sup_second_derivative: " << w.sup << "\n"
            << "cone_bound: " << w.bound << "\n";
    }
    out << "margin: " << report.margin << "\n";
    return exit_ok;
}

int cmd_diag_norms(const DiagFlags& flags, std::ostream& out)
{
    const TestFunction t = function_of(flags.function);
    const double width = t.domain.width();
    const double sup = sup_norm(t.f_second, t.domain, 100'000, t.kinks);
    const double half = lp_quasinorm(t.f_second, 0.5, t.domain, 1'000'000, t.kinks);
    const double neginf = neginf_seminorm(t.f_prime, t.domain, 256);

    out << "function: " << t.label << " (" << flags.function.fn << ")\n"
        << "sup_norm: " << sup << "\n"
        << "half_quasinorm: " << half << "\n"
        << "neginf_seminorm: " << neginf << "\n"
        << "width_sq_times_neginf: " << width * width * neginf << "\n"
        << "width_sq_times_sup: " << width * width * sup << "\n";
    return exit_ok;
}

int cmd_diag_costbound(const DiagFlags& flags, std::ostream& out)
{
    check_tolerance(flags.tol);
    const TestFunction t = function_of(flags.function);
    const ConeParams params = params_of(flags.function);
    const long cells = flags.cells > 0 ? flags.cells : static_cast<long>(params.n_init()) << 12;
    const DerivativeOracle oracle = t.oracle();

    const double bound_approx = cost_bound_approx(oracle, flags.tol, params, t.domain, cells, flags.estimator);
    const ApproxReport approx = approximate(t.f, {flags.tol, params, t.domain});
    const MinReport min = minimize(t.f, {flags.tol, params, t.domain});

    out << "function: " << t.label << " (" << flags.function.fn << ")\n"
        << "tolerance: " << flags.tol << "\n"
        << "cost_bound_approx: " << bound_approx << "\n"
        << "approx_points: " << approx.n_points << "\n";
    if (t.known_min && !t.known_min->locations.empty()) {
        const double x_star = t.known_min->locations.front();
        const double bound_min = cost_bound_min(oracle, flags.tol, x_star, params, t.domain, cells, flags.estimator);
        out << "cost_bound_min: " << bound_min << "\n";
    } else {
        out << "cost_bound_min: unavailable (no known minimizer)\n";
    }
    out << "min_points: " << min.n_points << "\n";
    return exit_ok;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Guaranteed adaptive linear-spline approximation and global minimization"};
    app.name("conespline");
    app.require_subcommand(1);

    RunFlags approx_flags;
    CLI::App* approx = app.add_subcommand("approx", "Approximate a test function to a tolerance");
    add_run_flags(*approx, approx_flags);

    RunFlags min_flags;
    CLI::App* min = app.add_subcommand("min", "Minimize a test function to a tolerance");
    add_run_flags(*min, min_flags);

    BenchFlags bench_flags;
    CLI::App* bench = app.add_subcommand("bench", "Run seeded random trials over the test families");
    bench->add_option("--mode", bench_flags.mode)->check(CLI::IsMember({"approx", "min"}))->capture_default_str();
    bench->add_option("--families", bench_flags.families, "Comma-separated subset of f0,f1,f2,f3")
        ->delimiter(',')
        ->check(CLI::IsMember({"f0", "f1", "f2", "f3"}))
        ->capture_default_str();
    bench->add_option("--trials", bench_flags.trials)->capture_default_str();
    bench->add_option("--seed", bench_flags.seed)->capture_default_str();
    bench->add_option("--tol", bench_flags.tol)->capture_default_str();
    bench->add_option("--ninit", bench_flags.n_init)->capture_default_str();
    bench->add_option("--c0", bench_flags.c0)->capture_default_str();
    bench->add_option("--max-points", bench_flags.max_points)->capture_default_str();
    bench->add_option("--grid", bench_flags.grid, "Reference grid (0: 200000 for approx, 1000000 for min)")
        ->capture_default_str();
    bench->add_option("--out", bench_flags.out, "CSV destination, - for stdout")->capture_default_str();
    bench->add_option("--threads", bench_flags.threads, "Workers (0: CONESPLINE_THREADS or all cores)")
        ->capture_default_str();

    DiagFlags diag_flags;
    CLI::App* diag = app.add_subcommand("diag", "Norms, cone scan and cost bounds");
    diag->require_subcommand(1);
    CLI::App* cone = diag->add_subcommand("cone", "Search for a cone-condition violation");
    add_function_flags(*cone, diag_flags.function);
    cone->add_option("--resolution", diag_flags.resolution, "Grid size per scan axis")
        ->check(CLI::Range(2, 4096))
        ->capture_default_str();
    CLI::App* norms = diag->add_subcommand("norms", "Second-derivative norms");
    add_function_flags(*norms, diag_flags.function);
    CLI::App* costbound = diag->add_subcommand("costbound", "Cost bounds next to realized costs");
    add_function_flags(*costbound, diag_flags.function);
    costbound->add_option("--tol", diag_flags.tol)->required();
    costbound->add_option("--cells", diag_flags.cells, "Quadrature cells (0: ninit * 2^12)")->capture_default_str();
    costbound->add_option("--estimator", diag_flags.estimator, "Sup-norm grid per neighbourhood")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (approx->parsed())
            return cmd_approx(approx_flags, out);
        if (min->parsed())
            return cmd_min(min_flags, out);
        if (bench->parsed())
            return cmd_bench(bench_flags, out, err);
        if (cone->parsed())
            return cmd_diag_cone(diag_flags, out);
        if (norms->parsed())
            return cmd_diag_norms(diag_flags, out);
        if (costbound->parsed())
            return cmd_diag_costbound(diag_flags, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_io_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_io_error;
    }
    return exit_usage;
}

} // namespace conespline::cli
