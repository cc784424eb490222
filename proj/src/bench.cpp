#include "conespline/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "conespline/approx.hpp"
#include "conespline/minimize.hpp"
#include "conespline/testbed.hpp"

namespace conespline::bench {

namespace {

Family family_of(const std::string& name)
{
    if (name == "f0")
        return Family::parabola;
    if (name == "f1")
        return Family::hump;
    if (name == "f2")
        return Family::oscillatory;
    if (name == "f3")
        return Family::oscillatory_plus_parabola;
    throw std::invalid_argument("unknown family: " + name);
}

struct Job
{
    std::size_t family;
    std::size_t trial;
};

BenchRow run_trial(const BenchOptions& options, const std::string& family, std::size_t trial, const TestFunction& drawn)
{
    using Clock = std::chrono::steady_clock;
    const ConeParams params(options.n_init, options.c0);
    BenchRow row{.family = family, .trial = trial, .parameter = drawn.parameter, .tolerance = options.tolerance};

    if (options.mode == Mode::approx) {
        const long grid = options.grid > 0 ? options.grid : 200'000;
        const auto start = Clock::now();
        const ApproxReport report =
            approximate(drawn.f, {options.tolerance, params, drawn.domain, options.max_points});
        row.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
        row.n_points = report.n_points;
        row.n_iterations = report.n_iterations;
        row.converged = report.converged;
        row.error = dense_sup_error(drawn.f, report.spline, grid);
        row.success = report.converged && row.error <= options.tolerance;
    } else {
        const long grid = options.grid > 0 ? options.grid : 1'000'000;
        const TestFunction target = family == "f1" ? drawn.scaled(-1.0) : drawn;
        const auto start = Clock::now();
        const MinReport report = minimize(target.f, {options.tolerance, params, target.domain, options.max_points});
        row.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
        row.family = target.label;
        row.n_points = report.n_points;
        row.n_iterations = report.n_iterations;
        row.converged = report.converged;
        // The grid minimum is at least the true minimum, so a guaranteed
        // value is never more than the tolerance above it.
        row.error = report.value - brute_force_min(target.f, target.domain, grid).value;
        row.success = report.converged && row.error <= options.tolerance;
    }
    return row;
}

} // namespace

std::vector<BenchRow> run_bench(const BenchOptions& options)
{
    // Cone status metadata is irrelevant here; draws only depend on the seed.
    std::vector<std::vector<TestFunction>> draws;
    std::vector<Job> jobs;
    for (std::size_t fam = 0; fam < options.families.size(); ++fam) {
        FamilySpec spec = FamilySpec::standard(family_of(options.families[fam]), options.seed);
        draws.push_back(sample_family(spec, options.trials));
        for (std::size_t t = 0; t < options.trials; ++t)
            jobs.push_back({fam, t});
    }

    std::vector<BenchRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            const Job job = jobs[k];
            try {
                rows[k] = run_trial(options, options.families[job.family], job.trial, draws[job.family][job.trial]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };

    const unsigned threads = std::max(1u, options.threads);
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
    return rows;
}

std::string format_double(double value)
{
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

void write_csv(std::ostream& out, std::span<const BenchRow> rows)
{
    out << "family,trial,parameter,tolerance,n_points,n_iterations,converged,error,success,wall_time_s\n";
    for (const BenchRow& row : rows) {
        out << row.family << ',' << row.trial << ',' << format_double(row.parameter) << ','
            << format_double(row.tolerance) << ',' << row.n_points << ',' << row.n_iterations << ','
            << (row.converged ? "true" : "false") << ',' << format_double(row.error) << ','
            << (row.success ? "true" : "false") << ',' << format_double(row.wall_time_s) << '\n';
    }
}

void write_summary(std::ostream& out, std::span<const BenchRow> rows, const std::vector<std::string>& families)
{
    struct Totals
    {
        std::size_t count = 0;
        double samples = 0.0;
        double time = 0.0;
        std::size_t successes = 0;
    };
    std::map<std::string, Totals> by_family;
    std::vector<std::string> order;
    for (const BenchRow& row : rows) {
        auto [it, inserted] = by_family.try_emplace(row.family);
        if (inserted)
            order.push_back(row.family);
        it->second.count += 1;
        it->second.samples += static_cast<double>(row.n_points);
        it->second.time += row.wall_time_s;
        it->second.successes += row.success ? 1 : 0;
    }
    if (order.empty())
        order = families;

    char line[160];
    std::snprintf(line, sizeof line, "%-8s %8s %16s %14s %12s\n", "family", "trials", "mean_samples", "mean_time_s",
                  "success_pct");
    out << line;
    for (const std::string& name : order) {
        const Totals t = by_family[name];
        const double n = t.count > 0 ? static_cast<double>(t.count) : 1.0;
        std::snprintf(line, sizeof line, "%-8s %8zu %16.1f %14.6f %12.1f\n", name.c_str(), t.count, t.samples / n,
                      t.time / n, 100.0 * static_cast<double>(t.successes) / n);
        out << line;
    }
}

} // namespace conespline::bench
