#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace conespline::bench {

enum class Mode
{
    approx,
    min,
};

struct BenchOptions
{
    Mode mode = Mode::approx;
    /// Any of f0, f1, f2, f3. In min mode f1 is negated so its minimum is the hump.
    std::vector<std::string> families{"f1", "f2", "f3"};
    std::size_t trials = 100;
    std::uint64_t seed = 7;
    double tolerance = 1e-6;
    int n_init = 250;
    double c0 = 10.0;
    std::size_t max_points = 1'000'000;
    /// Reference grid: dense sup-error grid in approx mode, brute-force
    /// minimum grid in min mode.
    long grid = 0; // 0 selects 200000 (approx) or 1000000 (min)
    unsigned threads = 1;
};

/// One trial. All fields except wall_time_s are deterministic for a seed.
struct BenchRow
{
    std::string family;
    std::size_t trial;
    double parameter;
    double tolerance;
    std::size_t n_points;
    int n_iterations;
    bool converged;
    /// Measured sup error (approx) or sampled-min gap value - reference (min).
    double error;
    bool success;
    /// Time spent in the algorithm only, not in the reference check.
    double wall_time_s;
};

/// Runs every (family, trial) pair on `options.threads` workers and returns
/// rows in family-then-trial order.
std::vector<BenchRow> run_bench(const BenchOptions& options);

/// Header plus one line per row; floats with 17 significant digits, wall
/// time in the last column.
void write_csv(std::ostream& out, std::span<const BenchRow> rows);

/// Per-family mean samples, mean time and success percentage.
void write_summary(std::ostream& out, std::span<const BenchRow> rows, const std::vector<std::string>& families);

/// Locale-independent rendering with 17 significant digits.
std::string format_double(double value);

} // namespace conespline::bench
