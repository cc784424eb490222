#pragma once

#include <cstddef>
#include <vector>

#include "conespline/approx.hpp"

namespace conespline {

struct MinConfig
{
    double tolerance;
    ConeParams params;
    Interval interval;
    std::size_t max_points = 1'000'000;

    void validate() const;
};

/// One Step-1 pass of the minimizer: level, number of points flagged for
/// splitting from each side, and the sampled minimum at that pass.
struct MinTraceEntry
{
    int level;
    std::size_t plus_flagged;
    std::size_t minus_flagged;
    double sampled_min;
};

struct MinReport
{
    /// Minimum over all sampled values.
    double value;
    std::size_t n_points;
    int n_iterations;
    bool converged;
    RunStatus status;
    /// Subintervals adjacent to a sample attaining `value`. Advisory only:
    /// the error guarantee covers the value, not these locations.
    std::vector<Interval> argmin_candidates;
    std::vector<MinTraceEntry> trace;
};

/// err_i + m_hat - min(v1, v2). Negative values mark a region that is
/// provably above the sampled minimum.
double sided_error_indicator(double err_i, double m_hat, double v1, double v2);

/// In-progress run of the adaptive minimizer.
class MinState
{
public:
    MinState(Function f, const MinConfig& config);

    const MinConfig& config() const noexcept { return m_config; }
    const DyadicPartition& partition() const noexcept { return m_partition; }
    const std::vector<DyadicPoint>& plus_set() const noexcept { return m_plus; }
    const std::vector<DyadicPoint>& minus_set() const noexcept { return m_minus; }
    const std::vector<MinTraceEntry>& trace() const noexcept { return m_trace; }
    RunStatus status() const noexcept { return m_status; }
    bool done() const noexcept { return m_status != RunStatus::running; }

    /// Minimum over every cached value.
    double sampled_min() const;

    MinReport report() const;

private:
    friend void min_step(MinState& state);

    Function m_f;
    MinConfig m_config;
    DyadicPartition m_partition;
    std::vector<DyadicPoint> m_plus;
    std::vector<DyadicPoint> m_minus;
    std::vector<MinTraceEntry> m_trace;
    RunStatus m_status = RunStatus::running;
};

/// Runs one check-then-split cycle. No-op once the state is done.
void min_step(MinState& state);

/// Adaptive global minimization: for functions in the cone the returned
/// value M satisfies 0 <= M - min f <= tolerance.
MinReport minimize(const Function& f, const MinConfig& config);

} // namespace conespline
