#pragma once

#include <cstddef>
#include <vector>

#include "conespline/core.hpp"
#include "conespline/dyadic_partition.hpp"
#include "conespline/linear_spline.hpp"

namespace conespline {

/// Why an adaptive run stopped (or that it has not yet).
enum class RunStatus
{
    running,
    converged,
    budget_exhausted,     // the next refinement would exceed max_points
    resolution_exhausted, // midpoints no longer representable
};

struct ApproxConfig
{
    double tolerance;
    ConeParams params;
    Interval interval;
    std::size_t max_points = 1'000'000;

    /// Throws std::invalid_argument unless tolerance > 0 and
    /// max_points >= n_init + 1.
    void validate() const;
};

/// One Step-1 pass: the level it ran at, the size of the active set and how
/// many of its members exceeded the tolerance.
struct ApproxTraceEntry
{
    int level;
    std::size_t active;
    std::size_t flagged;
};

struct ApproxReport
{
    LinearSpline spline;
    std::size_t n_points;
    /// Number of refinement rounds performed (the final level). The number of
    /// convergence checks is trace.size().
    int n_iterations;
    bool converged;
    RunStatus status;
    std::vector<ApproxTraceEntry> trace;
};

/// In-progress run of the adaptive approximation algorithm.
class ApproxState
{
public:
    ApproxState(Function f, const ApproxConfig& config);

    const ApproxConfig& config() const noexcept { return m_config; }
    const DyadicPartition& partition() const noexcept { return m_partition; }
    /// Points whose error indicator is checked on the next pass.
    const std::vector<DyadicPoint>& active() const noexcept { return m_active; }
    const std::vector<ApproxTraceEntry>& trace() const noexcept { return m_trace; }
    RunStatus status() const noexcept { return m_status; }
    bool done() const noexcept { return m_status != RunStatus::running; }

    ApproxReport report() const;

private:
    friend void approx_step(ApproxState& state);

    Function m_f;
    ApproxConfig m_config;
    DyadicPartition m_partition;
    std::vector<DyadicPoint> m_active;
    std::vector<ApproxTraceEntry> m_trace;
    RunStatus m_status = RunStatus::running;
};

/// Runs one check-then-split cycle. No-op once the state is done.
void approx_step(ApproxState& state);

/// Adaptive linear-spline approximation with sup-norm error at most
/// config.tolerance for functions in the cone. Budget exhaustion is reported
/// through `converged == false`, not by throwing.
ApproxReport approximate(const Function& f, const ApproxConfig& config);

} // namespace conespline
