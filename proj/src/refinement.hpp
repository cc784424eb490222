#pragma once

// Bookkeeping shared by the approximation and minimization loops.

#include <array>
#include <optional>
#include <vector>

#include "conespline/approx.hpp"
#include "conespline/dyadic_partition.hpp"

namespace conespline::detail {

/// Positions of `active` in the partition, in increasing order. Throws
/// std::logic_error if a member is missing, is an endpoint, or does not sit
/// between two neighbours exactly h_l away.
std::vector<std::size_t> active_positions(const DyadicPartition& partition, const std::vector<DyadicPoint>& active);

/// Midpoints and next-pass active points collected during one Step 2.
class SplitPlan
{
public:
    /// Requests the midpoint of [x_i, x_{i+1}].
    void split(const DyadicPartition& partition, std::size_t i);
    /// Marks p active for the next pass. `side` selects one of two active
    /// sets (the minimizer keeps one per direction).
    void activate(DyadicPoint p, int side = 0) { m_active[side].push_back(p); }
    /// Marks the midpoint of [x_i, x_{i+1}] active for the next pass.
    void activate_midpoint(const DyadicPartition& partition, std::size_t i, int side = 0);

    /// Evaluates and inserts the requested midpoints, then advances the level.
    /// Returns a terminal status instead when the budget or the dyadic
    /// resolution would be exceeded; the partition is then left untouched.
    std::optional<RunStatus> apply(DyadicPartition& partition, const Function& f, std::size_t max_points);

    /// Sorted, duplicate-free active set.
    std::vector<DyadicPoint> take_active(int side = 0);

private:
    std::vector<DyadicPoint> m_points;
    std::array<std::vector<DyadicPoint>, 2> m_active;
    bool m_unresolvable = false;
};

} // namespace conespline::detail
