#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conespline/core.hpp"

namespace conespline {

/// Exact identity of a partition point: the coordinate
/// a + index * (b - a) / (n_init * 2^level), kept in canonical form
/// (index odd, or level zero).
class DyadicPoint
{
public:
    /// Deepest representable level. Keys are index << (max_level - level)
    /// in 128 bits, so n_init may use the remaining 67 bits.
    static constexpr int max_level = 60;

    DyadicPoint() = default;

    /// Canonicalizes (level, index) by stripping common factors of two.
    static DyadicPoint make(int level, std::uint64_t index);

    int level() const noexcept { return m_level; }
    std::uint64_t index() const noexcept { return m_index; }

    /// Position on the finest grid; totally ordered like the coordinates.
    unsigned __int128 key() const noexcept
    {
        return static_cast<unsigned __int128>(m_index) << (max_level - m_level);
    }

    friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
    friend std::strong_ordering operator<=>(const DyadicPoint& lhs, const DyadicPoint& rhs) noexcept
    {
        return lhs.key() <=> rhs.key();
    }

private:
    DyadicPoint(int level, std::uint64_t index) : m_level(level), m_index(index) {}

    int m_level = 0;
    std::uint64_t m_index = 0;
};

/// Midpoint of two distinct points, one level deeper than the finer of the two.
/// Empty when that level would exceed DyadicPoint::max_level.
std::optional<DyadicPoint> dyadic_midpoint(DyadicPoint lhs, DyadicPoint rhs);

/// Sorted sample points of [a, b] on exact dyadic coordinates, each with
/// one cached function value.
class DyadicPartition
{
public:
    struct Node
    {
        DyadicPoint point;
        double x;
        double value;
    };

    /// Uniform partition with params.n_init() subintervals; evaluates f at
    /// all n_init + 1 points.
    DyadicPartition(const Interval& interval, const ConeParams& params, const Function& f);

    const Interval& interval() const noexcept { return m_interval; }
    const ConeParams& params() const noexcept { return m_params; }

    std::size_t size() const noexcept { return m_nodes.size(); }
    const Node& operator[](std::size_t i) const { return m_nodes[i]; }
    std::span<const Node> nodes() const noexcept { return m_nodes; }

    /// Number of distinct function evaluations so far; always equals size().
    std::size_t evaluations() const noexcept { return m_evaluations; }

    /// Current iteration level l and its spacing h_l = (b - a)/(n_init 2^l).
    int global_level() const noexcept { return m_level; }
    void advance_level();
    double spacing() const noexcept { return spacing(m_level); }
    double spacing(int level) const noexcept;

    /// Coordinate a + index (b - a)/(n_init 2^level); bitwise reproducible.
    double coordinate(DyadicPoint p) const noexcept;

    std::optional<std::size_t> position(DyadicPoint p) const;
    bool contains(DyadicPoint p) const { return position(p).has_value(); }

    /// Midpoint of nodes i and i + 1, provided it is representable both as a
    /// dyadic point and as a double strictly between the two coordinates.
    std::optional<DyadicPoint> midpoint_after(std::size_t i) const;

    /// Inserts the midpoint between `left_point` and its successor, evaluating
    /// f only if the midpoint is new. Throws std::logic_error if `left_point`
    /// is absent or is the right endpoint.
    DyadicPoint refine_interval(DyadicPoint left_point, const Function& f);

    /// Inserts every point not yet present, evaluating f once per new point.
    /// Returns the number of new evaluations.
    std::size_t insert(std::vector<DyadicPoint> points, const Function& f);

    /// How many of `points` (deduplicated) are not in the partition yet.
    std::size_t count_new(std::vector<DyadicPoint> points) const;

private:
    Interval m_interval;
    ConeParams m_params;
    int m_level = 0;
    std::size_t m_evaluations = 0;
    std::vector<Node> m_nodes;
};

} // namespace conespline
