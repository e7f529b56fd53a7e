#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace leleec {

/// Integer nanometers.
using Coord = std::int64_t;
/// Squared Euclidean distance in nm^2.
using Dist2 = std::int64_t;

/// Magnitude bound on input coordinates so squared differences fit in int64.
inline constexpr Coord kMaxCoord = (Coord{1} << 30);

struct Point {
    Coord x = 0;
    Coord y = 0;
    auto operator<=>(const Point&) const = default;
};

enum class Axis { horizontal, vertical };

inline Axis other(Axis a) { return a == Axis::horizontal ? Axis::vertical : Axis::horizontal; }

/// Closed integer interval [lo, hi].
struct Interval {
    Coord lo = 0;
    Coord hi = 0;
    Coord length() const { return hi - lo; }
    auto operator<=>(const Interval&) const = default;
};

struct Rect {
    Point lo;
    Point hi;

    static constexpr Rect of(Coord x0, Coord y0, Coord x1, Coord y1) { return {{x0, y0}, {x1, y1}}; }

    bool valid() const { return lo.x < hi.x && lo.y < hi.y; }
    Coord width() const { return hi.x - lo.x; }
    Coord height() const { return hi.y - lo.y; }
    Coord area() const { return width() * height(); }

    /// Extent along the axis: horizontal -> x range, vertical -> y range.
    Interval extent(Axis axis) const {
        return axis == Axis::horizontal ? Interval{lo.x, hi.x} : Interval{lo.y, hi.y};
    }
    Rect translated(Coord dx, Coord dy) const { return of(lo.x + dx, lo.y + dy, hi.x + dx, hi.y + dy); }
    Rect expanded(Coord d) const { return of(lo.x - d, lo.y - d, hi.x + d, hi.y + d); }

    auto operator<=>(const Rect&) const = default;
};

std::string to_string(const Rect& r);

/// Bounding box of two rectangles.
Rect bounding_union(const Rect& a, const Rect& b);

/// A rectilinear shape stored as interior-disjoint, edge-connected rectangles.
struct Polygon {
    std::vector<Rect> rects;

    Rect bbox() const;
    Coord area() const;
    Polygon translated(Coord dx, Coord dy) const;
    bool operator==(const Polygon&) const = default;
};

/// Squared distance between closest boundary points; 0 iff touching or overlapping.
Dist2 rect_distance(const Rect& a, const Rect& b);

Dist2 polygon_distance(const Polygon& a, const Polygon& b);
Dist2 rect_polygon_distance(const Rect& r, const Polygon& p);

/// Overlap of the two extents along `axis` when it has positive length.
std::optional<Interval> projection_interval(const Rect& a, const Rect& b, Axis axis);

/// Interiors intersect. Shared boundaries do not count.
bool rects_overlap(const Rect& a, const Rect& b);
bool rect_overlaps_polygon(const Rect& r, const Polygon& p);

/// The rectangles share a boundary segment of positive length.
bool rects_share_edge(const Rect& a, const Rect& b);

/// Empty string when the polygon is well formed, otherwise a reason.
std::string polygon_defect(const Polygon& p);

/// Uniform grid bucket index over rectangles tagged with an owner id.
class GridIndex {
public:
    explicit GridIndex(Coord cell);

    void insert(int owner, const Rect& r);
    /// Owners with at least one rectangle whose cells intersect `query`,
    /// ascending and unique.
    std::vector<int> query(const Rect& query) const;

private:
    static std::uint64_t key(Coord cx, Coord cy);
    Coord cell_of(Coord v) const;

    Coord cell_;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

/// Every rectangle of every shape, for "does this cut hit a feature" tests.
class ObstacleSet {
public:
    ObstacleSet(std::span<const Polygon> shapes, Coord cell);

    bool overlaps_any(const Rect& r) const;
    /// Owners (shape indices) whose interior intersects r, ascending.
    std::vector<int> overlapping(const Rect& r) const;

private:
    std::vector<Polygon> shapes_;
    GridIndex index_;
};

}  // namespace leleec
