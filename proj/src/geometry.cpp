#include "leleec/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace leleec {

std::string to_string(const Rect& r) {
    std::ostringstream os;
    os << '[' << r.lo.x << ',' << r.lo.y << ',' << r.hi.x << ',' << r.hi.y << ']';
    return os.str();
}

Rect bounding_union(const Rect& a, const Rect& b) {
    return Rect::of(std::min(a.lo.x, b.lo.x), std::min(a.lo.y, b.lo.y), std::max(a.hi.x, b.hi.x),
                    std::max(a.hi.y, b.hi.y));
}

Rect Polygon::bbox() const {
    Rect box = rects.front();
    for (const auto& r : rects) box = bounding_union(box, r);
    return box;
}

Coord Polygon::area() const {
    return std::accumulate(rects.begin(), rects.end(), Coord{0},
                           [](Coord s, const Rect& r) { return s + r.area(); });
}

Polygon Polygon::translated(Coord dx, Coord dy) const {
    Polygon out;
    out.rects.reserve(rects.size());
    for (const auto& r : rects) out.rects.push_back(r.translated(dx, dy));
    return out;
}

Dist2 rect_distance(const Rect& a, const Rect& b) {
    const Coord dx = std::max<Coord>({0, a.lo.x - b.hi.x, b.lo.x - a.hi.x});
    const Coord dy = std::max<Coord>({0, a.lo.y - b.hi.y, b.lo.y - a.hi.y});
    return dx * dx + dy * dy;
}

Dist2 rect_polygon_distance(const Rect& r, const Polygon& p) {
    Dist2 best = std::numeric_limits<Dist2>::max();
    for (const auto& q : p.rects) best = std::min(best, rect_distance(r, q));
    return best;
}

Dist2 polygon_distance(const Polygon& a, const Polygon& b) {
    Dist2 best = std::numeric_limits<Dist2>::max();
    for (const auto& r : a.rects) {
        for (const auto& q : b.rects) {
            best = std::min(best, rect_distance(r, q));
            if (best == 0) return 0;
        }
    }
    return best;
}

std::optional<Interval> projection_interval(const Rect& a, const Rect& b, Axis axis) {
    const Interval ea = a.extent(axis);
    const Interval eb = b.extent(axis);
    const Interval overlap{std::max(ea.lo, eb.lo), std::min(ea.hi, eb.hi)};
    if (overlap.length() <= 0) return std::nullopt;
    return overlap;
}

bool rects_overlap(const Rect& a, const Rect& b) {
    return a.lo.x < b.hi.x && b.lo.x < a.hi.x && a.lo.y < b.hi.y && b.lo.y < a.hi.y;
}

bool rect_overlaps_polygon(const Rect& r, const Polygon& p) {
    return std::any_of(p.rects.begin(), p.rects.end(), [&](const Rect& q) { return rects_overlap(r, q); });
}

bool rects_share_edge(const Rect& a, const Rect& b) {
    if (a.hi.x == b.lo.x || b.hi.x == a.lo.x) return projection_interval(a, b, Axis::vertical).has_value();
    if (a.hi.y == b.lo.y || b.hi.y == a.lo.y) return projection_interval(a, b, Axis::horizontal).has_value();
    return false;
}

std::string polygon_defect(const Polygon& p) {
    if (p.rects.empty()) return "polygon has no rectangles";
    for (const auto& r : p.rects) {
        if (!r.valid()) return "degenerate rectangle " + to_string(r);
        for (Coord c : {r.lo.x, r.lo.y, r.hi.x, r.hi.y}) {
            if (c <= -kMaxCoord || c >= kMaxCoord) return "coordinate out of range in " + to_string(r);
        }
    }
    const std::size_t n = p.rects.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rects_overlap(p.rects[i], p.rects[j]))
                return "rectangles " + to_string(p.rects[i]) + " and " + to_string(p.rects[j]) + " overlap";
        }
    }
    // Edge connectivity by flood fill over shared edges.
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const auto i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j) {
            if (!seen[j] && rects_share_edge(p.rects[i], p.rects[j])) {
                seen[j] = true;
                ++reached;
                stack.push_back(j);
            }
        }
    }
    if (reached != n) return "rectangles are not edge-connected";
    return {};
}

GridIndex::GridIndex(Coord cell) : cell_(std::max<Coord>(cell, 1)) {}

Coord GridIndex::cell_of(Coord v) const {
    // floor division for negative coordinates
    return v >= 0 ? v / cell_ : -((-v + cell_ - 1) / cell_);
}

std::uint64_t GridIndex::key(Coord cx, Coord cy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
           static_cast<std::uint32_t>(cy);
}

void GridIndex::insert(int owner, const Rect& r) {
    for (Coord cx = cell_of(r.lo.x); cx <= cell_of(r.hi.x); ++cx) {
        for (Coord cy = cell_of(r.lo.y); cy <= cell_of(r.hi.y); ++cy) {
            auto& bucket = buckets_[key(cx, cy)];
            if (bucket.empty() || bucket.back() != owner) bucket.push_back(owner);
        }
    }
}

std::vector<int> GridIndex::query(const Rect& q) const {
    std::vector<int> out;
    for (Coord cx = cell_of(q.lo.x); cx <= cell_of(q.hi.x); ++cx) {
        for (Coord cy = cell_of(q.lo.y); cy <= cell_of(q.hi.y); ++cy) {
            if (auto it = buckets_.find(key(cx, cy)); it != buckets_.end())
                out.insert(out.end(), it->second.begin(), it->second.end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ObstacleSet::ObstacleSet(std::span<const Polygon> shapes, Coord cell)
    : shapes_(shapes.begin(), shapes.end()), index_(cell) {
    for (std::size_t i = 0; i < shapes_.size(); ++i) {
        for (const auto& r : shapes_[i].rects) index_.insert(static_cast<int>(i), r);
    }
}

bool ObstacleSet::overlaps_any(const Rect& r) const {
    for (int owner : index_.query(r)) {
        if (rect_overlaps_polygon(r, shapes_[owner])) return true;
    }
    return false;
}

std::vector<int> ObstacleSet::overlapping(const Rect& r) const {
    std::vector<int> out;
    for (int owner : index_.query(r)) {
        if (rect_overlaps_polygon(r, shapes_[owner])) out.push_back(owner);
    }
    return out;
}

}  // namespace leleec
