#include "autoplan/geometry.hpp"

#include <algorithm>

namespace autoplan {

double signed_area(const Polygon& poly) {
    double acc = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        acc += p.x * q.y - q.x * p.y;
    }
    return 0.5 * acc;
}

void normalize_ccw(Polygon& poly) {
    if (signed_area(poly) < 0.0) {
        std::reverse(poly.begin(), poly.end());
    }
}

namespace {

// Proper or improper intersection of closed segments [a,b] and [p,q].
bool segments_intersect(Vec2 a, Vec2 b, Vec2 p, Vec2 q) {
    const auto orient = [](Vec2 u, Vec2 v, Vec2 w) {
        const double c = cross(v - u, w - u);
        return (c > 0.0) - (c < 0.0);
    };
    const int o1 = orient(a, b, p);
    const int o2 = orient(a, b, q);
    const int o3 = orient(p, q, a);
    const int o4 = orient(p, q, b);
    if (o1 != o2 && o3 != o4) return true;

    const auto on_segment = [](Vec2 u, Vec2 v, Vec2 w) {
        return std::min(u.x, v.x) <= w.x && w.x <= std::max(u.x, v.x) &&
               std::min(u.y, v.y) <= w.y && w.y <= std::max(u.y, v.y);
    };
    if (o1 == 0 && on_segment(a, b, p)) return true;
    if (o2 == 0 && on_segment(a, b, q)) return true;
    if (o3 == 0 && on_segment(p, q, a)) return true;
    if (o4 == 0 && on_segment(p, q, b)) return true;
    return false;
}

bool point_on_segment(Vec2 pt, Vec2 p, Vec2 q, double tol) {
    const Vec2 e = q - p;
    const double len = norm(e);
    if (len == 0.0) return distance2d(pt, p) <= tol;
    const double perp = std::abs(cross(e, pt - p)) / len;
    if (perp > tol) return false;
    const double t = dot(pt - p, e) / (len * len);
    return t >= -tol / len && t <= 1.0 + tol / len;
}

}  // namespace

bool is_simple_polygon(const Polygon& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        if (a.x == b.x && a.y == b.y) return false;  // degenerate edge
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip adjacent edges (they share a vertex by construction).
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) return false;
        }
    }
    return true;
}

bool point_in_polygon(Vec2 p, const Polygon& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;

    constexpr double kEdgeTol = 1e-9;  // meters
    for (std::size_t i = 0; i < n; ++i) {
        if (point_on_segment(p, poly[i], poly[(i + 1) % n], kEdgeTol)) return true;
    }

    // Half-open crossing parity; vertices on the test ray are handled by the
    // strict/non-strict y comparison pair.
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_int) inside = !inside;
        }
    }
    return inside;
}

std::vector<double> segment_polygon_crossings(Vec2 a, Vec2 b, const Polygon& poly,
                                              double t_min) {
    std::vector<double> hits;
    const Vec2 d = b - a;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = poly[i];
        const Vec2 e = poly[(i + 1) % n] - p;
        const double denom = cross(d, e);
        if (denom == 0.0) continue;  // parallel or collinear: no transversal crossing
        const double t = cross(p - a, e) / denom;
        const double s = cross(p - a, d) / denom;
        if (s >= 0.0 && s < 1.0 && t >= t_min && t <= 1.0) {
            hits.push_back(t);
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

}  // namespace autoplan
