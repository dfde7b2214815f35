#pragma once

#include <cmath>
#include <vector>

namespace autoplan {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

inline double distance2d(Vec2 a, Vec2 b) { return norm(b - a); }
inline double distance3d(Vec3 a, Vec3 b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Axis-aligned rectangle in local planar meters.
struct Rect {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

using Polygon = std::vector<Vec2>;

// Positive for counterclockwise vertex order.
double signed_area(const Polygon& poly);

// Reverses the vertex order in place if the polygon is clockwise.
void normalize_ccw(Polygon& poly);

// True if no two non-adjacent edges intersect and no edge is degenerate.
bool is_simple_polygon(const Polygon& poly);

// Boundary-inclusive point-in-polygon test (points on an edge count as inside).
bool point_in_polygon(Vec2 p, const Polygon& poly);

// Parameters t along segment a->b (a + t*(b-a)) at which the segment crosses
// polygon boundary edges. Each edge is half-open in its own parameter so a
// crossing exactly through a shared vertex is counted once. Crossings with
// t < t_min are dropped, which resolves degenerate starts deterministically.
std::vector<double> segment_polygon_crossings(Vec2 a, Vec2 b, const Polygon& poly,
                                              double t_min);

}  // namespace autoplan
