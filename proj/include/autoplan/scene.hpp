#pragma once

#include <cstdint>
#include <vector>

#include "autoplan/geometry.hpp"

namespace autoplan {

struct Building {
    Polygon footprint;       // meters, counterclockwise after normalization
    double height = 0.0;     // meters
    int material_index = 0;  // column into MaterialParams
};

struct BaseStation {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;  // antenna height, meters
    double tx_power_dbm = 43.0;
    double antenna_gain_db = 0.0;

    Vec2 pos2() const { return {x, y}; }
    Vec3 pos3() const { return {x, y, z}; }
};

// Hardware sanity bounds on transmit power.
inline constexpr double kTxPowerMinDbm = -50.0;
inline constexpr double kTxPowerMaxDbm = 60.0;

// Per-material conductivity sigma (S/m) and relative permittivity epsilon.
// The tunable box is sigma in (0, 2), epsilon in (1, 6); open intervals are
// enforced as closed intervals shrunk by kBoundMargin on each side.
struct MaterialParams {
    std::vector<double> sigma;
    std::vector<double> epsilon;

    static constexpr double kSigmaMin = 0.0;
    static constexpr double kSigmaMax = 2.0;
    static constexpr double kEpsilonMin = 1.0;
    static constexpr double kEpsilonMax = 6.0;
    static constexpr double kBoundMargin = 1e-3;

    static double sigma_lo() { return kSigmaMin + kBoundMargin; }
    static double sigma_hi() { return kSigmaMax - kBoundMargin; }
    static double epsilon_lo() { return kEpsilonMin + kBoundMargin; }
    static double epsilon_hi() { return kEpsilonMax - kBoundMargin; }

    std::size_t count() const { return sigma.size(); }
    bool within_bounds() const;
    void project_to_bounds();
};

struct Scene {
    Rect region;
    std::vector<Building> buildings;
    std::vector<BaseStation> existing_bs;
    MaterialParams materials;
    double rx_height = 1.5;       // meters, receiver evaluation height
    double carrier_freq = 3.5e9;  // Hz

    std::size_t material_count() const { return materials.count(); }

    // Throws ValidationError naming the offending building/BS index.
    void validate() const;
};

// Candidate deployment positions come from the union of building footprints
// (rooftop placement) and any explicit polygons.
struct FeasibleRegion {
    bool rooftops = true;
    std::vector<Polygon> polygons;
    double mount_offset = 2.0;  // meters added above the rooftop (or ground)
};

// Uniform square discretization of the region. Cell centers are generated
// lazily: the paper-scale grid (a = 0.2 m over a campus) has tens of millions
// of points, so the grid stores only its layout.
//
// Exactly count = ceil(area / a^2) points are produced. Columns: nx =
// ceil(width / a); rows: ny = ceil(count / nx); per-axis spacing width/nx and
// height/ny (<= a up to rounding) keeps every center inside the region; the
// final row is truncated to reach the exact count. Index order is row-major.
struct Grid {
    Rect region;
    double resolution = 0.0;  // requested cell edge a, meters
    double z = 0.0;           // evaluation height
    long long nx = 0;
    long long ny = 0;
    long long count = 0;
    double dx = 0.0;
    double dy = 0.0;

    Vec2 point2(long long i) const {
        const long long row = i / nx;
        const long long col = i % nx;
        return {region.xmin + (static_cast<double>(col) + 0.5) * dx,
                region.ymin + (static_cast<double>(row) + 0.5) * dy};
    }
    Vec3 point3(long long i) const {
        const Vec2 p = point2(i);
        return {p.x, p.y, z};
    }
};

Grid make_grid(const Scene& scene, double a);

struct Candidate {
    Vec2 pos;
    double z = 0.0;
};

// Row-major grid of spacing `step` (cell centers) over the region, filtered to
// the feasible region. Points on a footprint edge count as inside. Candidate
// height is the containing building height (0 for bare explicit polygons) plus
// mount_offset. Throws ValidationError if no candidate survives.
std::vector<Candidate> enumerate_candidates(const Scene& scene,
                                            const FeasibleRegion& feasible,
                                            double step);

}  // namespace autoplan
