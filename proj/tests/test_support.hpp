#pragma once

#include <cmath>
#include <vector>

#include "autoplan/calibration.hpp"
#include "autoplan/radiomap.hpp"
#include "autoplan/scene.hpp"
#include "autoplan/scene_gen.hpp"

namespace test_support {

using namespace autoplan;

// Scene with a single axis-aligned rectangular building and one BS. The BS
// sits west of the building, the default rx probe east of it.
inline Scene box_scene(double bx0, double by0, double bx1, double by1, double height,
                       double sigma = 0.05, double epsilon = 4.0) {
    Scene scene;
    scene.region = {0.0, 0.0, 100.0, 100.0};
    Building b;
    b.footprint = {{bx0, by0}, {bx1, by0}, {bx1, by1}, {bx0, by1}};
    b.height = height;
    b.material_index = 0;
    scene.buildings.push_back(b);
    scene.materials.sigma = {sigma};
    scene.materials.epsilon = {epsilon};
    BaseStation bs;
    bs.x = 5.0;
    bs.y = 50.0;
    bs.z = 10.0;
    scene.existing_bs.push_back(bs);
    return scene;
}

inline Scene open_field_scene(double w = 100.0, double h = 100.0) {
    Scene scene;
    scene.region = {0.0, 0.0, w, h};
    BaseStation bs;
    bs.x = w / 2;
    bs.y = h / 2;
    bs.z = 10.0;
    scene.existing_bs.push_back(bs);
    return scene;
}

// Independent point-in-polygon oracle (Haines-style crossings with sign
// multiplication), deliberately a different formulation from the library's.
inline bool pip_oracle(Vec2 p, const Polygon& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    std::size_t j = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[j];
        if ((a.y < p.y && b.y >= p.y) || (b.y < p.y && a.y >= p.y)) {
            if (a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x) < p.x) inside = !inside;
        }
        j = i;
    }
    return inside;
}

// Naive radio-map oracle: straight double loop over points and base stations.
struct NaiveMapResult {
    std::vector<double> best_rsrp;
    std::vector<double> snr;
    std::vector<int> serving;
    double coverage = 0.0;
    double capacity = 0.0;
};

inline NaiveMapResult naive_radiomap(const Scene& scene, const EngineConfig& config,
                                     const MaterialParams& params,
                                     const std::vector<BaseStation>& bs_set,
                                     const Grid& grid, double r_th) {
    NaiveMapResult out;
    for (long long i = 0; i < grid.count; ++i) {
        double best = -1e300;
        int serving = -1;
        for (std::size_t b = 0; b < bs_set.size(); ++b) {
            const double r = rsrp(scene, config, params, bs_set[b], grid.point3(i));
            if (r > best) {
                best = r;
                serving = static_cast<int>(b);
            }
        }
        out.best_rsrp.push_back(best);
        out.serving.push_back(serving);
        out.snr.push_back(std::pow(10.0, (best - config.noise_floor_dbm) / 10.0));
    }
    long long covered = 0;
    double cap = 0.0;
    for (std::size_t i = 0; i < out.best_rsrp.size(); ++i) {
        if (out.best_rsrp[i] > r_th) ++covered;
        cap += std::log2(1.0 + out.snr[i]);
    }
    out.coverage = static_cast<double>(covered) / static_cast<double>(out.best_rsrp.size());
    out.capacity = cap / static_cast<double>(out.best_rsrp.size());
    return out;
}

// Central finite difference of a scalar function of one material parameter.
template <typename F>
double central_fd(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace test_support
