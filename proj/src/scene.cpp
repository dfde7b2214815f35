#include "autoplan/scene.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "autoplan/errors.hpp"

namespace autoplan {

bool MaterialParams::within_bounds() const {
    if (epsilon.size() != sigma.size()) return false;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (!(sigma[k] >= sigma_lo() && sigma[k] <= sigma_hi())) return false;
        if (!(epsilon[k] >= epsilon_lo() && epsilon[k] <= epsilon_hi())) return false;
    }
    return true;
}

void MaterialParams::project_to_bounds() {
    for (double& s : sigma) s = std::clamp(s, sigma_lo(), sigma_hi());
    for (double& e : epsilon) e = std::clamp(e, epsilon_lo(), epsilon_hi());
}

void Scene::validate() const {
    if (!(region.xmax > region.xmin) || !(region.ymax > region.ymin)) {
        throw ValidationError("scene: region must have positive extent");
    }
    if (!(rx_height > 0.0)) throw ValidationError("scene: rx_height must be > 0");
    if (!(carrier_freq > 0.0)) throw ValidationError("scene: carrier_freq must be > 0");
    if (materials.sigma.size() != materials.epsilon.size()) {
        throw ValidationError("scene: materials sigma/epsilon length mismatch");
    }
    if (!materials.within_bounds()) {
        throw ValidationError(
            "scene: material parameters outside the bounded box "
            "(sigma in (0,2), epsilon in (1,6) with 1e-3 margin)");
    }

    const int n_materials = static_cast<int>(materials.count());
    for (std::size_t b = 0; b < buildings.size(); ++b) {
        const Building& bd = buildings[b];
        const std::string tag = "scene: building " + std::to_string(b);
        if (bd.footprint.size() < 3) {
            throw ValidationError(tag + ": footprint needs at least 3 vertices");
        }
        if (!is_simple_polygon(bd.footprint)) {
            throw ValidationError(tag + ": footprint is not a simple polygon");
        }
        for (const Vec2& v : bd.footprint) {
            if (!region.contains(v)) {
                throw ValidationError(tag + ": footprint vertex outside region");
            }
        }
        if (!(bd.height > 0.0)) throw ValidationError(tag + ": height must be > 0");
        if (bd.material_index < 0 || bd.material_index >= n_materials) {
            throw ValidationError(tag + ": material_index out of range [0, " +
                                  std::to_string(n_materials) + ")");
        }
    }

    for (std::size_t m = 0; m < existing_bs.size(); ++m) {
        const BaseStation& bs = existing_bs[m];
        const std::string tag = "scene: base station " + std::to_string(m);
        if (!region.contains(bs.pos2())) {
            throw ValidationError(tag + ": position outside region");
        }
        if (!(bs.z > 0.0)) throw ValidationError(tag + ": z must be > 0");
        if (bs.tx_power_dbm < kTxPowerMinDbm || bs.tx_power_dbm > kTxPowerMaxDbm) {
            throw ValidationError(tag + ": tx_power outside hardware bounds");
        }
    }
}

Grid make_grid(const Scene& scene, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("make_grid: resolution must be > 0");

    Grid g;
    g.region = scene.region;
    g.resolution = a;
    g.z = scene.rx_height;

    const double w = scene.region.width();
    const double h = scene.region.height();
    // Tolerance-shifted ceil: exact quotients stay exact under rounding noise.
    g.count = static_cast<long long>(std::ceil(scene.region.area() / (a * a) - 1e-9));
    g.nx = static_cast<long long>(std::ceil(w / a - 1e-9));
    if (g.nx < 1) g.nx = 1;
    if (g.count < 1) g.count = 1;
    g.ny = (g.count + g.nx - 1) / g.nx;
    g.dx = w / static_cast<double>(g.nx);
    g.dy = h / static_cast<double>(g.ny);
    return g;
}

namespace {

// Height of the tallest building containing the point, or -1 if none.
double containing_building_height(const Scene& scene, Vec2 p) {
    double best = -1.0;
    for (const Building& b : scene.buildings) {
        if (point_in_polygon(p, b.footprint)) best = std::max(best, b.height);
    }
    return best;
}

bool in_explicit_polygons(const FeasibleRegion& feasible, Vec2 p) {
    for (const Polygon& poly : feasible.polygons) {
        if (point_in_polygon(p, poly)) return true;
    }
    return false;
}

}  // namespace

std::vector<Candidate> enumerate_candidates(const Scene& scene,
                                            const FeasibleRegion& feasible,
                                            double step) {
    if (!(step > 0.0)) throw std::invalid_argument("enumerate_candidates: step must be > 0");

    const Rect& r = scene.region;
    std::vector<Candidate> out;
    for (long long j = 0;; ++j) {
        const double y = r.ymin + (static_cast<double>(j) + 0.5) * step;
        if (y > r.ymax) break;
        for (long long i = 0;; ++i) {
            const double x = r.xmin + (static_cast<double>(i) + 0.5) * step;
            if (x > r.xmax) break;
            const Vec2 p{x, y};
            const double bh = feasible.rooftops ? containing_building_height(scene, p) : -1.0;
            const bool in_explicit = in_explicit_polygons(feasible, p);
            if (bh < 0.0 && !in_explicit) continue;
            const double base = bh >= 0.0 ? bh : 0.0;
            out.push_back({p, base + feasible.mount_offset});
        }
    }
    if (out.empty()) {
        throw ValidationError("enumerate_candidates: no feasible candidates");
    }
    return out;
}

}  // namespace autoplan
