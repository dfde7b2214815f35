#include "autoplan/scene_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "autoplan/errors.hpp"
#include "autoplan/rng.hpp"

namespace autoplan {

namespace {

struct Box {
    double x0, y0, x1, y1;
};

bool boxes_overlap(const Box& a, const Box& b, double gap) {
    return a.x0 - gap < b.x1 && b.x0 - gap < a.x1 && a.y0 - gap < b.y1 &&
           b.y0 - gap < a.y1;
}

}  // namespace

Scene generate_scene(const SceneGenSpec& spec) {
    if (spec.n_buildings < 0) {
        throw std::invalid_argument("generate_scene: n_buildings must be >= 0");
    }
    if (!(spec.width > 0.0) || !(spec.height > 0.0)) {
        throw std::invalid_argument("generate_scene: region must have positive extent");
    }

    Rng rng(spec.seed);
    Scene scene;
    scene.region = {0.0, 0.0, spec.width, spec.height};
    scene.carrier_freq = spec.carrier_freq;
    scene.rx_height = spec.rx_height;

    constexpr int kMaxAttempts = 10000;
    std::vector<Box> placed;
    for (int b = 0; b < spec.n_buildings; ++b) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
            const double w = rng.uniform(spec.min_side, spec.max_side);
            const double h = rng.uniform(spec.min_side, spec.max_side);
            const double x_hi = spec.width - spec.margin - w;
            const double y_hi = spec.height - spec.margin - h;
            if (x_hi <= spec.margin || y_hi <= spec.margin) continue;  // does not fit
            const double x0 = rng.uniform(spec.margin, x_hi);
            const double y0 = rng.uniform(spec.margin, y_hi);
            const Box box{x0, y0, x0 + w, y0 + h};
            ok = std::none_of(placed.begin(), placed.end(), [&](const Box& other) {
                return boxes_overlap(box, other, spec.margin);
            });
            if (ok) {
                placed.push_back(box);
                Building bd;
                bd.footprint = {{box.x0, box.y0},
                                {box.x1, box.y0},
                                {box.x1, box.y1},
                                {box.x0, box.y1}};
                bd.height = rng.uniform(spec.min_height, spec.max_height);
                bd.material_index = b;
                scene.buildings.push_back(std::move(bd));
            }
        }
        if (!ok) {
            throw ValidationError("generate_scene: could not place building " +
                                  std::to_string(b) + " after " +
                                  std::to_string(kMaxAttempts) + " attempts");
        }
    }

    // One material column per building, drawn from a physically plausible
    // sub-range of the tunable box.
    for (int b = 0; b < spec.n_buildings; ++b) {
        scene.materials.sigma.push_back(rng.uniform(0.01, 0.2));
        scene.materials.epsilon.push_back(rng.uniform(2.0, 5.9));
    }

    BaseStation bs;
    bs.x = scene.region.xmin + 0.1 * spec.width;
    bs.y = scene.region.ymin + 0.1 * spec.height;
    bs.z = spec.bs_height;
    bs.tx_power_dbm = spec.bs_tx_power_dbm;
    bs.antenna_gain_db = spec.bs_antenna_gain_db;
    scene.existing_bs.push_back(bs);

    scene.validate();
    return scene;
}

MeasurementSet synth_measurements(const Scene& scene, const EngineConfig& config,
                                  const MaterialParams& truth, int n_points,
                                  double noise_sigma_db, std::uint64_t seed) {
    if (n_points < 1) {
        throw std::invalid_argument("synth_measurements: n_points must be >= 1");
    }
    if (noise_sigma_db < 0.0) {
        throw std::invalid_argument("synth_measurements: noise_sigma must be >= 0");
    }
    if (scene.existing_bs.empty()) {
        throw ValidationError("synth_measurements: scene has no existing base stations");
    }

    Rng rng(seed);
    MeasurementSet out;
    out.reserve(static_cast<std::size_t>(n_points));
    for (int p = 0; p < n_points; ++p) {
        Measurement m;
        m.x = rng.uniform(scene.region.xmin, scene.region.xmax);
        m.y = rng.uniform(scene.region.ymin, scene.region.ymax);
        double best = -std::numeric_limits<double>::infinity();
        int best_bs = 0;
        for (std::size_t b = 0; b < scene.existing_bs.size(); ++b) {
            const double r = rsrp(scene, config, truth, scene.existing_bs[b],
                                  {m.x, m.y, scene.rx_height});
            if (r > best) {
                best = r;
                best_bs = static_cast<int>(b);
            }
        }
        m.rsrp_dbm = best + (noise_sigma_db > 0.0 ? noise_sigma_db * rng.normal() : 0.0);
        m.bs_index = best_bs;
        out.push_back(m);
    }
    return out;
}

}  // namespace autoplan
