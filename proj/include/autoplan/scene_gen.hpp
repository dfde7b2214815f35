#pragma once

#include <cstdint>

#include "autoplan/calibration.hpp"
#include "autoplan/scene.hpp"

namespace autoplan {

// Random test-fixture scene: non-overlapping axis-aligned rectangular
// buildings, each with its own material column, plus one existing BS near the
// southwest corner.
struct SceneGenSpec {
    double width = 300.0;
    double height = 300.0;
    int n_buildings = 10;
    std::uint64_t seed = 1;
    double min_side = 15.0;
    double max_side = 45.0;
    double min_height = 5.0;
    double max_height = 30.0;
    double margin = 5.0;  // clearance to the region edge and between buildings
    double carrier_freq = 3.5e9;
    double rx_height = 1.5;
    double bs_tx_power_dbm = 43.0;
    double bs_antenna_gain_db = 0.0;
    double bs_height = 20.0;
};

Scene generate_scene(const SceneGenSpec& spec);

// Uniform in-region sample points with RSRP simulated under `truth` from the
// best existing BS, plus optional Gaussian noise in dB. Points carry the
// serving bs_index.
MeasurementSet synth_measurements(const Scene& scene, const EngineConfig& config,
                                  const MaterialParams& truth, int n_points,
                                  double noise_sigma_db, std::uint64_t seed);

}  // namespace autoplan
