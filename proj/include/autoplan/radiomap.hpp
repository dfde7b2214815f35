#pragma once

#include <span>
#include <vector>

#include "autoplan/propagation.hpp"
#include "autoplan/scene.hpp"

namespace autoplan {

// Per-grid-point best RSRP over a BS set, the matching linear SNR against a
// constant noise floor, and the serving BS index (lowest index on ties).
struct RadioMap {
    Grid grid;
    double noise_floor_dbm = -94.0;
    std::vector<double> best_rsrp;   // dBm, length grid.count
    std::vector<double> snr_linear;  // 10^((rsrp - noise_floor)/10)
    std::vector<int> serving_bs;     // index into the solved BS set
};

struct Metrics {
    double coverage = 0.0;  // C in [0,1]
    double capacity = 0.0;  // S, bit/s/Hz
    double target = 0.0;    // T = alpha*C + S
    double alpha = 0.0;
    double r_th = 0.0;      // dBm
};

RadioMap solve_radiomap(const Scene& scene, const EngineConfig& config,
                        const MaterialParams& params,
                        std::span<const BaseStation> bs_set, const Grid& grid);

// Per-point RSRP of a single BS over the grid.
std::vector<double> rsrp_field(const Scene& scene, const EngineConfig& config,
                               const MaterialParams& params, const BaseStation& bs,
                               const Grid& grid);

// Folds one more BS (index bs_index) into an existing map. Produces exactly
// the map solve_radiomap would return for the extended set.
void merge_field(RadioMap& map, const std::vector<double>& field, int bs_index);

// Fraction of points with RSRP strictly above the threshold.
double coverage(const RadioMap& map, double r_th);

// Mean Shannon spectral efficiency log2(1 + snr) over the grid.
double capacity(const RadioMap& map);

Metrics target(const RadioMap& map, double alpha, double r_th);

}  // namespace autoplan
