#pragma once

#include <vector>

#include "autoplan/scene.hpp"

namespace autoplan {

struct EngineConfig {
    double t_wall = 0.3;            // wall slab thickness, meters
    double d_min = 1.0;             // near-field distance clamp, meters
    double noise_floor_dbm = -94.0;
    double eps_geom = 1e-9;         // segment-parameter perturbation for vertex ties
    double c = 299792458.0;         // m/s
    double eps0 = 8.8541878128e-12; // F/m
};

// Effective 2.5D wall crossings of a tx->rx path, independent of the material
// parameters (cacheable across calibration epochs).
struct PathCrossings {
    struct Entry {
        int building = 0;
        int count = 0;
    };
    std::vector<Entry> entries;

    bool empty() const { return entries.empty(); }
};

// Friis free-space loss in dB; d is clamped below at config.d_min.
double free_space_path_loss(double d, double f, const EngineConfig& config);

// Plane-wave slab penetration loss in dB: absorption from the material loss
// tangent plus two-interface reflection with lossless index n = sqrt(epsilon).
double wall_loss(double sigma, double epsilon, double t_wall, double f,
                 const EngineConfig& config);

struct WallLossGrad {
    double loss = 0.0;
    double d_sigma = 0.0;
    double d_epsilon = 0.0;
};

WallLossGrad wall_loss_grad(double sigma, double epsilon, double t_wall, double f,
                            const EngineConfig& config);

// 2D footprint-edge crossings of segment tx->rx, kept only where the linearly
// interpolated ray height at the crossing lies below the building height.
PathCrossings trace_crossings(const Scene& scene, const BaseStation& tx, Vec3 rx,
                              const EngineConfig& config);

// Received power at rx from tx:
//   tx_power + antenna_gain - FSPL(3D distance) - sum of per-crossing wall losses.
double rsrp(const Scene& scene, const EngineConfig& config, const MaterialParams& params,
            const BaseStation& tx, Vec3 rx);

// Same, with geometry (crossings, 3D distance) precomputed.
double rsrp_cached(const Scene& scene, const EngineConfig& config,
                   const MaterialParams& params, const BaseStation& tx, double dist3,
                   const PathCrossings& crossings);

struct RsrpGradient {
    double value = 0.0;
    std::vector<double> d_sigma;    // length K
    std::vector<double> d_epsilon;  // length K
};

// Analytic chain-rule gradient of rsrp over all material parameters; entries
// for materials not crossed on this path are zero.
RsrpGradient rsrp_gradient(const Scene& scene, const EngineConfig& config,
                           const MaterialParams& params, const BaseStation& tx, Vec3 rx);

RsrpGradient rsrp_gradient_cached(const Scene& scene, const EngineConfig& config,
                                  const MaterialParams& params, const BaseStation& tx,
                                  double dist3, const PathCrossings& crossings);

}  // namespace autoplan
