#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "autoplan/propagation.hpp"
#include "autoplan/scene.hpp"

namespace autoplan {

struct Measurement {
    double x = 0.0;
    double y = 0.0;
    double rsrp_dbm = 0.0;
    int bs_index = -1;  // index into existing_bs; -1 = unknown, resolve by best RSRP
};

using MeasurementSet = std::vector<Measurement>;

enum class Optimizer { Sgd, Adam };

struct CalibrationOptions {
    double eta = 0.01;
    int epochs = 300;
    Optimizer optimizer = Optimizer::Adam;
    int batch_size = 0;  // 0 or >= P: full batch
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t shuffle_seed = 0;  // mini-batch shuffling only
    // Called after each epoch's update and projection.
    std::function<void(int epoch, double loss, const MaterialParams&)> on_epoch;
};

struct CalibrationReport {
    std::vector<double> loss_curve;  // loss after each epoch, length = epochs
    double initial_loss = 0.0;
    double final_loss = 0.0;
    MaterialParams theta_star;
    // Total path crossings per material over all measurement paths; zero means
    // the material is unobservable from this measurement set.
    std::vector<long long> crossings_per_material;
};

// Mean squared sim-to-real RSRP error in dB^2. Each measurement is simulated
// from its recorded BS, or from the best of the existing set when absent.
double loss(const Scene& scene, const EngineConfig& config, const MaterialParams& params,
            const MeasurementSet& measurements);

struct LossGradient {
    double value = 0.0;
    std::vector<double> d_sigma;
    std::vector<double> d_epsilon;
};

LossGradient loss_gradient(const Scene& scene, const EngineConfig& config,
                           const MaterialParams& params,
                           const MeasurementSet& measurements);

// Projected gradient descent on the calibration loss. BS association for
// unlabeled measurements is resolved once at params0 and frozen; geometry is
// cached across epochs. Throws NumericalError naming the epoch if the loss or
// gradient turns non-finite.
CalibrationReport calibrate(const Scene& scene, const EngineConfig& config,
                            const MaterialParams& params0,
                            const MeasurementSet& measurements,
                            const CalibrationOptions& options);

}  // namespace autoplan
