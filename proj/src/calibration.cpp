#include "autoplan/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "autoplan/errors.hpp"
#include "autoplan/rng.hpp"

namespace autoplan {

namespace {

// Geometry of one measurement path, fixed for the whole run.
struct PathCache {
    int bs = 0;
    double dist3 = 0.0;
    PathCrossings crossings;
};

int resolve_serving_bs(const Scene& scene, const EngineConfig& config,
                       const MaterialParams& params, const Measurement& m) {
    if (m.bs_index >= 0) {
        if (static_cast<std::size_t>(m.bs_index) >= scene.existing_bs.size()) {
            throw ValidationError("measurement bs_index out of range");
        }
        return m.bs_index;
    }
    int best = 0;
    double best_rsrp = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < scene.existing_bs.size(); ++b) {
        const double r = rsrp(scene, config, params, scene.existing_bs[b],
                              {m.x, m.y, scene.rx_height});
        if (r > best_rsrp) {
            best_rsrp = r;
            best = static_cast<int>(b);
        }
    }
    return best;
}

std::vector<PathCache> build_path_cache(const Scene& scene, const EngineConfig& config,
                                        const MaterialParams& params,
                                        const MeasurementSet& measurements) {
    if (measurements.empty()) {
        throw std::invalid_argument("calibration: measurement set must be non-empty");
    }
    if (scene.existing_bs.empty()) {
        throw ValidationError("calibration: scene has no existing base stations");
    }
    std::vector<PathCache> cache;
    cache.reserve(measurements.size());
    for (const Measurement& m : measurements) {
        PathCache pc;
        pc.bs = resolve_serving_bs(scene, config, params, m);
        const BaseStation& tx = scene.existing_bs[static_cast<std::size_t>(pc.bs)];
        const Vec3 rx{m.x, m.y, scene.rx_height};
        pc.dist3 = distance3d(tx.pos3(), rx);
        pc.crossings = trace_crossings(scene, tx, rx, config);
        cache.push_back(std::move(pc));
    }
    return cache;
}

double loss_from_cache(const Scene& scene, const EngineConfig& config,
                       const MaterialParams& params, const MeasurementSet& measurements,
                       const std::vector<PathCache>& cache) {
    double acc = 0.0;
    for (std::size_t p = 0; p < measurements.size(); ++p) {
        const BaseStation& tx = scene.existing_bs[static_cast<std::size_t>(cache[p].bs)];
        const double sim =
            rsrp_cached(scene, config, params, tx, cache[p].dist3, cache[p].crossings);
        const double resid = sim - measurements[p].rsrp_dbm;
        acc += resid * resid;
    }
    return acc / static_cast<double>(measurements.size());
}

LossGradient gradient_from_cache(const Scene& scene, const EngineConfig& config,
                                 const MaterialParams& params,
                                 const MeasurementSet& measurements,
                                 const std::vector<PathCache>& cache,
                                 const std::vector<std::size_t>& batch) {
    LossGradient out;
    const std::size_t k_count = params.count();
    out.d_sigma.assign(k_count, 0.0);
    out.d_epsilon.assign(k_count, 0.0);
    double acc = 0.0;
    for (const std::size_t p : batch) {
        const BaseStation& tx = scene.existing_bs[static_cast<std::size_t>(cache[p].bs)];
        const RsrpGradient g = rsrp_gradient_cached(scene, config, params, tx,
                                                    cache[p].dist3, cache[p].crossings);
        const double resid = g.value - measurements[p].rsrp_dbm;
        acc += resid * resid;
        for (std::size_t k = 0; k < k_count; ++k) {
            out.d_sigma[k] += 2.0 * resid * g.d_sigma[k];
            out.d_epsilon[k] += 2.0 * resid * g.d_epsilon[k];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(batch.size());
    out.value = acc * inv_n;
    for (std::size_t k = 0; k < k_count; ++k) {
        out.d_sigma[k] *= inv_n;
        out.d_epsilon[k] *= inv_n;
    }
    return out;
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

double loss(const Scene& scene, const EngineConfig& config, const MaterialParams& params,
            const MeasurementSet& measurements) {
    const std::vector<PathCache> cache =
        build_path_cache(scene, config, params, measurements);
    return loss_from_cache(scene, config, params, measurements, cache);
}

LossGradient loss_gradient(const Scene& scene, const EngineConfig& config,
                           const MaterialParams& params,
                           const MeasurementSet& measurements) {
    const std::vector<PathCache> cache =
        build_path_cache(scene, config, params, measurements);
    std::vector<std::size_t> all(measurements.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return gradient_from_cache(scene, config, params, measurements, cache, all);
}

CalibrationReport calibrate(const Scene& scene, const EngineConfig& config,
                            const MaterialParams& params0,
                            const MeasurementSet& measurements,
                            const CalibrationOptions& options) {
    if (!(options.eta > 0.0)) throw std::invalid_argument("calibrate: eta must be > 0");
    if (options.epochs < 1) throw std::invalid_argument("calibrate: epochs must be >= 1");

    const std::vector<PathCache> cache =
        build_path_cache(scene, config, params0, measurements);
    const std::size_t k_count = params0.count();
    const std::size_t p_count = measurements.size();

    CalibrationReport report;
    report.crossings_per_material.assign(k_count, 0);
    for (const PathCache& pc : cache) {
        for (const PathCrossings::Entry& e : pc.crossings.entries) {
            const int k = scene.buildings[static_cast<std::size_t>(e.building)].material_index;
            report.crossings_per_material[static_cast<std::size_t>(k)] += e.count;
        }
    }

    MaterialParams params = params0;
    params.project_to_bounds();
    report.initial_loss = loss_from_cache(scene, config, params, measurements, cache);

    const bool full_batch =
        options.batch_size <= 0 || static_cast<std::size_t>(options.batch_size) >= p_count;
    std::vector<std::size_t> order(p_count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(options.shuffle_seed);

    // Adam state over the flattened (sigma, epsilon) vector.
    std::vector<double> m(2 * k_count, 0.0);
    std::vector<double> v(2 * k_count, 0.0);
    long long adam_t = 0;

    const auto apply_update = [&](const LossGradient& g) {
        std::vector<double> flat(2 * k_count);
        for (std::size_t k = 0; k < k_count; ++k) {
            flat[k] = g.d_sigma[k];
            flat[k_count + k] = g.d_epsilon[k];
        }
        std::vector<double> step(2 * k_count, 0.0);
        if (options.optimizer == Optimizer::Sgd) {
            for (std::size_t i = 0; i < flat.size(); ++i) step[i] = options.eta * flat[i];
        } else {
            ++adam_t;
            const double bc1 = 1.0 - std::pow(options.adam_beta1, adam_t);
            const double bc2 = 1.0 - std::pow(options.adam_beta2, adam_t);
            for (std::size_t i = 0; i < flat.size(); ++i) {
                m[i] = options.adam_beta1 * m[i] + (1.0 - options.adam_beta1) * flat[i];
                v[i] = options.adam_beta2 * v[i] +
                       (1.0 - options.adam_beta2) * flat[i] * flat[i];
                const double m_hat = m[i] / bc1;
                const double v_hat = v[i] / bc2;
                step[i] = options.eta * m_hat / (std::sqrt(v_hat) + options.adam_eps);
            }
        }
        for (std::size_t k = 0; k < k_count; ++k) {
            params.sigma[k] -= step[k];
            params.epsilon[k] -= step[k_count + k];
        }
        params.project_to_bounds();
    };

    report.loss_curve.reserve(static_cast<std::size_t>(options.epochs));
    for (int epoch = 1; epoch <= options.epochs; ++epoch) {
        if (full_batch) {
            const LossGradient g =
                gradient_from_cache(scene, config, params, measurements, cache, order);
            if (!std::isfinite(g.value) || !all_finite(g.d_sigma) ||
                !all_finite(g.d_epsilon)) {
                throw NumericalError("calibrate: non-finite loss or gradient at epoch " +
                                     std::to_string(epoch));
            }
            apply_update(g);
        } else {
            // Fisher-Yates reshuffle each epoch, then fixed-size batches.
            for (std::size_t i = p_count - 1; i > 0; --i) {
                const std::size_t j =
                    static_cast<std::size_t>(shuffle_rng.integer(i + 1));
                std::swap(order[i], order[j]);
            }
            const std::size_t bsz = static_cast<std::size_t>(options.batch_size);
            for (std::size_t start = 0; start < p_count; start += bsz) {
                const std::size_t stop = std::min(start + bsz, p_count);
                const std::vector<std::size_t> batch(order.begin() + start,
                                                     order.begin() + stop);
                const LossGradient g = gradient_from_cache(scene, config, params,
                                                           measurements, cache, batch);
                if (!std::isfinite(g.value) || !all_finite(g.d_sigma) ||
                    !all_finite(g.d_epsilon)) {
                    throw NumericalError(
                        "calibrate: non-finite loss or gradient at epoch " +
                        std::to_string(epoch));
                }
                apply_update(g);
            }
        }

        const double epoch_loss =
            loss_from_cache(scene, config, params, measurements, cache);
        if (!std::isfinite(epoch_loss)) {
            throw NumericalError("calibrate: non-finite loss at epoch " +
                                 std::to_string(epoch));
        }
        report.loss_curve.push_back(epoch_loss);
        if (options.on_epoch) options.on_epoch(epoch, epoch_loss, params);
    }

    report.final_loss = report.loss_curve.back();
    report.theta_star = params;
    return report;
}

}  // namespace autoplan
