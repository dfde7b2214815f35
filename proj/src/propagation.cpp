#include "autoplan/propagation.hpp"

#include <cmath>
#include <numbers>

namespace autoplan {

namespace {
constexpr double kLn10 = 2.302585092994046;
constexpr double kNpToDb = 8.686;  // dB per neper
}  // namespace

double free_space_path_loss(double d, double f, const EngineConfig& config) {
    const double dc = std::max(d, config.d_min);
    return 20.0 * std::log10(dc) + 20.0 * std::log10(f) +
           20.0 * std::log10(4.0 * std::numbers::pi / config.c);
}

double wall_loss(double sigma, double epsilon, double t_wall, double f,
                 const EngineConfig& config) {
    const double omega = 2.0 * std::numbers::pi * f;
    const double u = sigma / (omega * config.eps0 * epsilon);  // loss tangent
    const double v = std::sqrt(1.0 + u * u);
    const double g = std::sqrt(0.5 * (v - 1.0));
    const double alpha_np = (omega / config.c) * std::sqrt(epsilon) * g;
    const double l_abs = kNpToDb * alpha_np * t_wall;

    const double n = std::sqrt(epsilon);
    // 1 - Gamma^2 = 4n/(1+n)^2 for Gamma = (1-n)/(1+n)
    const double l_refl = -20.0 * std::log10(4.0 * n / ((1.0 + n) * (1.0 + n)));
    return l_abs + l_refl;
}

WallLossGrad wall_loss_grad(double sigma, double epsilon, double t_wall, double f,
                            const EngineConfig& config) {
    // Value arithmetic mirrors wall_loss exactly so both paths agree bitwise.
    const double omega = 2.0 * std::numbers::pi * f;
    const double u = sigma / (omega * config.eps0 * epsilon);
    const double v = std::sqrt(1.0 + u * u);
    const double g = std::sqrt(0.5 * (v - 1.0));
    const double sqrt_eps = std::sqrt(epsilon);
    const double alpha_np = (omega / config.c) * sqrt_eps * g;
    const double l_abs = kNpToDb * alpha_np * t_wall;

    const double n = sqrt_eps;
    const double l_refl = -20.0 * std::log10(4.0 * n / ((1.0 + n) * (1.0 + n)));

    // dg/du = u / (4 v g); series limit as u -> 0 is 1/2.
    const double dg_du = g > 1e-150 ? u / (4.0 * v * g) : 0.5;
    const double du_dsigma = 1.0 / (omega * config.eps0 * epsilon);
    const double du_deps = -u / epsilon;
    const double abs_scale = kNpToDb * t_wall * omega / config.c;
    const double dlrefl_dn = (20.0 / kLn10) * (2.0 / (1.0 + n) - 1.0 / n);
    const double dn_deps = 0.5 / sqrt_eps;

    WallLossGrad out;
    out.loss = l_abs + l_refl;
    out.d_sigma = abs_scale * sqrt_eps * dg_du * du_dsigma;
    out.d_epsilon = abs_scale * (0.5 * g / sqrt_eps + sqrt_eps * dg_du * du_deps) +
                    dlrefl_dn * dn_deps;
    return out;
}

PathCrossings trace_crossings(const Scene& scene, const BaseStation& tx, Vec3 rx,
                              const EngineConfig& config) {
    PathCrossings out;
    const Vec2 a = tx.pos2();
    const Vec2 b{rx.x, rx.y};
    for (std::size_t bi = 0; bi < scene.buildings.size(); ++bi) {
        const Building& bd = scene.buildings[bi];
        const std::vector<double> hits =
            segment_polygon_crossings(a, b, bd.footprint, config.eps_geom);
        int count = 0;
        for (const double t : hits) {
            const double ray_z = tx.z + t * (rx.z - tx.z);
            if (ray_z < bd.height) ++count;
        }
        if (count > 0) out.entries.push_back({static_cast<int>(bi), count});
    }
    return out;
}

double rsrp_cached(const Scene& scene, const EngineConfig& config,
                   const MaterialParams& params, const BaseStation& tx, double dist3,
                   const PathCrossings& crossings) {
    double value = tx.tx_power_dbm + tx.antenna_gain_db -
                   free_space_path_loss(dist3, scene.carrier_freq, config);
    for (const PathCrossings::Entry& e : crossings.entries) {
        const int k = scene.buildings[static_cast<std::size_t>(e.building)].material_index;
        const std::size_t ku = static_cast<std::size_t>(k);
        value -= static_cast<double>(e.count) *
                 wall_loss(params.sigma[ku], params.epsilon[ku], config.t_wall,
                           scene.carrier_freq, config);
    }
    return value;
}

double rsrp(const Scene& scene, const EngineConfig& config, const MaterialParams& params,
            const BaseStation& tx, Vec3 rx) {
    const PathCrossings crossings = trace_crossings(scene, tx, rx, config);
    return rsrp_cached(scene, config, params, tx, distance3d(tx.pos3(), rx), crossings);
}

RsrpGradient rsrp_gradient_cached(const Scene& scene, const EngineConfig& config,
                                  const MaterialParams& params, const BaseStation& tx,
                                  double dist3, const PathCrossings& crossings) {
    RsrpGradient out;
    const std::size_t k_count = params.count();
    out.d_sigma.assign(k_count, 0.0);
    out.d_epsilon.assign(k_count, 0.0);
    out.value = tx.tx_power_dbm + tx.antenna_gain_db -
                free_space_path_loss(dist3, scene.carrier_freq, config);
    for (const PathCrossings::Entry& e : crossings.entries) {
        const std::size_t k = static_cast<std::size_t>(
            scene.buildings[static_cast<std::size_t>(e.building)].material_index);
        const WallLossGrad wg = wall_loss_grad(params.sigma[k], params.epsilon[k],
                                               config.t_wall, scene.carrier_freq, config);
        const double c = static_cast<double>(e.count);
        out.value -= c * wg.loss;
        out.d_sigma[k] -= c * wg.d_sigma;
        out.d_epsilon[k] -= c * wg.d_epsilon;
    }
    return out;
}

RsrpGradient rsrp_gradient(const Scene& scene, const EngineConfig& config,
                           const MaterialParams& params, const BaseStation& tx, Vec3 rx) {
    const PathCrossings crossings = trace_crossings(scene, tx, rx, config);
    return rsrp_gradient_cached(scene, config, params, tx, distance3d(tx.pos3(), rx),
                                crossings);
}

}  // namespace autoplan
