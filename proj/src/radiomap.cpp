#include "autoplan/radiomap.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace autoplan {

namespace {
double snr_from_rsrp(double rsrp_dbm, double noise_floor_dbm) {
    return std::pow(10.0, (rsrp_dbm - noise_floor_dbm) / 10.0);
}
}  // namespace

std::vector<double> rsrp_field(const Scene& scene, const EngineConfig& config,
                               const MaterialParams& params, const BaseStation& bs,
                               const Grid& grid) {
    std::vector<double> field(static_cast<std::size_t>(grid.count));
    for (long long i = 0; i < grid.count; ++i) {
        field[static_cast<std::size_t>(i)] =
            rsrp(scene, config, params, bs, grid.point3(i));
    }
    return field;
}

RadioMap solve_radiomap(const Scene& scene, const EngineConfig& config,
                        const MaterialParams& params,
                        std::span<const BaseStation> bs_set, const Grid& grid) {
    if (bs_set.empty()) {
        throw std::invalid_argument("solve_radiomap: bs_set must be non-empty");
    }
    RadioMap map;
    map.grid = grid;
    map.noise_floor_dbm = config.noise_floor_dbm;
    const std::size_t n = static_cast<std::size_t>(grid.count);
    map.best_rsrp.assign(n, -std::numeric_limits<double>::infinity());
    map.snr_linear.assign(n, 0.0);
    map.serving_bs.assign(n, -1);

    for (std::size_t b = 0; b < bs_set.size(); ++b) {
        const BaseStation& bs = bs_set[b];
        for (long long i = 0; i < grid.count; ++i) {
            const double r = rsrp(scene, config, params, bs, grid.point3(i));
            const std::size_t iu = static_cast<std::size_t>(i);
            if (r > map.best_rsrp[iu]) {  // strict: ties keep the lower index
                map.best_rsrp[iu] = r;
                map.serving_bs[iu] = static_cast<int>(b);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        map.snr_linear[i] = snr_from_rsrp(map.best_rsrp[i], map.noise_floor_dbm);
    }
    return map;
}

void merge_field(RadioMap& map, const std::vector<double>& field, int bs_index) {
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field[i] > map.best_rsrp[i]) {
            map.best_rsrp[i] = field[i];
            map.serving_bs[i] = bs_index;
            map.snr_linear[i] = snr_from_rsrp(field[i], map.noise_floor_dbm);
        }
    }
}

double coverage(const RadioMap& map, double r_th) {
    long long covered = 0;
    for (const double r : map.best_rsrp) {
        if (r > r_th) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(map.best_rsrp.size());
}

double capacity(const RadioMap& map) {
    double acc = 0.0;
    for (const double s : map.snr_linear) {
        acc += std::log2(1.0 + s);
    }
    return acc / static_cast<double>(map.snr_linear.size());
}

Metrics target(const RadioMap& map, double alpha, double r_th) {
    if (!(alpha > 0.0)) throw std::invalid_argument("target: alpha must be > 0");
    Metrics m;
    m.alpha = alpha;
    m.r_th = r_th;
    m.coverage = coverage(map, r_th);
    m.capacity = capacity(map);
    m.target = alpha * m.coverage + m.capacity;
    return m;
}

}  // namespace autoplan
