#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "autoplan/calibration.hpp"
#include "autoplan/planner.hpp"
#include "autoplan/radiomap.hpp"
#include "autoplan/scene.hpp"

namespace autoplan {

// Scene document (JSON): region {xmin,ymin,xmax,ymax}, carrier_freq_hz,
// rx_height_m, buildings [{footprint, height_m, material_index}], existing_bs
// [{x,y,z,tx_power_dbm,antenna_gain_db}], materials {sigma, epsilon}.
Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

// Measurements CSV with header x,y,rsrp_dbm[,bs_index]. Locations are
// validated against the scene region.
MeasurementSet load_measurements(const std::filesystem::path& path, const Scene& scene);
void save_measurements(const MeasurementSet& measurements,
                       const std::filesystem::path& path);

// CSV: x,y,rsrp_dbm,snr_db,serving_bs per grid point.
void write_radiomap_csv(const RadioMap& map, const std::filesystem::path& path);

// 8-bit binary PGM; RSRP mapped linearly from [-120,-30] dBm to [0,255],
// clamped. Top image row is the region's maximum-y row; cells past the grid's
// point count are written as 0.
void write_radiomap_pgm(const RadioMap& map, const std::filesystem::path& path);

void write_loss_curve_csv(const CalibrationReport& report,
                          const std::filesystem::path& path);
void write_calibration_report_json(const CalibrationReport& report,
                                   const std::filesystem::path& path);

// Timing fields are deliberately left out of the report (they go in the run
// manifest) so seeded runs are byte-reproducible.
void write_plan_report_json(const PlanReport& report, const std::filesystem::path& path);
void write_plan_trace_csv(const PlanReport& report, const std::filesystem::path& path);

// Planned base stations from either a plan report ("new_bs" key) or a plain
// JSON array of BS objects.
std::vector<BaseStation> load_bs_list(const std::filesystem::path& path);

// Human-readable summary with one row per method: coverage %, capacity,
// target.
std::string format_metrics_table(
    const std::vector<std::pair<std::string, Metrics>>& rows);

}  // namespace autoplan
