#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "autoplan/propagation.hpp"

namespace autoplan {

// Effective settings for a CLI run: defaults, overridden by an optional JSON
// config file, overridden by command-line flags.
struct RunConfig {
    std::string scene_path;
    std::string measurements_path;
    std::string out_dir = "out";
    std::string bs_file;  // extra BSs for `map` (plan report or JSON array)

    double grid_res = 2.0;       // a, meters
    double rth_dbm = -90.0;
    double alpha = 10.0;
    int n_new = 5;
    double tx_power_dbm = 43.0;
    double antenna_gain_db = 0.0;
    int budget_init = 10;
    int budget_bo = 30;
    double lr = 0.01;
    int epochs = 300;
    std::string optimizer = "adam";  // adam | sgd
    int batch_size = 0;              // 0 = full batch
    std::string init = "random";     // calibration start: random | scene
    double es_step_m = 5.0;
    int rs_groups = 100;
    double mount_offset = 2.0;
    std::uint64_t seed = 1;
    std::string tx_power_list;  // optional sweep, comma-separated dBm values

    // gen-scene / synth-measurements
    double gen_width = 300.0;
    double gen_height = 300.0;
    int gen_buildings = 10;
    int synth_points = 500;
    double synth_noise_db = 0.0;
    std::string out_path;  // single-file outputs

    EngineConfig engine;
};

// Merges `path` (JSON object keyed by flag names) into `config`. Unknown keys
// are a ConfigError.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

void cmd_gen_scene(const RunConfig& config);
void cmd_synth_measurements(const RunConfig& config);
void cmd_calibrate(const RunConfig& config);
void cmd_plan(const RunConfig& config);
void cmd_baselines(const RunConfig& config);
void cmd_map(const RunConfig& config);

}  // namespace autoplan
