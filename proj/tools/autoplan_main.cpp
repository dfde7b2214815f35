#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "autoplan/cli.hpp"
#include "autoplan/errors.hpp"

namespace {

// 0 success, 2 config error, 3 validation error, 4 numerical error.
int run(int argc, char** argv) {
    CLI::App app{"AutoPlan: radio-twin calibration and BO base-station placement"};
    app.require_subcommand(1);

    autoplan::RunConfig config;
    std::string config_file;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_file, "JSON config file");
        cmd->add_option("--seed", config.seed, "RNG seed");
        cmd->add_option("--out-dir", config.out_dir, "output directory");
        cmd->add_option("--grid-res", config.grid_res, "radio-map resolution a, meters");
        cmd->add_option("--rth-dbm", config.rth_dbm, "coverage RSRP threshold, dBm");
        cmd->add_option("--alpha", config.alpha, "coverage weight in the target");
        cmd->add_option("--n-new", config.n_new, "number of new BSs to place");
        cmd->add_option("--tx-power-dbm", config.tx_power_dbm, "new-BS TX power, dBm");
        cmd->add_option("--antenna-gain-db", config.antenna_gain_db, "antenna gain, dB");
        cmd->add_option("--es-step-m", config.es_step_m, "candidate grid step, meters");
        cmd->add_option("--rs-groups", config.rs_groups, "random-sampling group count");
        cmd->add_option("--budget-init", config.budget_init, "random evals per BS round");
        cmd->add_option("--budget-bo", config.budget_bo, "EI evals per BS round");
        cmd->add_option("--epochs", config.epochs, "calibration epochs");
        cmd->add_option("--lr", config.lr, "calibration learning rate");
        cmd->add_option("--optimizer", config.optimizer, "adam or sgd");
        cmd->add_option("--batch-size", config.batch_size, "mini-batch size (0 = full)");
        cmd->add_option("--init", config.init, "calibration start: random or scene");
        cmd->add_option("--mount-offset", config.mount_offset, "meters above rooftop");
        cmd->add_option("--t-wall", config.engine.t_wall, "wall thickness, meters");
        cmd->add_option("--noise-floor-dbm", config.engine.noise_floor_dbm,
                        "noise floor, dBm");
    };

    auto* gen = app.add_subcommand("gen-scene", "generate a random synthetic scene");
    add_common(gen);
    gen->add_option("--out", config.out_path, "output scene file")->required();
    gen->add_option("--width", config.gen_width, "region width, meters");
    gen->add_option("--height", config.gen_height, "region height, meters");
    gen->add_option("--n-buildings", config.gen_buildings, "building count");

    auto* synth = app.add_subcommand("synth-measurements",
                                     "synthesize measurements from a scene");
    add_common(synth);
    synth->add_option("--scene", config.scene_path, "scene file")->required();
    synth->add_option("--out", config.out_path, "output CSV")->required();
    synth->add_option("--n-points", config.synth_points, "measurement count");
    synth->add_option("--noise-sigma", config.synth_noise_db, "noise std, dB");

    auto* cal = app.add_subcommand("calibrate", "fit material parameters to measurements");
    add_common(cal);
    cal->add_option("--scene", config.scene_path, "scene file")->required();
    cal->add_option("--measurements", config.measurements_path, "measurement CSV")
        ->required();

    auto* plan_cmd = app.add_subcommand("plan", "place new BSs with Bayesian optimization");
    add_common(plan_cmd);
    plan_cmd->add_option("--scene", config.scene_path, "scene file (calibrated)")
        ->required();
    plan_cmd->add_option("--tx-power-list", config.tx_power_list,
                         "comma-separated TX powers for a coverage sweep");

    auto* base = app.add_subcommand("baselines", "run RS and ES baselines");
    add_common(base);
    base->add_option("--scene", config.scene_path, "scene file (calibrated)")->required();

    auto* map_cmd = app.add_subcommand("map", "export radio map CSV + PGM");
    add_common(map_cmd);
    map_cmd->add_option("--scene", config.scene_path, "scene file")->required();
    map_cmd->add_option("--bs-file", config.bs_file,
                        "extra BSs (plan report or JSON array)");

    // Parse errors map to the documented config-error exit code; --help stays 0.
    const auto parse = [&]() -> int {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;
        }
        return -1;  // parsed, keep going
    };
    if (const int code = parse(); code >= 0) return code;

    if (!config_file.empty()) {
        autoplan::RunConfig from_file;
        autoplan::apply_config_file(from_file, config_file);
        // Flags win over the file: re-parse on top of the file-loaded config.
        std::swap(config, from_file);
        app.clear();
        if (const int code = parse(); code >= 0) return code;
    }

    if (gen->parsed()) autoplan::cmd_gen_scene(config);
    if (synth->parsed()) autoplan::cmd_synth_measurements(config);
    if (cal->parsed()) autoplan::cmd_calibrate(config);
    if (plan_cmd->parsed()) autoplan::cmd_plan(config);
    if (base->parsed()) autoplan::cmd_baselines(config);
    if (map_cmd->parsed()) autoplan::cmd_map(config);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const autoplan::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const autoplan::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const autoplan::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
