#include "autoplan/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "autoplan/errors.hpp"
#include "autoplan/io.hpp"
#include "autoplan/rng.hpp"
#include "autoplan/scene_gen.hpp"

namespace autoplan {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

json config_echo(const RunConfig& c) {
    return {{"scene", c.scene_path},
            {"measurements", c.measurements_path},
            {"out_dir", c.out_dir},
            {"bs_file", c.bs_file},
            {"grid_res", c.grid_res},
            {"rth_dbm", c.rth_dbm},
            {"alpha", c.alpha},
            {"n_new", c.n_new},
            {"tx_power_dbm", c.tx_power_dbm},
            {"antenna_gain_db", c.antenna_gain_db},
            {"budget_init", c.budget_init},
            {"budget_bo", c.budget_bo},
            {"lr", c.lr},
            {"epochs", c.epochs},
            {"optimizer", c.optimizer},
            {"batch_size", c.batch_size},
            {"init", c.init},
            {"es_step_m", c.es_step_m},
            {"rs_groups", c.rs_groups},
            {"mount_offset", c.mount_offset},
            {"seed", c.seed},
            {"tx_power_list", c.tx_power_list},
            {"gen_width", c.gen_width},
            {"gen_height", c.gen_height},
            {"gen_buildings", c.gen_buildings},
            {"synth_points", c.synth_points},
            {"synth_noise_db", c.synth_noise_db},
            {"out_path", c.out_path},
            {"engine",
             {{"t_wall", c.engine.t_wall},
              {"d_min", c.engine.d_min},
              {"noise_floor_dbm", c.engine.noise_floor_dbm}}}};
}

void write_manifest(const RunConfig& config, const std::string& command,
                    const std::filesystem::path& path, double wall_seconds,
                    const json& extra = json::object()) {
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["seed"] = config.seed;
    j["config"] = config_echo(config);
    j["timings"] = {{"wall_seconds", wall_seconds}};
    for (const auto& [k, v] : extra.items()) j[k] = v;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write manifest " + path.string());
    out << j.dump(2) << "\n";
}

std::filesystem::path ensure_out_dir(const RunConfig& config) {
    std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string());
    return dir;
}

Scene load_scene_checked(const RunConfig& config) {
    if (config.scene_path.empty()) throw ConfigError("missing --scene");
    return load_scene(config.scene_path);
}

Optimizer parse_optimizer(const std::string& name) {
    if (name == "adam") return Optimizer::Adam;
    if (name == "sgd") return Optimizer::Sgd;
    throw ConfigError("unknown optimizer '" + name + "' (expected adam or sgd)");
}

MaterialParams random_init_params(std::size_t k_count, std::uint64_t seed) {
    Rng rng(seed);
    MaterialParams p;
    for (std::size_t k = 0; k < k_count; ++k) {
        p.sigma.push_back(rng.uniform(MaterialParams::sigma_lo(), MaterialParams::sigma_hi()));
        p.epsilon.push_back(
            rng.uniform(MaterialParams::epsilon_lo(), MaterialParams::epsilon_hi()));
    }
    return p;
}

std::vector<double> parse_power_list(const std::string& list) {
    std::vector<double> out;
    std::istringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad --tx-power-list entry '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty --tx-power-list");
    return out;
}

}  // namespace

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }

    const auto num = [&](const char* key, auto& field) {
        if (j.contains(key)) {
            field = j.at(key).get<std::decay_t<decltype(field)>>();
            j.erase(key);
        }
    };
    num("grid_res", config.grid_res);
    num("rth_dbm", config.rth_dbm);
    num("alpha", config.alpha);
    num("n_new", config.n_new);
    num("tx_power_dbm", config.tx_power_dbm);
    num("antenna_gain_db", config.antenna_gain_db);
    num("budget_init", config.budget_init);
    num("budget_bo", config.budget_bo);
    num("lr", config.lr);
    num("epochs", config.epochs);
    num("optimizer", config.optimizer);
    num("batch_size", config.batch_size);
    num("init", config.init);
    num("es_step_m", config.es_step_m);
    num("rs_groups", config.rs_groups);
    num("mount_offset", config.mount_offset);
    num("seed", config.seed);
    num("scene", config.scene_path);
    num("measurements", config.measurements_path);
    num("out_dir", config.out_dir);
    num("t_wall", config.engine.t_wall);
    num("d_min", config.engine.d_min);
    num("noise_floor_dbm", config.engine.noise_floor_dbm);
    if (!j.empty()) {
        throw ConfigError("unknown config key '" + j.begin().key() + "'");
    }
}

void cmd_gen_scene(const RunConfig& config) {
    if (config.out_path.empty()) throw ConfigError("missing --out");
    Stopwatch sw;
    SceneGenSpec spec;
    spec.width = config.gen_width;
    spec.height = config.gen_height;
    spec.n_buildings = config.gen_buildings;
    spec.seed = config.seed;
    spec.bs_tx_power_dbm = config.tx_power_dbm;
    spec.bs_antenna_gain_db = config.antenna_gain_db;
    const Scene scene = generate_scene(spec);
    save_scene(scene, config.out_path);
    write_manifest(config, "gen-scene",
                   std::filesystem::path(config.out_path).string() + ".manifest.json",
                   sw.seconds(),
                   {{"buildings", scene.buildings.size()},
                    {"materials", scene.material_count()}});
    std::cout << "wrote " << config.out_path << " (" << scene.buildings.size()
              << " buildings)\n";
}

void cmd_synth_measurements(const RunConfig& config) {
    if (config.out_path.empty()) throw ConfigError("missing --out");
    Stopwatch sw;
    const Scene scene = load_scene_checked(config);
    const MeasurementSet measurements =
        synth_measurements(scene, config.engine, scene.materials, config.synth_points,
                           config.synth_noise_db, config.seed);
    save_measurements(measurements, config.out_path);
    write_manifest(config, "synth-measurements",
                   std::filesystem::path(config.out_path).string() + ".manifest.json",
                   sw.seconds(), {{"points", measurements.size()}});
    std::cout << "wrote " << config.out_path << " (" << measurements.size()
              << " measurements)\n";
}

void cmd_calibrate(const RunConfig& config) {
    Stopwatch sw;
    const Scene scene = load_scene_checked(config);
    if (config.measurements_path.empty()) throw ConfigError("missing --measurements");
    const MeasurementSet measurements =
        load_measurements(config.measurements_path, scene);
    const auto dir = ensure_out_dir(config);

    MaterialParams params0;
    if (config.init == "random") {
        params0 = random_init_params(scene.material_count(), config.seed);
    } else if (config.init == "scene") {
        params0 = scene.materials;
    } else {
        throw ConfigError("unknown --init '" + config.init + "' (expected random or scene)");
    }

    CalibrationOptions options;
    options.eta = config.lr;
    options.epochs = config.epochs;
    options.optimizer = parse_optimizer(config.optimizer);
    options.batch_size = config.batch_size;
    options.shuffle_seed = config.seed;

    const CalibrationReport report =
        calibrate(scene, config.engine, params0, measurements, options);

    write_calibration_report_json(report, dir / "calibration_report.json");
    write_loss_curve_csv(report, dir / "loss_curve.csv");
    Scene calibrated = scene;
    calibrated.materials = report.theta_star;
    save_scene(calibrated, dir / "scene_calibrated.json");
    write_manifest(config, "calibrate", dir / "manifest_calibrate.json", sw.seconds(),
                   {{"initial_loss", report.initial_loss},
                    {"final_loss", report.final_loss},
                    {"measurements", measurements.size()}});
    std::cout << "calibrated " << scene.material_count() << " materials: loss "
              << report.initial_loss << " -> " << report.final_loss << "\n";
}

void cmd_plan(const RunConfig& config) {
    Stopwatch sw;
    const Scene scene = load_scene_checked(config);
    const auto dir = ensure_out_dir(config);
    const Grid grid = make_grid(scene, config.grid_res);
    FeasibleRegion feasible;
    feasible.mount_offset = config.mount_offset;
    const std::vector<Candidate> candidates =
        enumerate_candidates(scene, feasible, config.es_step_m);

    NewBsTemplate tmpl{config.tx_power_dbm, config.antenna_gain_db};
    PlanBudget budget{config.budget_init, config.budget_bo};

    if (!config.tx_power_list.empty()) {
        // Coverage sweep: for each TX power, plan up to n_new BSs and record
        // coverage after each increment.
        const std::vector<double> powers = parse_power_list(config.tx_power_list);
        std::ofstream sweep(dir / "tx_power_sweep.csv");
        if (!sweep) throw ConfigError("cannot write tx_power_sweep.csv");
        sweep << "tx_power_dbm,n_new,coverage\n";
        for (const double p : powers) {
            NewBsTemplate sweep_tmpl{p, config.antenna_gain_db};
            const PlanReport r =
                plan(scene, config.engine, scene.materials, candidates, config.n_new,
                     budget, grid, config.alpha, config.rth_dbm, config.seed, sweep_tmpl);
            // Re-evaluate coverage after each committed BS.
            std::vector<BaseStation> bs_set = scene.existing_bs;
            for (int n = 0; n < config.n_new; ++n) {
                bs_set.push_back(r.new_bs[static_cast<std::size_t>(n)]);
                const RadioMap map =
                    solve_radiomap(scene, config.engine, scene.materials, bs_set, grid);
                sweep << p << ',' << (n + 1) << ',' << coverage(map, config.rth_dbm)
                      << "\n";
            }
        }
    }

    const PlanReport report =
        plan(scene, config.engine, scene.materials, candidates, config.n_new, budget,
             grid, config.alpha, config.rth_dbm, config.seed, tmpl);

    write_plan_report_json(report, dir / "plan_report.json");
    write_plan_trace_csv(report, dir / "plan_trace.csv");
    {
        std::ofstream table(dir / "plan_table.txt");
        table << format_metrics_table({{"AutoPlan", report.final_metrics}});
    }
    write_manifest(config, "plan", dir / "manifest_plan.json", sw.seconds(),
                   {{"drt_queries", report.drt_queries},
                    {"candidates", candidates.size()},
                    {"plan_wall_seconds", report.wall_seconds}});
    std::cout << format_metrics_table({{"AutoPlan", report.final_metrics}});
}

void cmd_baselines(const RunConfig& config) {
    Stopwatch sw;
    const Scene scene = load_scene_checked(config);
    const auto dir = ensure_out_dir(config);
    const Grid grid = make_grid(scene, config.grid_res);
    FeasibleRegion feasible;
    feasible.mount_offset = config.mount_offset;
    const std::vector<Candidate> candidates =
        enumerate_candidates(scene, feasible, config.es_step_m);
    NewBsTemplate tmpl{config.tx_power_dbm, config.antenna_gain_db};

    const PlanReport rs =
        baseline_random(scene, config.engine, scene.materials, candidates, config.n_new,
                        config.rs_groups, grid, config.alpha, config.rth_dbm,
                        config.seed, tmpl);
    const PlanReport es =
        baseline_exhaustive(scene, config.engine, scene.materials, candidates,
                            config.n_new, grid, config.alpha, config.rth_dbm, tmpl);

    write_plan_report_json(rs, dir / "rs_report.json");
    write_plan_trace_csv(rs, dir / "rs_trace.csv");
    write_plan_report_json(es, dir / "es_report.json");
    write_plan_trace_csv(es, dir / "es_trace.csv");

    // The table file is a primary output and must stay byte-reproducible;
    // wall times and ratios go to stdout and the manifest only.
    const std::string table =
        format_metrics_table({{"ES", es.final_metrics}, {"RS", rs.final_metrics}});
    {
        std::ofstream out(dir / "baselines_table.txt");
        out << table;
    }
    std::cout << table;

    json extra = {{"rs_queries", rs.drt_queries},
                  {"es_queries", es.drt_queries},
                  {"rs_wall_seconds", rs.wall_seconds},
                  {"es_wall_seconds", es.wall_seconds}};
    const auto plan_manifest = dir / "manifest_plan.json";
    if (std::filesystem::exists(plan_manifest)) {
        std::ifstream in(plan_manifest);
        json j;
        in >> j;
        if (j.contains("plan_wall_seconds")) {
            const double plan_s = j["plan_wall_seconds"].get<double>();
            if (plan_s > 0.0) {
                const double ratio = es.wall_seconds / plan_s;
                std::cout << "ES wall time " << es.wall_seconds << " s = " << ratio
                          << "x plan\n";
                extra["es_over_plan_time_ratio"] = ratio;
            }
        }
    }
    write_manifest(config, "baselines", dir / "manifest_baselines.json", sw.seconds(),
                   extra);
}

void cmd_map(const RunConfig& config) {
    Stopwatch sw;
    const Scene scene = load_scene_checked(config);
    const auto dir = ensure_out_dir(config);
    const Grid grid = make_grid(scene, config.grid_res);

    std::vector<BaseStation> bs_set = scene.existing_bs;
    if (!config.bs_file.empty()) {
        for (const BaseStation& bs : load_bs_list(config.bs_file)) bs_set.push_back(bs);
    }
    if (bs_set.empty()) throw ValidationError("map: no base stations to solve");

    const RadioMap map = solve_radiomap(scene, config.engine, scene.materials, bs_set, grid);
    const Metrics metrics = target(map, config.alpha, config.rth_dbm);

    write_radiomap_csv(map, dir / "radiomap.csv");
    write_radiomap_pgm(map, dir / "radiomap.pgm");
    {
        json j = {{"coverage", metrics.coverage},
                  {"capacity_bps_hz", metrics.capacity},
                  {"target", metrics.target},
                  {"alpha", metrics.alpha},
                  {"r_th_dbm", metrics.r_th},
                  {"bs_count", bs_set.size()},
                  {"grid_points", grid.count}};
        std::ofstream out(dir / "metrics.json");
        out << j.dump(2) << "\n";
    }
    write_manifest(config, "map", dir / "manifest_map.json", sw.seconds(),
                   {{"bs_count", bs_set.size()}, {"grid_points", grid.count}});
    std::cout << format_metrics_table({{"map", metrics}});
}

}  // namespace autoplan
