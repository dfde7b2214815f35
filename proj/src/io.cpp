#include "autoplan/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "autoplan/errors.hpp"

namespace autoplan {

using nlohmann::json;

namespace {

json require(const json& j, const char* key, const char* context) {
    if (!j.contains(key)) {
        throw ValidationError(std::string(context) + ": missing field '" + key + "'");
    }
    return j.at(key);
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Scene load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("load_scene: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("load_scene: parse error in " + path.string() + ": " +
                              e.what());
    }

    Scene scene;
    try {
        const json region = require(j, "region", "scene");
        scene.region.xmin = require(region, "xmin", "region").get<double>();
        scene.region.ymin = require(region, "ymin", "region").get<double>();
        scene.region.xmax = require(region, "xmax", "region").get<double>();
        scene.region.ymax = require(region, "ymax", "region").get<double>();
        scene.carrier_freq = require(j, "carrier_freq_hz", "scene").get<double>();
        scene.rx_height = require(j, "rx_height_m", "scene").get<double>();

        for (const json& jb : require(j, "buildings", "scene")) {
            Building b;
            for (const json& jv : require(jb, "footprint", "building")) {
                if (!jv.is_array() || jv.size() != 2) {
                    throw ValidationError("building footprint vertices must be [x, y]");
                }
                b.footprint.push_back({jv[0].get<double>(), jv[1].get<double>()});
            }
            b.height = require(jb, "height_m", "building").get<double>();
            b.material_index = require(jb, "material_index", "building").get<int>();
            normalize_ccw(b.footprint);
            scene.buildings.push_back(std::move(b));
        }

        for (const json& jbs : require(j, "existing_bs", "scene")) {
            BaseStation bs;
            bs.x = require(jbs, "x", "base station").get<double>();
            bs.y = require(jbs, "y", "base station").get<double>();
            bs.z = require(jbs, "z", "base station").get<double>();
            bs.tx_power_dbm = require(jbs, "tx_power_dbm", "base station").get<double>();
            bs.antenna_gain_db =
                require(jbs, "antenna_gain_db", "base station").get<double>();
            scene.existing_bs.push_back(bs);
        }

        const json materials = require(j, "materials", "scene");
        scene.materials.sigma =
            require(materials, "sigma", "materials").get<std::vector<double>>();
        scene.materials.epsilon =
            require(materials, "epsilon", "materials").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ValidationError("load_scene: malformed " + path.string() + ": " + e.what());
    }

    scene.validate();
    return scene;
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
    json j;
    j["region"] = {{"xmin", scene.region.xmin},
                   {"ymin", scene.region.ymin},
                   {"xmax", scene.region.xmax},
                   {"ymax", scene.region.ymax}};
    j["carrier_freq_hz"] = scene.carrier_freq;
    j["rx_height_m"] = scene.rx_height;
    j["buildings"] = json::array();
    for (const Building& b : scene.buildings) {
        json jb;
        jb["footprint"] = json::array();
        for (const Vec2& v : b.footprint) jb["footprint"].push_back({v.x, v.y});
        jb["height_m"] = b.height;
        jb["material_index"] = b.material_index;
        j["buildings"].push_back(std::move(jb));
    }
    j["existing_bs"] = json::array();
    for (const BaseStation& bs : scene.existing_bs) {
        j["existing_bs"].push_back({{"x", bs.x},
                                    {"y", bs.y},
                                    {"z", bs.z},
                                    {"tx_power_dbm", bs.tx_power_dbm},
                                    {"antenna_gain_db", bs.antenna_gain_db}});
    }
    j["materials"] = {{"sigma", scene.materials.sigma},
                      {"epsilon", scene.materials.epsilon}};

    std::ofstream out(path);
    if (!out) throw ConfigError("save_scene: cannot write " + path.string());
    out << j.dump(2) << "\n";
}

MeasurementSet load_measurements(const std::filesystem::path& path, const Scene& scene) {
    std::ifstream in(path);
    if (!in) throw ValidationError("load_measurements: cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError("load_measurements: empty file " + path.string());
    }
    const bool has_bs = line.find("bs_index") != std::string::npos;
    if (line.rfind("x,y,rsrp_dbm", 0) != 0) {
        throw ValidationError("load_measurements: expected header x,y,rsrp_dbm[,bs_index]");
    }

    MeasurementSet out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        Measurement m;
        char comma = 0;
        if (!(ss >> m.x >> comma >> m.y >> comma >> m.rsrp_dbm)) {
            throw ValidationError("load_measurements: bad row at line " +
                                  std::to_string(line_no));
        }
        if (has_bs && ss >> comma >> m.bs_index) {
            // -1 marks an unresolved association
            if (m.bs_index < -1 ||
                m.bs_index >= static_cast<int>(scene.existing_bs.size())) {
                throw ValidationError("load_measurements: bs_index out of range at line " +
                                      std::to_string(line_no));
            }
        }
        if (!scene.region.contains({m.x, m.y})) {
            throw ValidationError("load_measurements: location outside region at line " +
                                  std::to_string(line_no));
        }
        out.push_back(m);
    }
    if (out.empty()) {
        throw ValidationError("load_measurements: no measurements in " + path.string());
    }
    return out;
}

void save_measurements(const MeasurementSet& measurements,
                       const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("save_measurements: cannot write " + path.string());
    out << "x,y,rsrp_dbm,bs_index\n";
    for (const Measurement& m : measurements) {
        out << fmt_double(m.x) << ',' << fmt_double(m.y) << ',' << fmt_double(m.rsrp_dbm)
            << ',' << m.bs_index << "\n";
    }
}

void write_radiomap_csv(const RadioMap& map, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_radiomap_csv: cannot write " + path.string());
    out << "x,y,rsrp_dbm,snr_db,serving_bs\n";
    for (long long i = 0; i < map.grid.count; ++i) {
        const Vec2 p = map.grid.point2(i);
        const std::size_t iu = static_cast<std::size_t>(i);
        const double snr_db = map.best_rsrp[iu] - map.noise_floor_dbm;
        out << fmt_double(p.x) << ',' << fmt_double(p.y) << ','
            << fmt_double(map.best_rsrp[iu]) << ',' << fmt_double(snr_db) << ','
            << map.serving_bs[iu] << "\n";
    }
}

void write_radiomap_pgm(const RadioMap& map, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_radiomap_pgm: cannot write " + path.string());
    out << "P5\n";
    out << "# best RSRP heatmap; gray = clamp((rsrp_dbm - (-120)) / 90 * 255)\n";
    out << "# row 0 = max-y row of the grid; cells beyond the point count are 0\n";
    out << map.grid.nx << " " << map.grid.ny << "\n255\n";
    for (long long row = map.grid.ny - 1; row >= 0; --row) {
        for (long long col = 0; col < map.grid.nx; ++col) {
            const long long i = row * map.grid.nx + col;
            unsigned char gray = 0;
            if (i < map.grid.count) {
                const double r = map.best_rsrp[static_cast<std::size_t>(i)];
                const double v = (r - (-120.0)) / 90.0 * 255.0;
                gray = static_cast<unsigned char>(std::clamp(v, 0.0, 255.0));
            }
            out.put(static_cast<char>(gray));
        }
    }
}

void write_loss_curve_csv(const CalibrationReport& report,
                          const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_loss_curve_csv: cannot write " + path.string());
    out << "epoch,loss\n";
    out << "0," << fmt_double(report.initial_loss) << "\n";
    for (std::size_t e = 0; e < report.loss_curve.size(); ++e) {
        out << (e + 1) << ',' << fmt_double(report.loss_curve[e]) << "\n";
    }
}

void write_calibration_report_json(const CalibrationReport& report,
                                   const std::filesystem::path& path) {
    json j;
    j["initial_loss"] = report.initial_loss;
    j["final_loss"] = report.final_loss;
    j["epochs"] = report.loss_curve.size();
    j["loss_curve"] = report.loss_curve;
    j["theta_star"] = {{"sigma", report.theta_star.sigma},
                       {"epsilon", report.theta_star.epsilon}};
    j["crossings_per_material"] = report.crossings_per_material;

    std::ofstream out(path);
    if (!out) throw ConfigError("write_calibration_report_json: cannot write " + path.string());
    out << j.dump(2) << "\n";
}

namespace {

json metrics_to_json(const Metrics& m) {
    return {{"coverage", m.coverage},
            {"capacity_bps_hz", m.capacity},
            {"target", m.target},
            {"alpha", m.alpha},
            {"r_th_dbm", m.r_th}};
}

}  // namespace

void write_plan_report_json(const PlanReport& report, const std::filesystem::path& path) {
    json j;
    j["method"] = report.method;
    j["seed"] = report.seed;
    j["drt_queries"] = report.drt_queries;
    j["final_metrics"] = metrics_to_json(report.final_metrics);
    j["new_bs"] = json::array();
    for (const BaseStation& bs : report.new_bs) {
        j["new_bs"].push_back({{"x", bs.x},
                               {"y", bs.y},
                               {"z", bs.z},
                               {"tx_power_dbm", bs.tx_power_dbm},
                               {"antenna_gain_db", bs.antenna_gain_db}});
    }
    j["rounds"] = json::array();
    for (const RoundTrace& r : report.rounds) {
        j["rounds"].push_back({{"bs_number", r.bs_number},
                               {"evaluations", r.evals.size()},
                               {"chosen_candidate", r.chosen_candidate},
                               {"chosen_target", r.chosen_target},
                               {"length_scale", r.length_scale}});
    }

    std::ofstream out(path);
    if (!out) throw ConfigError("write_plan_report_json: cannot write " + path.string());
    out << j.dump(2) << "\n";
}

void write_plan_trace_csv(const PlanReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_plan_trace_csv: cannot write " + path.string());
    out << "bs_number,eval,candidate,x,y,target,incumbent\n";
    for (const RoundTrace& r : report.rounds) {
        for (std::size_t e = 0; e < r.evals.size(); ++e) {
            const EvalRecord& rec = r.evals[e];
            out << r.bs_number << ',' << e << ',' << rec.candidate << ','
                << fmt_double(rec.x) << ',' << fmt_double(rec.y) << ','
                << fmt_double(rec.target) << ',' << fmt_double(rec.incumbent) << "\n";
        }
    }
}

std::vector<BaseStation> load_bs_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("load_bs_list: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("load_bs_list: parse error: " + std::string(e.what()));
    }
    const json arr = j.is_array() ? j : require(j, "new_bs", "bs list");
    std::vector<BaseStation> out;
    try {
        for (const json& jbs : arr) {
            BaseStation bs;
            bs.x = require(jbs, "x", "bs").get<double>();
            bs.y = require(jbs, "y", "bs").get<double>();
            bs.z = require(jbs, "z", "bs").get<double>();
            bs.tx_power_dbm = require(jbs, "tx_power_dbm", "bs").get<double>();
            bs.antenna_gain_db = require(jbs, "antenna_gain_db", "bs").get<double>();
            out.push_back(bs);
        }
    } catch (const json::exception& e) {
        throw ValidationError("load_bs_list: malformed: " + std::string(e.what()));
    }
    return out;
}

std::string format_metrics_table(
    const std::vector<std::pair<std::string, Metrics>>& rows) {
    std::ostringstream os;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-12s %14s %18s %10s\n", "method",
                  "coverage (%)", "capacity (bit/s/Hz)", "target");
    os << buf;
    for (const auto& [name, m] : rows) {
        std::snprintf(buf, sizeof(buf), "%-12s %14.2f %18.2f %10.2f\n", name.c_str(),
                      100.0 * m.coverage, m.capacity, m.target);
        os << buf;
    }
    return os.str();
}

}  // namespace autoplan
