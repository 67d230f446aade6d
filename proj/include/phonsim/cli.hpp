#ifndef PHONSIM_CLI_HPP
#define PHONSIM_CLI_HPP

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "phonsim/analytic.hpp"
#include "phonsim/sweep.hpp"

// Front-end plumbing: JSON config ingestion, CSV/JSON emission, and the
// mode dispatcher used by the command-line tool.

namespace phonsim {

using Json = nlohmann::json;

enum class RunMode { Point, Sweep, Figure, Validate };

inline const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::Point: return "point";
        case RunMode::Sweep: return "sweep";
        case RunMode::Figure: return "figure";
        default: return "validate";
    }
}

inline RunMode run_mode_from_string(const std::string& s) {
    if (s == "point") return RunMode::Point;
    if (s == "sweep") return RunMode::Sweep;
    if (s == "figure") return RunMode::Figure;
    if (s == "validate") return RunMode::Validate;
    throw std::invalid_argument("unknown mode: " + s);
}

struct RunConfig {
    RunMode mode = RunMode::Point;
    std::string figure;              // recipe name for mode figure
    std::string out;                 // empty = stdout
    std::string format = "csv";      // csv | json
    int workers = 0;                 // 0 = hardware concurrency
    double validate_tol = 0.05;
    SystemParams params;
    std::optional<SweepSpec> sweep;  // required for mode sweep
    TruncationPolicy truncation;
};

// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverError = 3;
inline constexpr int kExitValidationError = 4;

// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// ---- config ingestion -----------------------------------------------------

namespace detail {
// SI block: rates given in Hz are converted to gamma units. gamma itself
// comes from omega_hz and quality_factor.
inline void apply_physical_units(SystemParams& p, const Json& j) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (!j.contains("omega_hz") || !j.contains("quality_factor"))
        throw std::invalid_argument(
            "physical_units needs omega_hz and quality_factor");
    p.omega = two_pi * j.at("omega_hz").get<double>();
    p.quality_factor = j.at("quality_factor").get<double>();
    const double gamma_si = linewidth(p.omega, p.quality_factor);
    auto in_gamma = [&](const char* key) {
        return two_pi * j.at(key).get<double>() / gamma_si;
    };
    p.gamma = 1.0;
    if (j.contains("drive_amp_hz")) p.drive_amp = in_gamma("drive_amp_hz");
    if (j.contains("drive_detuning_hz"))
        p.drive_detuning = in_gamma("drive_detuning_hz");
    if (j.contains("rotation_hz")) p.rotation_omega = in_gamma("rotation_hz");
    if (j.contains("coupling_g_hz") && j.contains("rabi_hz") &&
        j.contains("detuning_hz")) {
        p.coupling_g = in_gamma("coupling_g_hz");
        p.rabi = in_gamma("rabi_hz");
        p.detuning_big = in_gamma("detuning_hz");
        p.nonlinearity_u =
            nonlinearity_from_spin(p.coupling_g, p.rabi, p.detuning_big);
    }
}
}  // namespace detail

inline SystemParams params_from_json(const Json& j) {
    SystemParams p;
    if (j.contains("physical_units"))
        detail::apply_physical_units(p, j.at("physical_units"));
    auto get = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    get("gamma", p.gamma);
    get("nonlinearity_u", p.nonlinearity_u);
    get("drive_amp", p.drive_amp);
    get("drive_detuning", p.drive_detuning);
    get("rotation_omega", p.rotation_omega);
    get("chirality_mag", p.chirality_mag);
    if (j.contains("direction")) {
        const std::string d = j.at("direction").get<std::string>();
        if (d == "left")
            p.direction = DriveDirection::LeftPort;
        else if (d == "right")
            p.direction = DriveDirection::RightPort;
        else
            throw std::invalid_argument("direction must be left or right");
    }
    validate(p);
    return p;
}

inline Json params_to_json(const SystemParams& p) {
    return Json{{"gamma", p.gamma},
                {"nonlinearity_u", p.nonlinearity_u},
                {"drive_amp", p.drive_amp},
                {"drive_detuning", p.drive_detuning},
                {"rotation_omega", p.rotation_omega},
                {"chirality_mag", p.chirality_mag},
                {"direction", to_string(p.direction)}};
}

inline SweepSpec sweep_from_json(const Json& j, const SystemParams& base) {
    SweepSpec spec;
    spec.base = base;
    for (const Json& ja : j.at("axes")) {
        Axis ax;
        ax.param = axis_param_from_string(ja.at("param").get<std::string>());
        ax.start = ja.at("start").get<double>();
        ax.stop = ja.at("stop").get<double>();
        ax.num_points = ja.at("num_points").get<int>();
        spec.axes.push_back(ax);
    }
    if (j.contains("directions")) {
        const std::string d = j.at("directions").get<std::string>();
        if (d == "left")
            spec.directions = DirectionMode::LeftOnly;
        else if (d == "right")
            spec.directions = DirectionMode::RightOnly;
        else if (d == "both")
            spec.directions = DirectionMode::Both;
        else
            throw std::invalid_argument("directions must be left|right|both");
    }
    validate(spec);
    return spec;
}

inline Json sweep_to_json(const SweepSpec& spec) {
    Json axes = Json::array();
    for (const Axis& ax : spec.axes)
        axes.push_back({{"param", to_string(ax.param)},
                        {"start", ax.start},
                        {"stop", ax.stop},
                        {"num_points", ax.num_points}});
    const char* dir = spec.directions == DirectionMode::LeftOnly    ? "left"
                      : spec.directions == DirectionMode::RightOnly ? "right"
                                                                    : "both";
    return Json{{"axes", axes}, {"directions", dir}};
}

inline RunConfig config_from_json(const Json& j) {
    RunConfig cfg;
    if (j.contains("mode"))
        cfg.mode = run_mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("figure")) cfg.figure = j.at("figure").get<std::string>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("format")) {
        cfg.format = j.at("format").get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json")
            throw std::invalid_argument("format must be csv or json");
    }
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("validate_tol"))
        cfg.validate_tol = j.at("validate_tol").get<double>();
    if (j.contains("params")) cfg.params = params_from_json(j.at("params"));
    if (j.contains("truncation")) {
        const Json& jt = j.at("truncation");
        if (jt.contains("start_dim"))
            cfg.truncation.start_dim = jt.at("start_dim").get<int>();
        if (jt.contains("tol")) cfg.truncation.tol = jt.at("tol").get<double>();
        if (jt.contains("hard_cap"))
            cfg.truncation.hard_cap = jt.at("hard_cap").get<int>();
    }
    if (j.contains("sweep"))
        cfg.sweep = sweep_from_json(j.at("sweep"), cfg.params);
    return cfg;
}

inline Json config_to_json(const RunConfig& cfg) {
    Json j{{"mode", to_string(cfg.mode)},
           {"format", cfg.format},
           {"workers", cfg.workers},
           {"validate_tol", cfg.validate_tol},
           {"params", params_to_json(cfg.params)},
           {"truncation",
            {{"start_dim", cfg.truncation.start_dim},
             {"tol", cfg.truncation.tol},
             {"hard_cap", cfg.truncation.hard_cap}}}};
    if (!cfg.figure.empty()) j["figure"] = cfg.figure;
    if (!cfg.out.empty()) j["out"] = cfg.out;
    if (cfg.sweep) j["sweep"] = sweep_to_json(*cfg.sweep);
    return j;
}

// ---- output ---------------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "axis1,axis2,direction,mean_n,g2,g3,g4,P0,P1,P2,P3,P4,P5,P6,verdict,"
    "N_trunc,residual";

inline void write_csv_row(std::ostream& os, const PointResult& pt) {
    os << format_double(pt.axis1) << ',';
    if (!std::isnan(pt.axis2)) os << format_double(pt.axis2);
    os << ',' << to_string(pt.direction) << ',';
    if (pt.ok) {
        os << format_double(pt.stats.mean_n) << ','
           << format_double(pt.stats.g.at(2)) << ','
           << format_double(pt.stats.g.at(3)) << ','
           << format_double(pt.stats.g.at(4)) << ',';
        for (int n = 0; n <= 6; ++n) {
            const auto& pop = pt.stats.populations;
            os << (n < static_cast<int>(pop.size()) ? format_double(pop[n])
                                                    : "0")
               << ',';
        }
        os << to_string(pt.cls.verdict) << ',' << pt.n_trunc << ','
           << format_double(pt.residual);
    } else {
        os << ",,,,,,,,,,,\"ERROR: " << pt.error << "\",,";
    }
    os << '\n';
}

inline void write_csv(std::ostream& os, const SweepResult& result) {
    os << kCsvHeader << '\n';
    for (const PointResult& pt : result.points) write_csv_row(os, pt);
}

inline Json point_to_json(const PointResult& pt) {
    Json j{{"axis1", pt.axis1},
           {"direction", to_string(pt.direction)},
           {"ok", pt.ok}};
    if (!std::isnan(pt.axis2)) j["axis2"] = pt.axis2;
    if (!pt.ok) {
        j["error"] = pt.error;
        return j;
    }
    j["mean_n"] = pt.stats.mean_n;
    j["g"] = {{"2", pt.stats.g.at(2)},
              {"3", pt.stats.g.at(3)},
              {"4", pt.stats.g.at(4)}};
    j["populations"] = pt.stats.populations;
    j["verdict"] = to_string(pt.cls.verdict);
    j["thresholds"] = {{"f", pt.cls.f}, {"f_n", Json::object()}};
    for (const auto& [n, fn] : pt.cls.f_n)
        j["thresholds"]["f_n"][std::to_string(n)] = fn;
    Json dev = Json::array();
    for (double d : pt.cls.poisson_dev)
        dev.push_back(std::isnan(d) ? Json() : Json(d));
    j["poisson_deviation"] = dev;
    j["n_trunc"] = pt.n_trunc;
    j["residual"] = pt.residual;
    return j;
}

inline void write_json(std::ostream& os, const SweepResult& result) {
    Json j{{"spec", sweep_to_json(result.spec)}, {"points", Json::array()}};
    j["spec"]["base"] = params_to_json(result.spec.base);
    for (const PointResult& pt : result.points)
        j["points"].push_back(point_to_json(pt));
    os << j.dump(2) << '\n';
}

// ---- mode dispatch --------------------------------------------------------

namespace detail {
inline int run_validate(const RunConfig& cfg, std::ostream& os) {
    SystemParams base = cfg.params;
    if (base.drive_amp <= 0.0) base.drive_amp = 0.01;
    if (base.nonlinearity_u <= 0.0) base.nonlinearity_u = 20.0;
    double max_err = 0.0;
    int compared = 0;
    for (int i = 0; i <= 100; ++i) {
        SystemParams p = base;
        p.drive_detuning = -40.0 + i * 1.0;
        const PointResult pt = solve_point(p, cfg.truncation);
        if (!pt.ok) {
            std::cerr << "validate: solver failure at detuning "
                      << p.drive_detuning << ": " << pt.error << '\n';
            return kExitSolverError;
        }
        if (pt.stats.mean_n >= 0.05) continue;
        ++compared;
        const double e2 =
            std::abs(pt.stats.g.at(2) - g2_analytic(p)) / g2_analytic(p);
        const double e3 =
            std::abs(pt.stats.g.at(3) - g3_analytic(p)) / g3_analytic(p);
        max_err = std::max({max_err, e2, e3});
    }
    os << "validate: compared " << compared
       << " points, max relative error " << format_double(max_err) << '\n';
    return max_err <= cfg.validate_tol ? kExitOk : kExitValidationError;
}
}  // namespace detail

// Executes the configured mode; data goes to cfg.out (or `data` when no
// path is set), diagnostics to stderr.
inline int run(const RunConfig& cfg, std::ostream& data = std::cout) {
    std::ofstream file;
    std::ostream* os = &data;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open output file: " << cfg.out << '\n';
            return kExitConfigError;
        }
        os = &file;
    }

    try {
        switch (cfg.mode) {
            case RunMode::Point: {
                PointResult pt = solve_point(cfg.params, cfg.truncation);
                pt.axis1 = cfg.params.drive_detuning;
                *os << point_to_json(pt).dump(2) << '\n';
                return pt.ok ? kExitOk : kExitSolverError;
            }
            case RunMode::Sweep:
            case RunMode::Figure: {
                SweepSpec spec;
                if (cfg.mode == RunMode::Figure) {
                    spec = figure_recipe(cfg.figure);
                    spec.truncation = cfg.truncation;
                } else if (cfg.sweep) {
                    spec = *cfg.sweep;
                    spec.truncation = cfg.truncation;
                } else {
                    std::cerr << "sweep mode needs a sweep block\n";
                    return kExitConfigError;
                }
                const SweepResult result = run_sweep(spec, cfg.workers);
                if (cfg.format == "json")
                    write_json(*os, result);
                else
                    write_csv(*os, result);
                for (const PointResult& pt : result.points)
                    if (!pt.ok) return kExitSolverError;
                return kExitOk;
            }
            case RunMode::Validate:
                return detail::run_validate(cfg, *os);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolverError;
    }
    return kExitConfigError;
}

}  // namespace phonsim

#endif
