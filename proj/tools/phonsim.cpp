#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "phonsim/cli.hpp"

// Driven-dissipative Kerr phonon cavity simulator front end.

int main(int argc, char** argv) {
    CLI::App app{"phonsim: steady-state phonon statistics, blockade "
                 "classification, and nonreciprocity scans"};

    std::string config_path, mode, figure, out, format;
    int workers = -1;
    bool dump_config = false;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--mode", mode, "point | sweep | figure | validate");
    app.add_option("--figure", figure,
                   "figure recipe name (fig2a..fig2d, fig3a, fig4a, fig5a, "
                   "fig5b, fig6a, fig7)");
    app.add_option("--out", out, "output file (default: stdout)");
    app.add_option("--format", format, "csv | json");
    app.add_option("--workers", workers, "worker thread count (0 = auto)");
    app.add_flag("--dump-config", dump_config,
                 "print the effective configuration and exit");
    CLI11_PARSE(app, argc, argv);

    phonsim::RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "cannot read config file: " << config_path << '\n';
                return phonsim::kExitConfigError;
            }
            cfg = phonsim::config_from_json(phonsim::Json::parse(in));
        }
        // flags override the file
        if (!mode.empty()) cfg.mode = phonsim::run_mode_from_string(mode);
        if (!figure.empty()) {
            cfg.figure = figure;
            if (mode.empty() && config_path.empty())
                cfg.mode = phonsim::RunMode::Figure;
        }
        if (!out.empty()) cfg.out = out;
        if (!format.empty()) {
            if (format != "csv" && format != "json")
                throw std::invalid_argument("format must be csv or json");
            cfg.format = format;
        }
        if (workers >= 0) cfg.workers = workers;
        if (cfg.mode == phonsim::RunMode::Figure && cfg.figure.empty())
            throw std::invalid_argument("figure mode needs --figure");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return phonsim::kExitConfigError;
    }

    if (dump_config) {
        std::cout << phonsim::config_to_json(cfg).dump(2) << '\n';
        return phonsim::kExitOk;
    }
    return phonsim::run(cfg);
}
