#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "radfriction/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Radiative friction on a spontaneously emitting atom: closed-form force "
                 "evaluation and brute-force mode-sum verification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    const std::vector<std::string> commands = {"rate",     "shift", "force-analytic",
                                               "simulate", "sweep", "converge"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "path to the run config file")->required();
        sub->add_option("--out", out_dir, "output directory");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : radfriction::exit_usage;
    }

    try {
        const auto config = radfriction::load_config_file(config_path);
        return radfriction::run_command(app.get_subcommands().front()->get_name(), config,
                                        out_dir);
    } catch (const radfriction::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return radfriction::exit_usage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return radfriction::exit_usage;
    }
}
