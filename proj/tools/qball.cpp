#include "qball/runner.hpp"

#include "qball/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"qball: charged Q-ball solver toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // accept global flags after the subcommand name

    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--threads", threads, "worker threads where the operation allows")
        ->check(CLI::PositiveNumber);

    for (const char* name : {"check-potential", "solve", "sweep", "certify", "evolve", "stability"})
        app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qball::kExitConfig; // usage errors are config errors
    }

    qball::Config cfg;
    try {
        cfg = qball::Config::parse_file(config_path);
    } catch (const qball::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return qball::kExitConfig;
    }
    return qball::dispatch(app.get_subcommands().front()->get_name(), cfg, out_dir, threads);
}
