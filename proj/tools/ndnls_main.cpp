#include "ndnls/error.hpp"
#include "ndnls/pipeline.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
    CLI::App app{"Inverse scattering solver for the nonlocal derivative NLS equation"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<double> t;
    std::optional<std::string> out_dir;
    for (const char* name : {"check", "scatter", "evolve", "solve", "oracle", "compare"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--t", t, "override time.t");
        sub->add_option("--out", out_dir, "override output.dir");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ndnls::kExitConfig;
    }

    ndnls::Config cfg;
    try {
        cfg = ndnls::parse_config(config_path);
    } catch (const ndnls::ConfigError& e) {
        std::cerr << "config: " << e.what() << '\n';
        return ndnls::kExitConfig;
    }
    if (t) cfg.time_t = *t;
    if (out_dir) cfg.output_dir = *out_dir;

    return ndnls::dispatch(app.get_subcommands().front()->get_name(), cfg, std::cout, std::cerr);
}
