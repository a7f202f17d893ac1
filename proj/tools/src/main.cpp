#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "heatfield/cli/run.hpp"
#include "heatfield/version.hpp"

int main(int argc, char** argv) {
    using namespace heatfield::cli;

    CLI::App app{"heatfield: branching Brownian motion experiments"};
    app.set_version_flag("--version", std::string(heatfield::kVersion));
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::optional<Experiment> chosen;
    for (Experiment kind : all_experiments()) {
        auto* sub = app.add_subcommand(std::string(name(kind)), "run the " + std::string(name(kind)) + " experiment");
        sub->add_option("--config", config, "experiment config file")->required();
        sub->add_option("--out", out, "CSV output path (manifest goes next to it)");
        sub->callback([&chosen, kind] { chosen = kind; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    std::optional<std::filesystem::path> out_path;
    if (!out.empty()) out_path = out;
    return run_command(*chosen, config, out_path, std::cerr);
}
