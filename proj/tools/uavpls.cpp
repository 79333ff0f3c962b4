#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "uavpls/commands.hpp"
#include "uavpls/config.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Protected-zone secrecy simulator for UAV mmWave NOMA downlinks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;

    const std::map<std::string, std::string> blurbs{
        {"eve-stats", "where the most detrimental eavesdropper sits (angle and distance CDFs)"},
        {"zone-sweep", "outage and secrecy rates across zone angles at each (h, q)"},
        {"optimize", "best zone shape at each (h, q)"},
        {"altitude-sweep", "optimized, fixed-shape and OMA rates across altitudes"},
        {"validate", "check a config and print it with defaults filled in"},
    };
    for (const auto& name : uavpls::known_commands()) {
        const auto blurb = blurbs.find(name);
        auto* sub = app.add_subcommand(name, blurb == blurbs.end() ? "" : blurb->second);
        sub->add_option("--config", config_path, "JSON experiment config (omitted fields use defaults)")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory for CSV tables and manifest.json");
        sub->add_option("--trials", trials, "Monte Carlo trials per evaluated point");
        sub->add_option("--seed", seed, "base random seed");
        sub->add_option("--workers", workers, "worker threads (0 = all cores)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    uavpls::ExperimentConfig cfg;
    try {
        cfg = config_path.empty() ? uavpls::parse_config(nlohmann::json::object())
                                  : uavpls::parse_config(std::filesystem::path(config_path));
        if (trials)
            cfg.sim.trials = *trials;
        if (seed)
            cfg.sim.seed = *seed;
        if (workers)
            cfg.sim.workers = *workers;
        cfg.sim.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    return uavpls::run_command(command, cfg, out_dir, std::cout, std::cerr);
}
