#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hyperselect/errors.hpp"
#include "hyperselect/scenarios.hpp"

namespace hs = hyperselect;

int main(int argc, char** argv) {
    CLI::App app{"Batch runner for the hyperselect scenarios"};
    std::string scenario, config_path, out_dir = "out";
    std::uint64_t seed = 7;
    bool seed_given = false;
    app.add_option("scenario", scenario, "Scenario name")
        ->required()
        ->check(CLI::IsMember(hs::scenario_names()));
    app.add_option("--config", config_path, "key=value configuration file")->required();
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
    app.add_option("--out", out_dir, "Output directory");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    seed_given = seed_opt->count() > 0;

    hs::ScenarioConfig cfg;
    cfg.scenario = scenario;
    cfg.out_dir = out_dir;
    try {
        cfg.values = hs::Config::from_file(config_path);
        // A seed in the file applies unless --seed overrides it.
        if (!seed_given && cfg.values.has("seed"))
            seed = static_cast<std::uint64_t>(cfg.values.get_int("seed", 7, 0, (1LL << 62)));
        cfg.seed = seed;
        auto values = cfg.values.values();
        values.erase("seed");
        hs::Config stripped;
        for (const auto& [k, v] : values) stripped.set(k, v);
        cfg.values = stripped;

        const auto outcome = hs::run_scenario(cfg);
        for (const auto& f : outcome.files) std::cout << (std::filesystem::path(out_dir) / f).string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        const auto record = hs::error_record(e, scenario);
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (!ec) {
            try {
                hs::write_json((std::filesystem::path(out_dir) / "error.json").string(), record);
            } catch (const std::exception&) {
            }
        }
        std::cerr << record.dump() << '\n';
        return hs::exit_code_for(e);
    }
}
