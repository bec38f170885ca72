#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include "hyperselect/io.hpp"

namespace hyperselect {

struct ScenarioConfig {
    std::string scenario;
    Config values;
    std::uint64_t seed = 7;
    std::string out_dir = "out";
};

struct ScenarioOutcome {
    std::vector<std::string> files;  // names relative to out_dir, in write order
    Json summary;
};

// duality, counterexample, selection, marechal, finiteness, borel
const std::vector<std::string>& scenario_names();

// Writes the scenario tables plus summary.json into out_dir. Output depends only on the
// configuration and seed.
ScenarioOutcome run_scenario(const ScenarioConfig& config);

// 2 invalid configuration, 4 depth insufficient, 3 any other library error, 1 otherwise.
int exit_code_for(const std::exception& e);
Json error_record(const std::exception& e, const std::string& scenario);

}  // namespace hyperselect
