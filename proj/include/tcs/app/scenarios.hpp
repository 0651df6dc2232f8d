#pragma once

#include <string>
#include <vector>

namespace tcs::app {

struct ScenarioInfo {
    std::string name;
    std::vector<std::string> models; ///< accepted models; the first is the default
    std::vector<std::string> required;
    std::string description;
};

const std::vector<ScenarioInfo>& scenario_registry();

/// Throws ConfigError("scenario", ...) for unknown names.
const ScenarioInfo& find_scenario(const std::string& name);

} // namespace tcs::app
