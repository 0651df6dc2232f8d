#include "tcs/app/scenarios.hpp"

#include "tcs/app/config.hpp"

namespace tcs::app {

const std::vector<ScenarioInfo>& scenario_registry()
{
    static const std::vector<ScenarioInfo> registry{
        {"example1", {"topological"}, {"c", "dt", "t_end"},
         "seven agents on a line; the central one oscillates about the origin with launch speed c"},
        {"example2", {"topological"}, {"dt", "t_end"},
         "seven agents averaging their two closest neighbours; tracks connectivity transitions"},
        {"example3", {"topological"}, {"dt", "t_end"},
         "n-1 agents in [-1,1] and an outlier at distance 5 that nobody follows"},
        {"complete_digraph", {"topological"}, {"dt", "t_end"},
         "random start under the complete digraph g = 1 (flocking witness)"},
        {"random_flock", {"topological", "metric"}, {"dt", "t_end"},
         "random start with user weights, topological or metric rates"},
        {"fixed_topology", {"fixed-topology"}, {"dt", "t_end"},
         "random start with the topology frozen at t = 0; reports the left-null-vector consensus prediction"},
        {"meanfield", {"meanfield"}, {"dt", "t_end"},
         "self-consistent particle approximation of the kinetic equation with mollified separation"},
        {"hydro", {"hydro"}, {"dt", "t_end"},
         "1-D Lagrangian hydrodynamic relaxation with kernel bounded below by g0"},
        {"swarm", {"swarm"}, {"dt", "t_end"},
         "self-propelled agents with Morse repulsion and rank-based attraction from the unit box"},
    };
    return registry;
}

const ScenarioInfo& find_scenario(const std::string& name)
{
    for (const auto& info : scenario_registry())
        if (info.name == name)
            return info;
    throw ConfigError("scenario", "unknown scenario '" + name + "' (see list-scenarios)");
}

} // namespace tcs::app
