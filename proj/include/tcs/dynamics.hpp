#pragma once

#include "tcs/core.hpp"
#include "tcs/graph.hpp"
#include "tcs/integrator.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace tcs {

struct SwitchEvent {
    double time = 0.0;
    std::uint64_t old_hash = 0;
    std::uint64_t new_hash = 0;
    Connectivity before = Connectivity::strong;
    Connectivity after = Connectivity::strong;
};

struct SwitchInterval {
    double t_start = 0.0;
    double t_end = 0.0;
    std::uint64_t hash = 0;
};

/// Record of the switching function along a run on [0, t_end].
struct SwitchLog {
    std::uint64_t initial_hash = 0;
    Connectivity initial_connectivity = Connectivity::strong;
    double t_end = 0.0;
    std::vector<SwitchEvent> events;

    /// Constant-topology intervals tiling [0, t_end].
    std::vector<SwitchInterval> intervals() const;
    /// Total time spent in each topology.
    std::map<std::uint64_t, double> occupancy() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<AgentEnsemble> states;
    SwitchLog switch_log;
};

struct Derivative {
    std::vector<double> dx;
    std::vector<double> dv;
};

/// x_i' = v_i, v_i' = sum_j w_ij (v_j - v_i).
Derivative rhs(const AgentEnsemble& ensemble, const Topology& topology);

/// One RK4 step with the topology held fixed across the substeps.
AgentEnsemble step(const AgentEnsemble& ensemble, const Topology& topology, double dt);

struct SimulationOptions {
    std::size_t sample_every = 1;
    /// Locate each switch inside its step by bisection and split the step there.
    bool refine_switches = false;
    double refine_tolerance = 1e-9;
    /// Chattering guard.
    std::size_t max_switch_events = 1'000'000;
};

/// Integrates the switching system, rebuilding the topology whenever the rank
/// table of the configuration changes. States are sampled at t = 0, every
/// `sample_every` steps, and at t_end.
Trajectory simulate(const AgentEnsemble& initial, const WeightFunction& weights, double dt, double t_end,
                    const SimulationOptions& options = {});

/// Integrates v' = -L v with `topology` frozen for the whole run.
Trajectory simulate_fixed_topology(const AgentEnsemble& initial, const Topology& topology, double dt, double t_end,
                                   std::size_t sample_every = 1);

} // namespace tcs
