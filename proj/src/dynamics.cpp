#include "tcs/dynamics.hpp"

#include "tcs/kernels.hpp"

#include <stdexcept>
#include <string>

namespace tcs {

std::vector<SwitchInterval> SwitchLog::intervals() const
{
    std::vector<SwitchInterval> out;
    double start = 0.0;
    std::uint64_t hash = initial_hash;
    for (const auto& event : events) {
        out.push_back({start, event.time, hash});
        start = event.time;
        hash = event.new_hash;
    }
    out.push_back({start, t_end, hash});
    return out;
}

std::map<std::uint64_t, double> SwitchLog::occupancy() const
{
    std::map<std::uint64_t, double> result;
    for (const auto& interval : intervals())
        result[interval.hash] += interval.t_end - interval.t_start;
    return result;
}

Derivative rhs(const AgentEnsemble& ensemble, const Topology& topology)
{
    Derivative d;
    d.dx = ensemble.velocities();
    d.dv.assign(d.dx.size(), 0.0);
    kernels::parallel::consensus_rhs(topology.weights, ensemble.velocities(), ensemble.size(), ensemble.dim(), d.dv);
    return d;
}

AgentEnsemble step(const AgentEnsemble& ensemble, const Topology& topology, double dt)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("step: dt must be positive");
    const std::size_t n = ensemble.size();
    const std::size_t dim = ensemble.dim();
    return rk4_step(ensemble, dt, [&](std::span<const double>, std::span<const double> v, std::span<double> out) {
        kernels::parallel::consensus_rhs(topology.weights, v, n, dim, out);
    });
}

namespace {

void require_finite(const AgentEnsemble& state, double t)
{
    if (!state.all_finite())
        throw SimulationError("simulation produced a non-finite coordinate at t = " + std::to_string(t));
}

std::uint64_t configuration_hash(const AgentEnsemble& state)
{
    return fingerprint(rank_table(state));
}

void check_options(const SimulationOptions& options)
{
    if (options.sample_every < 1)
        throw std::invalid_argument("sample_every must be at least 1");
    if (!(options.refine_tolerance > 0.0))
        throw std::invalid_argument("refine_tolerance must be positive");
}

} // namespace

Trajectory simulate(const AgentEnsemble& initial, const WeightFunction& weights, double dt, double t_end,
                    const SimulationOptions& options)
{
    check_options(options);
    const TimeGrid grid(dt, t_end);

    Trajectory traj;
    AgentEnsemble state = initial;
    Topology topo = communication_matrix(state, weights);
    Connectivity connectivity = strongly_connected_components(topo).kind();
    traj.switch_log.initial_hash = topo.hash;
    traj.switch_log.initial_connectivity = connectivity;
    traj.switch_log.t_end = t_end;
    traj.times.push_back(0.0);
    traj.states.push_back(state);

    auto log_switch = [&](double time, const AgentEnsemble& at) {
        Topology next = communication_matrix(at, weights);
        const Connectivity next_connectivity = strongly_connected_components(next).kind();
        traj.switch_log.events.push_back({time, topo.hash, next.hash, connectivity, next_connectivity});
        if (traj.switch_log.events.size() > options.max_switch_events)
            throw SimulationError("switch count exceeded " + std::to_string(options.max_switch_events) +
                                  " events (chattering) at t = " + std::to_string(time));
        topo = std::move(next);
        connectivity = next_connectivity;
    };

    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t0 = grid.time(k);
        const double t1 = grid.time(k + 1);
        double t = t0;
        double remaining = t1 - t0;

        while (remaining > 0.0) {
            AgentEnsemble trial = step(state, topo, remaining);
            require_finite(trial, t + remaining);
            if (configuration_hash(trial) == topo.hash) {
                state = std::move(trial);
                break;
            }
            if (!options.refine_switches) {
                state = std::move(trial);
                log_switch(t1, state);
                break;
            }
            // Largest sub-step that keeps the configuration, to within the tolerance.
            double lo = 0.0;
            double hi = remaining;
            while (hi - lo > options.refine_tolerance) {
                const double mid = 0.5 * (lo + hi);
                if (configuration_hash(step(state, topo, mid)) == topo.hash)
                    lo = mid;
                else
                    hi = mid;
            }
            state = step(state, topo, hi);
            require_finite(state, t + hi);
            t += hi;
            remaining = t1 - t;
            log_switch(t, state);
            if (remaining <= 1e-15 * dt)
                break;
        }

        if ((k + 1) % options.sample_every == 0 || k + 1 == grid.steps) {
            traj.times.push_back(t1);
            traj.states.push_back(state);
        }
    }
    return traj;
}

Trajectory simulate_fixed_topology(const AgentEnsemble& initial, const Topology& topology, double dt, double t_end,
                                   std::size_t sample_every)
{
    if (sample_every < 1)
        throw std::invalid_argument("sample_every must be at least 1");
    if (topology.n != initial.size())
        throw std::invalid_argument("simulate_fixed_topology: topology size does not match the ensemble");
    const TimeGrid grid(dt, t_end);

    Trajectory traj;
    traj.switch_log.initial_hash = topology.hash;
    traj.switch_log.initial_connectivity = strongly_connected_components(topology).kind();
    traj.switch_log.t_end = t_end;
    traj.times.push_back(0.0);
    traj.states.push_back(initial);

    AgentEnsemble state = initial;
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t1 = grid.time(k + 1);
        state = step(state, topology, t1 - grid.time(k));
        require_finite(state, t1);
        if ((k + 1) % sample_every == 0 || k + 1 == grid.steps) {
            traj.times.push_back(t1);
            traj.states.push_back(state);
        }
    }
    return traj;
}

} // namespace tcs
