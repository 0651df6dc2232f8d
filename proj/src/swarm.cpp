#include "tcs/swarm.hpp"

#include "tcs/core.hpp"
#include "tcs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tcs::swarm {

void SwarmParams::validate() const
{
    if (!(a >= 0.0) || !(b >= 0.0))
        throw std::invalid_argument("SwarmParams: a and b must be nonnegative");
    if (!(C_R >= 0.0) || !(C_A >= 0.0))
        throw std::invalid_argument("SwarmParams: strengths must be nonnegative");
    if (!(l_R > 0.0) || !(l_A > 0.0))
        throw std::invalid_argument("SwarmParams: lengths must be positive");
}

double SwarmParams::attraction(double s) const
{
    return C_A / l_A * std::exp(-s / l_A);
}

double SwarmParams::cruise_speed() const
{
    if (!(b > 0.0))
        throw std::domain_error("cruise_speed: friction b must be positive");
    return std::sqrt(a / b);
}

double morse_potential(double r, const SwarmParams& params)
{
    return -params.C_A * std::exp(-r / params.l_A) + params.C_R * std::exp(-r / params.l_R);
}

double repulsion_potential(double r, const SwarmParams& params)
{
    return params.C_R * std::exp(-r / params.l_R);
}

std::vector<double> repulsion_force(std::span<const double> xi, std::span<const double> xj,
                                    const SwarmParams& params)
{
    if (xi.size() != xj.size())
        throw std::invalid_argument("repulsion_force: dimension mismatch");
    std::vector<double> force(xi.size(), 0.0);
    const double r = distance(xi, xj);
    if (r == 0.0)
        return force;
    const double magnitude = params.C_R / params.l_R * std::exp(-r / params.l_R);
    for (std::size_t c = 0; c < xi.size(); ++c)
        force[c] = magnitude * (xi[c] - xj[c]) / r;
    return force;
}

std::vector<double> attraction_table(const AgentEnsemble& ensemble, const SwarmParams& params)
{
    const std::size_t n = ensemble.size();
    const auto ranks = rank_table(ensemble);
    std::vector<double> table(n * n);
    for (std::size_t k = 0; k < n * n; ++k)
        table[k] = params.attraction(static_cast<double>(ranks[k]) / static_cast<double>(n));
    return table;
}

namespace {

kernels::SwarmCoefficients coefficients(const SwarmParams& params)
{
    return {params.a, params.b, params.C_R, params.l_R};
}

} // namespace

Derivative rhs_swarm(const AgentEnsemble& ensemble, const SwarmParams& params)
{
    params.validate();
    Derivative d;
    d.dx = ensemble.velocities();
    d.dv.assign(d.dx.size(), 0.0);
    const auto attraction = attraction_table(ensemble, params);
    kernels::parallel::swarm_acceleration(ensemble.positions(), ensemble.velocities(), attraction, ensemble.size(),
                                          ensemble.dim(), coefficients(params), d.dv);
    return d;
}

AgentEnsemble random_initial(std::size_t n, std::size_t dim, Rng& rng)
{
    if (n < 1)
        throw std::invalid_argument("random_initial: n must be positive");
    std::vector<double> x(n * dim);
    for (double& value : x)
        value = uniform01(rng);
    return AgentEnsemble(dim, std::move(x), std::vector<double>(n * dim, 0.0));
}

Trajectory simulate_swarm(const AgentEnsemble& initial, const SwarmParams& params, double dt, double t_end,
                          std::size_t sample_every)
{
    params.validate();
    if (sample_every < 1)
        throw std::invalid_argument("sample_every must be at least 1");
    const TimeGrid grid(dt, t_end);
    const std::size_t n = initial.size();
    const std::size_t dim = initial.dim();
    const auto coeff = coefficients(params);

    Trajectory traj;
    traj.switch_log.t_end = t_end;
    traj.switch_log.initial_hash = fingerprint(rank_table(initial));
    traj.times.push_back(0.0);
    traj.states.push_back(initial);
    AgentEnsemble state = initial;
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t1 = grid.time(k + 1);
        const auto attraction = attraction_table(state, params);
        state = rk4_step(state, t1 - grid.time(k),
                         [&](std::span<const double> x, std::span<const double> v, std::span<double> out) {
                             kernels::parallel::swarm_acceleration(x, v, attraction, n, dim, coeff, out);
                         });
        if (!state.all_finite())
            throw SimulationError("swarm simulation produced a non-finite coordinate at t = " + std::to_string(t1));
        if ((k + 1) % sample_every == 0 || k + 1 == grid.steps) {
            traj.times.push_back(t1);
            traj.states.push_back(state);
        }
    }
    return traj;
}

Trajectory simulate_swarm(std::size_t n, const SwarmParams& params, double dt, double t_end, std::uint64_t seed,
                          std::size_t sample_every)
{
    Rng rng(seed);
    return simulate_swarm(random_initial(n, 2, rng), params, dt, t_end, sample_every);
}

std::size_t cluster_count(const AgentEnsemble& state, double cutoff)
{
    const std::size_t n = state.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    };
    std::size_t components = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (distance(state.position(i), state.position(j)) <= cutoff) {
                const std::size_t ri = find(i);
                const std::size_t rj = find(j);
                if (ri != rj) {
                    parent[ri] = rj;
                    --components;
                }
            }
    return components;
}

PatternSeries pattern_metrics(const Trajectory& trajectory, const SwarmParams& params, double cutoff)
{
    if (cutoff <= 0.0)
        cutoff = 3.0 * params.l_R;
    PatternSeries series;
    series.times = trajectory.times;
    for (const auto& state : trajectory.states) {
        if (state.dim() != 2)
            throw std::invalid_argument("pattern_metrics: needs a 2-D trajectory");
        const std::size_t n = state.size();
        double centre[2] = {0.0, 0.0};
        double total[2] = {0.0, 0.0};
        double speed_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < 2; ++c) {
                centre[c] += state.position(i)[c] / static_cast<double>(n);
                total[c] += state.velocity(i)[c];
            }
            speed_sum += norm(state.velocity(i));
        }
        double spin = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto x = state.position(i);
            const auto v = state.velocity(i);
            spin += (x[0] - centre[0]) * v[1] - (x[1] - centre[1]) * v[0];
        }
        series.polarization.push_back(speed_sum > 0.0 ? std::hypot(total[0], total[1]) / speed_sum : 0.0);
        series.angular_momentum.push_back(spin);
        series.clusters.push_back(cluster_count(state, cutoff));
    }
    return series;
}

double pair_equilibrium_distance(const SwarmParams& params)
{
    params.validate();
    const double pull = params.attraction(0.5);
    const double contact = params.C_R / params.l_R;
    if (!(pull > 0.0) || !(pull < contact))
        throw std::domain_error("pair_equilibrium_distance: no balance point (attraction " + std::to_string(pull) +
                                ", repulsion at contact " + std::to_string(contact) + ")");
    return -params.l_R * std::log(pull / contact);
}

double speed_bound(const SwarmParams& params, double initial_max_speed)
{
    if (!(params.b > 0.0))
        throw std::domain_error("speed_bound: friction b must be positive");
    const double force = params.C_R / params.l_R + params.C_A / params.l_A;
    return std::max(initial_max_speed, std::sqrt((params.a + force) / params.b));
}

} // namespace tcs::swarm
