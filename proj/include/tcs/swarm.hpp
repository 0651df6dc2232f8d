#pragma once

// Self-propelled particles with Morse repulsion and rank-based attraction.

#include "tcs/dynamics.hpp"
#include "tcs/ensemble.hpp"
#include "tcs/rng.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tcs::swarm {

struct SwarmParams {
    double a = 1.0;   ///< self-propulsion
    double b = 0.5;   ///< friction
    double C_R = 1.0; ///< repulsion strength
    double l_R = 0.5; ///< repulsion length
    double C_A = 1.0; ///< attraction strength
    double l_A = 0.1; ///< attraction length

    void validate() const;

    /// g_A(s) = (C_A / l_A) exp(-s / l_A).
    double attraction(double s) const;
    /// Asymptotic speed sqrt(a/b) of an isolated agent.
    double cruise_speed() const;
};

/// U(r) = -C_A exp(-r/l_A) + C_R exp(-r/l_R).
double morse_potential(double r, const SwarmParams& params);

/// U_R(r) = C_R exp(-r/l_R).
double repulsion_potential(double r, const SwarmParams& params);

/// -grad_{x_i} U_R(|x_i - x_j|); zero when the points coincide.
std::vector<double> repulsion_force(std::span<const double> xi, std::span<const double> xj,
                                    const SwarmParams& params);

/// Row-major n*n table g_A(rank_ij / N).
std::vector<double> attraction_table(const AgentEnsemble& ensemble, const SwarmParams& params);

/// x' = v, v_i' = (a - b|v_i|^2) v_i + (1/N) sum_{j != i} [U_R'-force - g_A(alpha_ij)] e_ij.
Derivative rhs_swarm(const AgentEnsemble& ensemble, const SwarmParams& params);

/// N agents uniform in the unit box [0,1]^dim with zero velocities.
AgentEnsemble random_initial(std::size_t n, std::size_t dim, Rng& rng);

/// RK4 with the attraction ranks refreshed at the start of every step.
Trajectory simulate_swarm(const AgentEnsemble& initial, const SwarmParams& params, double dt, double t_end,
                          std::size_t sample_every = 1);

/// Seeded run from random_initial.
Trajectory simulate_swarm(std::size_t n, const SwarmParams& params, double dt, double t_end, std::uint64_t seed,
                          std::size_t sample_every = 1);

struct PatternSeries {
    std::vector<double> times;
    std::vector<double> polarization;     ///< |sum v_i| / sum |v_i|, 0 when all agents rest
    std::vector<double> angular_momentum; ///< sum (x_i - x_c) x v_i
    std::vector<std::size_t> clusters;    ///< single-linkage components
};

/// Number of single-linkage clusters at the given cutoff distance.
std::size_t cluster_count(const AgentEnsemble& state, double cutoff);

/// Pattern observables of a 2-D run; cutoff <= 0 selects 3 l_R.
PatternSeries pattern_metrics(const Trajectory& trajectory, const SwarmParams& params, double cutoff = 0.0);

/// Two-agent rest separation with a = b = 0: (C_R/l_R) exp(-r/l_R) = g_A(1/2).
/// Throws std::domain_error when attraction exceeds the repulsion at contact.
double pair_equilibrium_distance(const SwarmParams& params);

/// max(v0, sqrt((a + F_max)/b)) with F_max = C_R/l_R + C_A/l_A.
double speed_bound(const SwarmParams& params, double initial_max_speed);

} // namespace tcs::swarm
