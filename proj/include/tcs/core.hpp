#pragma once

#include "tcs/ensemble.hpp"
#include "tcs/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tcs {

/// Communication structure of one configuration: rank table, weight matrix
/// and the fingerprint identifying the configuration.
struct Topology {
    std::size_t n = 0;
    std::vector<std::uint32_t> rank_table; ///< n*n, row-major; row i is a permutation with 0 at i
    std::vector<double> weights;           ///< n*n, row-major
    std::uint64_t hash = 0;

    std::uint32_t rank(std::size_t i, std::size_t j) const { return rank_table[i * n + j]; }
    double weight(std::size_t i, std::size_t j) const { return weights[i * n + j]; }
    std::span<const double> row(std::size_t i) const { return {weights.data() + i * n, n}; }

    /// Dense graph Laplacian D - W over the off-diagonal weights (equal to
    /// I - G when the rows of G sum to one).
    std::vector<double> laplacian() const;
};

/// Number of agents strictly closer to agent i than agent j is.
std::size_t relative_separation(const AgentEnsemble& ensemble, std::size_t i, std::size_t j);

/// relative_separation / N.
double normalized_separation(const AgentEnsemble& ensemble, std::size_t i, std::size_t j);

/// Ranks of all agents as seen from agent i. Agents are ordered by distance
/// from i; equal distances are ordered by the rate at which the distance
/// changes (so a tie at a crossing instant resolves to the configuration that
/// follows it), then by index. Agent i always has rank 0.
std::vector<std::uint32_t> rank_all(const AgentEnsemble& ensemble, std::size_t i);

/// Full n*n rank table (OpenMP kernel).
std::vector<std::uint32_t> rank_table(const AgentEnsemble& ensemble);

/// FNV-1a fingerprint of a rank table.
std::uint64_t fingerprint(std::span<const std::uint32_t> rank_table);

/// Builds G from the current configuration. Topological modes give row i the
/// entries g(rank_ij) / (row normalizer), so every row sums to one; the metric
/// mode gives g(|x_i - x_j|)/N off the diagonal.
Topology communication_matrix(const AgentEnsemble& ensemble, const WeightFunction& weights);

/// Topology from a precomputed rank table (used when positions are not at hand).
Topology topology_from_ranks(std::vector<std::uint32_t> rank_table, std::size_t n, const WeightFunction& weights);

} // namespace tcs
