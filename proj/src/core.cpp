#include "tcs/core.hpp"

#include "rank_row.hpp"
#include "tcs/kernels.hpp"

#include <stdexcept>

namespace tcs {

namespace {

void check_index(const AgentEnsemble& ensemble, std::size_t i)
{
    if (i >= ensemble.size())
        throw std::out_of_range("agent index out of range");
}

} // namespace

std::vector<double> Topology::laplacian() const
{
    std::vector<double> lap(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double degree = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            lap[i * n + j] = -weights[i * n + j];
            degree += weights[i * n + j];
        }
        lap[i * n + i] = degree;
    }
    return lap;
}

std::size_t relative_separation(const AgentEnsemble& ensemble, std::size_t i, std::size_t j)
{
    check_index(ensemble, i);
    check_index(ensemble, j);
    const double dij = distance(ensemble.position(i), ensemble.position(j));
    std::size_t count = 0;
    for (std::size_t k = 0; k < ensemble.size(); ++k)
        if (distance(ensemble.position(i), ensemble.position(k)) < dij)
            ++count;
    return count;
}

double normalized_separation(const AgentEnsemble& ensemble, std::size_t i, std::size_t j)
{
    return static_cast<double>(relative_separation(ensemble, i, j)) / static_cast<double>(ensemble.size());
}

std::vector<std::uint32_t> rank_all(const AgentEnsemble& ensemble, std::size_t i)
{
    check_index(ensemble, i);
    const std::size_t n = ensemble.size();
    std::vector<std::uint32_t> row(n);
    std::vector<kernels::detail::RankKey> keys;
    kernels::detail::rank_row(ensemble.positions(), ensemble.velocities(), n, ensemble.dim(), i, keys, row);
    return row;
}

std::vector<std::uint32_t> rank_table(const AgentEnsemble& ensemble)
{
    const std::size_t n = ensemble.size();
    std::vector<std::uint32_t> table(n * n);
    kernels::parallel::rank_table(ensemble.positions(), ensemble.velocities(), n, ensemble.dim(), table);
    return table;
}

std::uint64_t fingerprint(std::span<const std::uint32_t> rank_table)
{
    std::uint64_t hash = 14695981039346656037ULL;
    for (std::uint32_t value : rank_table) {
        for (int byte = 0; byte < 4; ++byte) {
            hash ^= (value >> (8 * byte)) & 0xFFu;
            hash *= 1099511628211ULL;
        }
    }
    return hash;
}

Topology topology_from_ranks(std::vector<std::uint32_t> ranks, std::size_t n, const WeightFunction& weights)
{
    if (weights.mode() == WeightMode::metric)
        throw std::invalid_argument("topology_from_ranks: metric weights need positions");
    if (ranks.size() != n * n)
        throw std::invalid_argument("topology_from_ranks: rank table has the wrong size");
    const double normalizer = weights.row_normalizer(n);
    if (!(normalizer > 0.0))
        throw std::invalid_argument("communication_matrix: row normalizer gamma_N is zero");

    std::vector<double> table(n);
    for (std::size_t r = 0; r < n; ++r)
        table[r] = weights.rank_weight(r, n) / normalizer;

    Topology topo;
    topo.n = n;
    topo.hash = fingerprint(ranks);
    topo.weights.resize(n * n);
    for (std::size_t idx = 0; idx < n * n; ++idx)
        topo.weights[idx] = table[ranks[idx]];
    topo.rank_table = std::move(ranks);
    return topo;
}

Topology communication_matrix(const AgentEnsemble& ensemble, const WeightFunction& weights)
{
    const std::size_t n = ensemble.size();
    auto ranks = rank_table(ensemble);
    if (weights.mode() != WeightMode::metric)
        return topology_from_ranks(std::move(ranks), n, weights);

    const auto& rate = weights.as_metric();
    Topology topo;
    topo.n = n;
    topo.hash = fingerprint(ranks);
    topo.rank_table = std::move(ranks);
    topo.weights.assign(n * n, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                topo.weights[i * n + j] = rate(distance(ensemble.position(i), ensemble.position(j))) * inv_n;
    return topo;
}

} // namespace tcs
