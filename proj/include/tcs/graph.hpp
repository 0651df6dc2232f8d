#pragma once

#include "tcs/core.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace tcs {

enum class Connectivity { strong, weak, disconnected };

std::string_view to_string(Connectivity c);

struct ConnectivityReport {
    /// Strongly connected components in reverse topological order of the
    /// condensation (components without outgoing edges first).
    std::vector<std::vector<std::size_t>> scc_list;
    bool is_strong = false;
    bool is_weak = false;

    Connectivity kind() const
    {
        return is_strong ? Connectivity::strong : (is_weak ? Connectivity::weak : Connectivity::disconnected);
    }
};

/// SCC decomposition of the digraph with an edge i -> j iff w_ij > 0, i != j.
ConnectivityReport strongly_connected_components(std::size_t n, std::span<const double> weights);
ConnectivityReport strongly_connected_components(const Topology& topology);

struct ConsensusCertificate {
    std::vector<double> xi;           ///< nonnegative, sums to one
    std::size_t kernel_dimension = 0; ///< dim ker(L^T)
    double residual = 0.0;            ///< max_j |(xi^T L)_j|
    bool valid = false;               ///< strongly connected with xi > 0
};

/// Left null vector of the Laplacian by lazy power iteration on the stochastic
/// matrix I - L/mu, with a dense full-pivot LU kernel as fallback.
ConsensusCertificate left_null_vector(const Topology& topology);

/// Consensus velocity sum_i xi_i v_i(0) / sum_i xi_i of a fixed topology.
/// Throws std::invalid_argument when the certificate is not valid.
std::vector<double> predict_consensus(const ConsensusCertificate& certificate, std::span<const double> velocities,
                                      std::size_t dim);

} // namespace tcs
