#include "tcs/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tcs {

std::string_view to_string(Connectivity c)
{
    switch (c) {
    case Connectivity::strong:
        return "strong";
    case Connectivity::weak:
        return "weak";
    case Connectivity::disconnected:
        return "disconnected";
    }
    return "unknown";
}

namespace {

constexpr std::size_t unvisited = static_cast<std::size_t>(-1);

// Iterative Tarjan over an adjacency list.
std::vector<std::vector<std::size_t>> tarjan(const std::vector<std::vector<std::size_t>>& adj)
{
    const std::size_t n = adj.size();
    std::vector<std::size_t> index(n, unvisited);
    std::vector<std::size_t> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> call; // (vertex, next edge)
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited)
            continue;
        call.emplace_back(root, 0);
        while (!call.empty()) {
            auto& [v, edge] = call.back();
            if (edge == 0 && index[v] == unvisited) {
                index[v] = lowlink[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (edge < adj[v].size()) {
                const std::size_t w = adj[v][edge++];
                if (index[w] == unvisited) {
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
                continue;
            }
            if (lowlink[v] == index[v]) {
                std::vector<std::size_t> component;
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != v);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
            const std::size_t finished = v;
            call.pop_back();
            if (!call.empty()) {
                const std::size_t parent = call.back().first;
                lowlink[parent] = std::min(lowlink[parent], lowlink[finished]);
            }
        }
    }
    return components;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v)
{
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

double residual_of(const std::vector<double>& xi, const std::vector<double>& lap, std::size_t n)
{
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            sum += xi[i] * lap[i * n + j];
        worst = std::max(worst, std::abs(sum));
    }
    return worst;
}

} // namespace

ConnectivityReport strongly_connected_components(std::size_t n, std::span<const double> weights)
{
    if (weights.size() != n * n)
        throw std::invalid_argument("strongly_connected_components: weight matrix has the wrong size");
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !(weights[i * n + j] > 0.0))
                continue;
            adj[i].push_back(j);
            parent[find_root(parent, i)] = find_root(parent, j);
        }
    }

    ConnectivityReport report;
    report.scc_list = tarjan(adj);
    report.is_strong = report.scc_list.size() == 1;
    std::size_t roots = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (find_root(parent, v) == v)
            ++roots;
    report.is_weak = roots == 1;
    return report;
}

ConnectivityReport strongly_connected_components(const Topology& topology)
{
    return strongly_connected_components(topology.n, topology.weights);
}

ConsensusCertificate left_null_vector(const Topology& topology)
{
    const std::size_t n = topology.n;
    const auto lap = topology.laplacian();
    const auto connectivity = strongly_connected_components(topology);

    Eigen::MatrixXd lt(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            lt(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = lap[i * n + j];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lt);
    lu.setThreshold(1e-10);

    ConsensusCertificate cert;
    cert.kernel_dimension = static_cast<std::size_t>(lu.dimensionOfKernel());

    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        mu = std::max(mu, lap[i * n + i]);
    mu *= 2.0;

    std::vector<double> xi(n, 1.0 / static_cast<double>(n));
    bool converged = mu == 0.0;
    if (!converged) {
        std::vector<double> next(n);
        for (int iter = 0; iter < 100000 && !converged; ++iter) {
            // next = xi (I - L/mu)
            for (std::size_t j = 0; j < n; ++j) {
                double sum = xi[j];
                for (std::size_t i = 0; i < n; ++i)
                    sum -= xi[i] * lap[i * n + j] / mu;
                next[j] = sum;
            }
            const double total = std::accumulate(next.begin(), next.end(), 0.0);
            for (std::size_t j = 0; j < n; ++j)
                next[j] /= total;
            xi.swap(next);
            converged = residual_of(xi, lap, n) <= 1e-13 * std::max(1.0, mu);
        }
    }

    if (!converged) {
        const Eigen::MatrixXd kernel = lu.kernel();
        Eigen::VectorXd basis = kernel.col(0);
        if (basis.sum() < 0.0)
            basis = -basis;
        const double total = basis.sum();
        for (std::size_t i = 0; i < n; ++i)
            xi[i] = total != 0.0 ? basis(static_cast<Eigen::Index>(i)) / total : basis(static_cast<Eigen::Index>(i));
    }

    cert.xi = std::move(xi);
    cert.residual = residual_of(cert.xi, lap, n);
    const bool positive = std::all_of(cert.xi.begin(), cert.xi.end(), [](double value) { return value > 0.0; });
    cert.valid = connectivity.is_strong && positive && cert.kernel_dimension == 1;
    return cert;
}

std::vector<double> predict_consensus(const ConsensusCertificate& certificate, std::span<const double> velocities,
                                      std::size_t dim)
{
    if (!certificate.valid)
        throw std::invalid_argument("predict_consensus: certificate is not valid (topology not strongly connected)");
    const std::size_t n = certificate.xi.size();
    if (velocities.size() != n * dim)
        throw std::invalid_argument("predict_consensus: velocity array does not match the certificate");
    std::vector<double> result(dim, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += certificate.xi[i];
        for (std::size_t c = 0; c < dim; ++c)
            result[c] += certificate.xi[i] * velocities[i * dim + c];
    }
    for (double& value : result)
        value /= total;
    return result;
}

} // namespace tcs
