#include "support.hpp"
#include "tcs/examples.hpp"
#include "tcs/graph.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace tcs;
using tcs::testing::line;
using tcs::testing::random_ensemble;

namespace {

// Warshall closure: i and j share a component iff each reaches the other.
std::set<std::set<std::size_t>> closure_components(std::size_t n, const std::vector<double>& w)
{
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && w[i * n + j] > 0.0)
                reach[i][j] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j])
                    reach[i][j] = true;
    std::set<std::set<std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::set<std::size_t> comp;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j] && reach[j][i])
                comp.insert(j);
        out.insert(comp);
    }
    return out;
}

bool weakly_connected(std::size_t n, const std::vector<double>& w)
{
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j)
            if (!seen[j] && (w[i * n + j] > 0.0 || w[j * n + i] > 0.0)) {
                seen[j] = true;
                stack.push_back(j);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

Topology from_weights(std::size_t n, std::vector<double> w)
{
    Topology t;
    t.n = n;
    t.weights = std::move(w);
    return t;
}

} // namespace

TEST(Scc, MatchesTransitiveClosureOnRandomDigraphs)
{
    Rng rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const double density = 0.1 + 0.8 * uniform01(rng);
        std::vector<double> w(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && uniform01(rng) < density)
                    w[i * n + j] = uniform01(rng) + 0.01;
        const auto report = strongly_connected_components(n, w);
        std::set<std::set<std::size_t>> got;
        std::size_t members = 0;
        for (const auto& comp : report.scc_list) {
            got.insert(std::set<std::size_t>(comp.begin(), comp.end()));
            members += comp.size();
        }
        EXPECT_EQ(members, n);
        const auto expected = closure_components(n, w);
        EXPECT_EQ(got, expected);
        EXPECT_EQ(report.is_strong, expected.size() == 1);
        EXPECT_EQ(report.is_weak, weakly_connected(n, w));
    }
}

TEST(Scc, ReverseTopologicalOrder)
{
    // 0 -> 1 -> 2, no edges back
    const std::vector<double> w{0, 1, 0, 0, 0, 1, 0, 0, 0};
    const auto report = strongly_connected_components(3, w);
    ASSERT_EQ(report.scc_list.size(), 3u);
    EXPECT_EQ(report.scc_list[0], std::vector<std::size_t>{2});
    EXPECT_EQ(report.scc_list[2], std::vector<std::size_t>{0});
    EXPECT_EQ(report.kind(), Connectivity::weak);
}

TEST(Scc, DisconnectedAndDiagonalIgnored)
{
    const std::vector<double> w{5, 0, 0, 5};
    const auto report = strongly_connected_components(2, w);
    EXPECT_EQ(report.kind(), Connectivity::disconnected);
    EXPECT_THROW(strongly_connected_components(3, w), std::invalid_argument);
    EXPECT_EQ(to_string(Connectivity::strong), "strong");
}

TEST(Scc, Example3OutlierIsUnreachable)
{
    for (std::size_t n : {4u, 10u, 30u}) {
        const auto s = examples::scenario_example3(n);
        const auto topo = communication_matrix(s.ensemble, s.weights);
        const auto report = strongly_connected_components(topo);
        EXPECT_FALSE(report.is_strong);
        EXPECT_TRUE(report.is_weak);
        for (std::size_t i = 0; i + 1 < n; ++i)
            EXPECT_EQ(topo.weight(i, n - 1), 0.0);
        // the outlier forms its own component
        bool alone = false;
        for (const auto& comp : report.scc_list)
            alone = alone || comp == std::vector<std::size_t>{n - 1};
        EXPECT_TRUE(alone);
        EXPECT_FALSE(left_null_vector(topo).valid);
    }
}

TEST(Scc, Example2StartsStronglyConnected)
{
    const auto s = examples::scenario_example2();
    EXPECT_TRUE(strongly_connected_components(communication_matrix(s.ensemble, s.weights)).is_strong);
}

TEST(Scc, Example2CompressedTripletsSplit)
{
    // outer triplets squeezed so that x3 - x1 < x1: agents +-1 only look outward
    const auto e = line({-5.0, -4.5, -4.0, 0.0, 4.0, 4.5, 5.0});
    const auto topo = communication_matrix(e, examples::scenario_example2().weights);
    const auto report = strongly_connected_components(topo);
    EXPECT_EQ(report.scc_list.size(), 3u);
    EXPECT_EQ(report.kind(), Connectivity::weak);
    std::set<std::set<std::size_t>> got;
    for (const auto& comp : report.scc_list)
        got.insert(std::set<std::size_t>(comp.begin(), comp.end()));
    EXPECT_EQ(got, (std::set<std::set<std::size_t>>{{0, 1, 2}, {3}, {4, 5, 6}}));
}

TEST(LeftNullVector, TwoAgents)
{
    const auto cert = left_null_vector(from_weights(2, {0.0, 0.3, 0.1, 0.0}));
    ASSERT_TRUE(cert.valid);
    EXPECT_NEAR(cert.xi[0], 0.25, 1e-12);
    EXPECT_NEAR(cert.xi[1], 0.75, 1e-12);
    EXPECT_EQ(cert.kernel_dimension, 1u);
}

TEST(LeftNullVector, BalancedDigraphGivesUniformVector)
{
    // directed cycle with equal weights: in-degree equals out-degree
    const std::size_t n = 5;
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        w[i * n + (i + 1) % n] = 0.7;
    const auto cert = left_null_vector(from_weights(n, w));
    ASSERT_TRUE(cert.valid);
    for (double value : cert.xi)
        EXPECT_NEAR(value, 0.2, 1e-12);
}

TEST(LeftNullVector, AgreesWithDenseKernelOracle)
{
    Rng rng(31);
    int valid = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 12;
        const auto e = random_ensemble(n, 2, rng);
        std::vector<double> g(n, 0.0);
        for (std::size_t k = 1; k < n; ++k)
            g[k] = uniform01(rng) < 0.5 ? uniform01(rng) : 0.0;
        g[1] += 0.2;
        g[n - 1] += 0.05;
        const auto topo = communication_matrix(e, WeightFunction::discrete(g));
        const auto cert = left_null_vector(topo);
        const auto strong = strongly_connected_components(topo).is_strong;
        EXPECT_EQ(cert.valid, strong);
        EXPECT_LE(cert.residual, 1e-10);
        if (!strong)
            continue;
        ++valid;
        const auto lap = topo.laplacian();
        Eigen::MatrixXd lt(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                lt(j, i) = lap[i * n + j];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(lt, Eigen::ComputeFullV);
        Eigen::VectorXd oracle = svd.matrixV().col(n - 1);
        oracle /= oracle.sum();
        EXPECT_EQ(cert.kernel_dimension, 1u);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_GT(cert.xi[i], 0.0);
            EXPECT_NEAR(cert.xi[i], oracle(i), 1e-8);
        }
        EXPECT_NEAR(std::accumulate(cert.xi.begin(), cert.xi.end(), 0.0), 1.0, 1e-12);
    }
    EXPECT_GT(valid, 20);
}

TEST(LeftNullVector, KernelDimensionCountsClosedComponents)
{
    // two disjoint 2-cycles
    std::vector<double> w(16, 0.0);
    w[0 * 4 + 1] = w[1 * 4 + 0] = 1.0;
    w[2 * 4 + 3] = w[3 * 4 + 2] = 1.0;
    const auto cert = left_null_vector(from_weights(4, w));
    EXPECT_EQ(cert.kernel_dimension, 2u);
    EXPECT_FALSE(cert.valid);
}

TEST(PredictConsensus, WeightedAverage)
{
    ConsensusCertificate cert;
    cert.xi = {0.25, 0.75};
    cert.kernel_dimension = 1;
    cert.valid = true;
    const auto v = predict_consensus(cert, std::vector<double>{4.0, 0.0, 0.0, 8.0}, 2);
    EXPECT_DOUBLE_EQ(v[0], 1.0);
    EXPECT_DOUBLE_EQ(v[1], 6.0);
    cert.valid = false;
    EXPECT_THROW(predict_consensus(cert, std::vector<double>{1.0, 2.0}, 1), std::invalid_argument);
}
