#include "support.hpp"
#include "tcs/diagnostics.hpp"
#include "tcs/meanfield.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace tcs;
using namespace tcs::meanfield;
using tcs::testing::random_ensemble;

namespace {

EmpiricalMeasure random_measure(std::size_t n, std::size_t dim, Rng& rng)
{
    return EmpiricalMeasure::uniform(random_ensemble(n, dim, rng));
}

double brute_assignment_cost(const std::vector<double>& cost, std::size_t n)
{
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = INFINITY;
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            total += cost[i * n + perm[i]];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

TEST(Measure, Validation)
{
    EXPECT_THROW(EmpiricalMeasure(1, {0.0, 1.0}, {0.0, 0.0}, {0.5, 0.4}), std::invalid_argument);
    EXPECT_THROW(EmpiricalMeasure(1, {0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(EmpiricalMeasure(4, {0, 0, 0, 0}, {0, 0, 0, 0}, {1.0}), std::invalid_argument);
    EXPECT_THROW(EmpiricalMeasure(1, {0.0}, {0.0, 1.0}, {1.0}), std::invalid_argument);
    const EmpiricalMeasure ok(1, {0.0, 1.0}, {0.0, 0.0}, {0.25, 0.75});
    EXPECT_DOUBLE_EQ(ok.total_mass(), 1.0);
    EXPECT_THROW(Mollifier(0.0), std::invalid_argument);
}

TEST(Mollifier, Ramp)
{
    const Mollifier psi(0.5);
    EXPECT_EQ(psi(-0.5), 0.0);
    EXPECT_EQ(psi(-1.0), 0.0);
    EXPECT_DOUBLE_EQ(psi(-0.25), 0.5);
    EXPECT_EQ(psi(0.0), 1.0);
    EXPECT_EQ(psi(3.0), 1.0);
    EXPECT_DOUBLE_EQ(psi.lipschitz(), 2.0);
}

TEST(Separation, SharpMatchesDiscreteCount)
{
    const EmpiricalMeasure m(1, {0.0, 1.0, 3.0, 3.0}, {0, 0, 0, 0}, {0.25, 0.25, 0.25, 0.25});
    const std::vector<double> x{0.0};
    EXPECT_DOUBLE_EQ(sharp_separation(m, x, std::vector<double>{1.0}), 0.25);
    EXPECT_DOUBLE_EQ(sharp_separation(m, x, std::vector<double>{3.0}), 0.5);
    EXPECT_DOUBLE_EQ(sharp_separation(m, x, std::vector<double>{0.0}), 0.0);
    EXPECT_THROW(sharp_separation(m, x, std::vector<double>{0.0, 1.0}), std::invalid_argument);
}

TEST(Separation, SmoothedTendsToNonStrictCount)
{
    Rng rng(13);
    const auto m = random_measure(30, 2, rng);
    for (std::size_t i = 0; i < 30; i += 3)
        for (std::size_t j = 0; j < 30; j += 5) {
            // non-strict count: the strict one plus the mass at the same distance (here just y itself)
            const double expected = sharp_separation(m, m.position(i), m.position(j)) + 1.0 / 30;
            EXPECT_NEAR(smoothed_separation(m, Mollifier(1e-12), m.position(i), m.position(j)), expected, 1e-12);
        }
}

TEST(Separation, SmoothedIsLipschitzInBothArguments)
{
    Rng rng(14);
    const auto m = random_measure(50, 2, rng);
    const Mollifier psi(0.1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        std::vector<double> y{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        std::vector<double> y2 = y;
        std::vector<double> x2 = x;
        y2[0] += uniform(rng, -0.05, 0.05);
        x2[1] += uniform(rng, -0.05, 0.05);
        const double base = smoothed_separation(m, psi, x, y);
        EXPECT_LE(std::abs(smoothed_separation(m, psi, x, y2) - base), psi.lipschitz() * distance(y, y2) + 1e-12);
        // moving x shifts both distances in the ramp argument
        EXPECT_LE(std::abs(smoothed_separation(m, psi, x2, y) - base), 2 * psi.lipschitz() * distance(x, x2) + 1e-12);
        EXPECT_GE(base, 0.0);
        EXPECT_LE(base, 1.0);
    }
}

TEST(KineticField, ConstantKernelGivesMeanVelocity)
{
    Rng rng(15);
    const auto m = random_measure(20, 3, rng);
    const auto kernel = NormalizedKernel::constant(2.0);
    const std::vector<double> x{0.1, 0.2, 0.3};
    const std::vector<double> v{1.0, -1.0, 0.5};
    std::vector<double> mean(3, 0.0);
    for (std::size_t k = 0; k < 20; ++k)
        for (std::size_t c = 0; c < 3; ++c)
            mean[c] += m.velocity(k)[c] / 20.0;
    for (const SeparationChoice& choice : {SeparationChoice{}, SeparationChoice{Mollifier(0.2)}}) {
        const auto avg = kinetic_average(m, choice, kernel, x);
        const auto field = kinetic_field(m, choice, kernel, x, v);
        for (std::size_t c = 0; c < 3; ++c) {
            EXPECT_NEAR(avg[c], mean[c], 1e-14);
            EXPECT_NEAR(field[c], mean[c] - v[c], 1e-14);
        }
    }
}

TEST(KineticField, FieldIsAverageMinusWeightedSelf)
{
    Rng rng(16);
    const auto m = random_measure(25, 2, rng);
    const auto kernel = NormalizedKernel::exponential(1.0, 0.5);
    const std::vector<double> x{0.3, -0.3};
    const std::vector<double> zero{0.0, 0.0};
    const std::vector<double> v{0.7, 0.2};
    const SeparationChoice choice = Mollifier(0.05);
    const auto avg = kinetic_average(m, choice, kernel, x);
    const auto at_rest = kinetic_field(m, choice, kernel, x, zero);
    const auto moving = kinetic_field(m, choice, kernel, x, v);
    for (std::size_t c = 0; c < 2; ++c)
        EXPECT_NEAR(avg[c], at_rest[c], 1e-15);
    // the field is affine in v with slope -(sum of weights)
    double weight = 0.0;
    for (std::size_t k = 0; k < 25; ++k)
        weight += m.mass(k) * kernel(smoothed_separation(m, *choice, x, m.position(k))) / kernel.gamma();
    for (std::size_t c = 0; c < 2; ++c)
        EXPECT_NEAR(moving[c], at_rest[c] - weight * v[c], 1e-14);
}

TEST(Assignment, MatchesBruteForceOnEightPoints)
{
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial % 8;
        std::vector<double> cost(n * n);
        for (double& value : cost)
            value = std::floor(uniform(rng, 0.0, 10.0));
        const auto assignment = solve_assignment(cost, n);
        std::vector<bool> used(n, false);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_LT(assignment[i], n);
            EXPECT_FALSE(used[assignment[i]]);
            used[assignment[i]] = true;
            total += cost[i * n + assignment[i]];
        }
        EXPECT_NEAR(total, brute_assignment_cost(cost, n), 1e-12);
    }
}

TEST(Wasserstein, MetricAxioms)
{
    Rng rng(18);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_measure(12, 2, rng);
        const auto g = random_measure(12, 2, rng);
        const auto h = random_measure(12, 2, rng);
        const double fg = wasserstein1(f, g);
        EXPECT_NEAR(wasserstein1(f, f), 0.0, 1e-15);
        EXPECT_NEAR(fg, wasserstein1(g, f), 1e-12);
        EXPECT_GT(fg, 0.0);
        EXPECT_LE(fg, wasserstein1(f, h) + wasserstein1(h, g) + 1e-12);
    }
}

TEST(Wasserstein, PermutationAndTranslation)
{
    Rng rng(19);
    const auto e = random_ensemble(10, 1, rng);
    auto shuffled = e;
    std::reverse(shuffled.positions().begin(), shuffled.positions().end());
    std::reverse(shuffled.velocities().begin(), shuffled.velocities().end());
    EXPECT_NEAR(wasserstein1(EmpiricalMeasure::uniform(e), EmpiricalMeasure::uniform(shuffled)), 0.0, 1e-15);
    auto moved = e;
    for (double& value : moved.positions())
        value += 0.3;
    EXPECT_NEAR(wasserstein1(EmpiricalMeasure::uniform(e), EmpiricalMeasure::uniform(moved)), 0.3, 1e-12);
}

TEST(Wasserstein, LineShortcutAgreesWithAssignment)
{
    Rng rng(20);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(15), b(15);
        for (double& value : a)
            value = uniform(rng, -1, 1);
        for (double& value : b)
            value = uniform(rng, -2, 1);
        const EmpiricalMeasure fa(1, a, std::vector<double>(15, 0.0), std::vector<double>(15, 1.0 / 15));
        const EmpiricalMeasure fb(1, b, std::vector<double>(15, 0.0), std::vector<double>(15, 1.0 / 15));
        EXPECT_NEAR(wasserstein1_line(a, b), wasserstein1(fa, fb), 1e-12);
    }
}

TEST(Wasserstein, RejectsUnsupportedInputs)
{
    const EmpiricalMeasure a(1, {0.0, 1.0}, {0.0, 0.0}, {0.5, 0.5});
    const EmpiricalMeasure b(1, {0.0, 1.0, 2.0}, {0.0, 0.0, 0.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    const EmpiricalMeasure c(1, {0.0, 1.0}, {0.0, 0.0}, {0.25, 0.75});
    EXPECT_THROW(wasserstein1(a, b), std::invalid_argument);
    EXPECT_THROW(wasserstein1(a, c), std::invalid_argument);
    EXPECT_THROW(wasserstein1_line(std::vector<double>{1.0}, std::vector<double>{}), std::invalid_argument);
}

TEST(Particles, AccelerationIsKineticField)
{
    Rng rng(21);
    const auto e = random_ensemble(30, 2, rng);
    const auto kernel = NormalizedKernel::exponential(1.0, 0.5);
    const double dt = 1e-6;
    for (const SeparationChoice& choice : {SeparationChoice{}, SeparationChoice{default_mollifier(e)}}) {
        const auto traj = simulate_meanfield_particles(e, kernel, choice, dt, dt);
        const auto measure = EmpiricalMeasure::uniform(e);
        for (std::size_t i = 0; i < 30; ++i) {
            const auto field = kinetic_field(measure, choice, kernel, e.position(i), e.velocity(i));
            for (std::size_t c = 0; c < 2; ++c)
                EXPECT_NEAR((traj.states.back().velocity(i)[c] - e.velocity(i)[c]) / dt, field[c], 1e-5);
        }
    }
}

TEST(Particles, MaxSpeedNonincreasingAndFlockStaysFlock)
{
    Rng rng(22);
    const auto e = random_ensemble(40, 2, rng);
    const auto kernel = NormalizedKernel::affine(0.5, 1.0);
    const auto traj = simulate_meanfield_particles(e, kernel, default_mollifier(e), 0.01, 3.0, 10);
    EXPECT_TRUE(check_omega_monotone(compute_series(traj)).holds);
    EXPECT_TRUE(check_hull_contraction(traj).holds);

    auto flock = e;
    for (double& value : flock.velocities())
        value = 0.4;
    const auto still = simulate_meanfield_particles(flock, kernel, std::nullopt, 0.01, 1.0);
    EXPECT_EQ(still.states.back().velocities(), flock.velocities());
    EXPECT_THROW(simulate_meanfield_particles(tcs::testing::line({0.0}), kernel, std::nullopt, 0.1, 1.0),
                 std::invalid_argument);
}

TEST(Sampling, NestedPrefixes)
{
    Rng a(stream_seed(5, 1));
    Rng b(stream_seed(5, 1));
    const auto small = sample_uniform_cloud(10, 2, a);
    const auto large = sample_uniform_cloud(20, 2, b);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(small.position(i)[0], large.position(i)[0]);
        EXPECT_EQ(small.velocity(i)[1], large.velocity(i)[1]);
    }
    for (double value : large.positions()) {
        EXPECT_GE(value, 0.0);
        EXPECT_LT(value, 1.0);
    }
    EXPECT_DOUBLE_EQ(default_mollifier(tcs::testing::line({0.0, 0.0})).epsilon, 0.05);
    EXPECT_DOUBLE_EQ(default_mollifier(tcs::testing::line({0.0, 2.0})).epsilon, 0.1);
}
