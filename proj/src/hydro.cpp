#include "tcs/hydro.hpp"

#include "rank_row.hpp"
#include "tcs/ensemble.hpp"
#include "tcs/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tcs::hydro {

void HydroState::validate() const
{
    if (masses.empty())
        throw std::invalid_argument("HydroState: needs at least one particle");
    if (X.size() != masses.size() || U.size() != masses.size())
        throw std::invalid_argument("HydroState: masses, positions and velocities differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        if (!(masses[i] > 0.0))
            throw std::invalid_argument("HydroState: masses must be positive");
        if (!std::isfinite(X[i]) || !std::isfinite(U[i]))
            throw std::invalid_argument("HydroState: non-finite coordinate");
        total += masses[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("HydroState: masses must sum to 1");
    if (g0 && !(*g0 > 0.0))
        throw std::invalid_argument("HydroState: g0 must be positive");
}

HydroState uniform_state(std::vector<double> X, std::vector<double> U)
{
    const std::size_t n = X.size();
    HydroState state{std::vector<double>(n, 1.0 / static_cast<double>(n)), std::move(X), std::move(U), {}};
    state.validate();
    return state;
}

namespace {

void separation_row(const HydroState& state, std::size_t i, std::vector<kernels::detail::RankKey>& keys,
                    std::vector<std::uint32_t>& ranks, std::vector<double>& by_rank, double* out)
{
    const std::size_t n = state.size();
    kernels::detail::rank_row(state.X, state.U, n, 1, i, keys, ranks);
    by_rank.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        by_rank[ranks[k]] = state.masses[k];
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double m = by_rank[r];
        by_rank[r] = acc;
        acc += m;
    }
    for (std::size_t j = 0; j < n; ++j)
        out[j] = by_rank[ranks[j]];
}

} // namespace

double mass_rank_separation(const HydroState& state, std::size_t i, std::size_t j)
{
    const std::size_t n = state.size();
    if (i >= n || j >= n)
        throw std::out_of_range("mass_rank_separation: index out of range");
    std::vector<kernels::detail::RankKey> keys;
    std::vector<std::uint32_t> ranks(n);
    std::vector<double> by_rank;
    std::vector<double> row(n);
    separation_row(state, i, keys, ranks, by_rank, row.data());
    return row[j];
}

std::vector<double> mass_rank_table(const HydroState& state)
{
    const std::size_t n = state.size();
    std::vector<double> table(n * n);
    std::vector<kernels::detail::RankKey> keys;
    std::vector<std::uint32_t> ranks(n);
    std::vector<double> by_rank;
    for (std::size_t i = 0; i < n; ++i)
        separation_row(state, i, keys, ranks, by_rank, table.data() + i * n);
    return table;
}

namespace {

// Row-major w_ij = g(sep_ij) m_j / gamma.
std::vector<double> average_weights(const HydroState& state, const NormalizedKernel& kernel)
{
    const double gamma = kernel.gamma();
    if (!(gamma > 0.0))
        throw std::invalid_argument("local_average: kernel integral must be positive");
    const std::size_t n = state.size();
    auto table = mass_rank_table(state);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i * n + j] = kernel(std::min(table[i * n + j], 1.0)) * state.masses[j] / gamma;
    return table;
}

void apply_average(const std::vector<double>& weights, std::span<const double> u, std::span<double> out)
{
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += weights[i * n + j] * u[j];
        out[i] = acc;
    }
}

} // namespace

std::vector<double> local_average(const HydroState& state, const NormalizedKernel& kernel)
{
    state.validate();
    const auto weights = average_weights(state, kernel);
    std::vector<double> out(state.size());
    apply_average(weights, state.U, out);
    return out;
}

std::vector<HydroSample> simulate_hydro(const HydroState& initial, const NormalizedKernel& kernel, double dt,
                                        double t_end, std::size_t sample_every)
{
    initial.validate();
    if (sample_every < 1)
        throw std::invalid_argument("sample_every must be at least 1");
    const TimeGrid grid(dt, t_end);

    std::vector<HydroSample> samples{{0.0, initial}};
    HydroState state = initial;
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t1 = grid.time(k + 1);
        const auto weights = average_weights(state, kernel);
        const AgentEnsemble current(1, state.X, state.U);
        const AgentEnsemble next =
            rk4_step(current, t1 - grid.time(k), [&](std::span<const double>, std::span<const double> u,
                                                     std::span<double> out) {
                apply_average(weights, u, out);
                for (std::size_t i = 0; i < u.size(); ++i)
                    out[i] -= u[i];
            });
        if (!next.all_finite())
            throw SimulationError("hydro simulation produced a non-finite value at t = " + std::to_string(t1));
        state.X = next.positions();
        state.U = next.velocities();
        if ((k + 1) % sample_every == 0 || k + 1 == grid.steps)
            samples.push_back({t1, state});
    }
    return samples;
}

namespace {

double spread(const std::vector<double>& values)
{
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

} // namespace

Prop2Report prop2_check(const std::vector<HydroSample>& samples, double g0, double slack)
{
    if (!(g0 > 0.0))
        throw std::invalid_argument("prop2_check: g0 must be positive");
    Prop2Report report;
    if (samples.empty())
        return report;
    const double du0 = spread(samples.front().state.U);
    double scale = 0.0;
    for (double u : samples.front().state.U)
        scale = std::max(scale, std::abs(u));
    // consensus data only drifts apart by rounding in the row sums
    const double rounding_floor = 1e-12 * (1.0 + scale);
    for (const auto& sample : samples) {
        const double dx = spread(sample.state.X);
        const double du = spread(sample.state.U);
        report.times.push_back(sample.time);
        report.d_x.push_back(dx);
        report.d_u.push_back(du);
        if (!std::isfinite(dx)) {
            report.holds = false;
            report.sup_d_x = dx;
            continue;
        }
        report.sup_d_x = std::max(report.sup_d_x, dx);
        const double envelope = du0 * std::exp(-g0 * g0 * sample.time);
        if (du0 > 0.0)
            report.worst_ratio = std::max(report.worst_ratio, du / envelope);
        if (du > slack * envelope + rounding_floor)
            report.holds = false;
    }
    return report;
}

} // namespace tcs::hydro
