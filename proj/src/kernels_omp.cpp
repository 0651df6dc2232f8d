#include "rank_row.hpp"
#include "tcs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace tcs::kernels::parallel {

void rank_table(std::span<const double> x, std::span<const double> v, std::size_t n, std::size_t dim,
                std::span<std::uint32_t> ranks)
{
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel if (n >= parallel_threshold)
    {
        std::vector<detail::RankKey> keys;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < rows; ++i)
            detail::rank_row(x, v, n, dim, static_cast<std::size_t>(i), keys,
                             ranks.subspan(static_cast<std::size_t>(i) * n, n));
    }
}

void consensus_rhs(std::span<const double> weights, std::span<const double> v, std::size_t n, std::size_t dim,
                   std::span<double> out)
{
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
        detail::consensus_row(weights, v, n, dim, static_cast<std::size_t>(i), out);
}

void swarm_acceleration(std::span<const double> x, std::span<const double> v, std::span<const double> attraction,
                        std::size_t n, std::size_t dim, const SwarmCoefficients& coeff, std::span<double> out)
{
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
        detail::swarm_row(x, v, attraction, n, dim, coeff, static_cast<std::size_t>(i), out);
}

namespace {

// Distances from agent i to every agent, sorted, with mass and mass*distance
// prefix sums (entry k holds the sum over the first k sorted agents).
struct SortedRow {
    std::vector<double> dist;
    std::vector<double> raw;
    std::vector<double> mass_prefix;
    std::vector<double> moment_prefix;
    std::vector<std::pair<double, double>> scratch;

    void build(std::span<const double> x, std::span<const double> masses, std::size_t n, std::size_t dim,
               std::size_t i)
    {
        raw.resize(n);
        scratch.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            double dd = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double diff = x[i * dim + c] - x[k * dim + c];
                dd += diff * diff;
            }
            raw[k] = std::sqrt(dd);
            scratch[k] = {raw[k], masses[k]};
        }
        std::sort(scratch.begin(), scratch.end());
        dist.resize(n);
        mass_prefix.assign(n + 1, 0.0);
        moment_prefix.assign(n + 1, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            dist[k] = scratch[k].first;
            mass_prefix[k + 1] = mass_prefix[k] + scratch[k].second;
            moment_prefix[k + 1] = moment_prefix[k] + scratch[k].second * scratch[k].first;
        }
    }
};

} // namespace

void mollified_separation_table(std::span<const double> x, std::span<const double> masses, std::size_t n,
                                std::size_t dim, double eps, std::span<double> out)
{
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel if (n >= parallel_threshold)
    {
        SortedRow row;
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            row.build(x, masses, n, dim, i);
            const double total = row.mass_prefix[n];
            for (std::size_t j = 0; j < n; ++j) {
                const double a = row.raw[j];
                const auto le = static_cast<std::size_t>(
                    std::upper_bound(row.dist.begin(), row.dist.end(), a) - row.dist.begin());
                const auto ramp_end = static_cast<std::size_t>(
                    std::lower_bound(row.dist.begin() + static_cast<std::ptrdiff_t>(le), row.dist.end(), a + eps) -
                    row.dist.begin());
                const double ramp_mass = row.mass_prefix[ramp_end] - row.mass_prefix[le];
                const double ramp_moment = row.moment_prefix[ramp_end] - row.moment_prefix[le];
                const double ramp = (1.0 + a / eps) * ramp_mass - ramp_moment / eps;
                out[i * n + j] = std::clamp(row.mass_prefix[le] + std::max(ramp, 0.0), 0.0, total);
            }
        }
    }
}

void sharp_separation_table(std::span<const double> x, std::span<const double> masses, std::size_t n,
                            std::size_t dim, std::span<double> out)
{
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel if (n >= parallel_threshold)
    {
        SortedRow row;
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            row.build(x, masses, n, dim, i);
            for (std::size_t j = 0; j < n; ++j) {
                const auto lt = std::lower_bound(row.dist.begin(), row.dist.end(), row.raw[j]) - row.dist.begin();
                out[i * n + j] = row.mass_prefix[static_cast<std::size_t>(lt)];
            }
        }
    }
}

} // namespace tcs::kernels::parallel
