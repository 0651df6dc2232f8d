#include "rank_row.hpp"
#include "tcs/kernels.hpp"

#include <cmath>

namespace tcs::kernels::serial {

void rank_table(std::span<const double> x, std::span<const double> v, std::size_t n, std::size_t dim,
                std::span<std::uint32_t> ranks)
{
    std::vector<detail::RankKey> keys;
    for (std::size_t i = 0; i < n; ++i)
        detail::rank_row(x, v, n, dim, i, keys, ranks.subspan(i * n, n));
}

void consensus_rhs(std::span<const double> weights, std::span<const double> v, std::size_t n, std::size_t dim,
                   std::span<double> out)
{
    for (std::size_t i = 0; i < n; ++i)
        detail::consensus_row(weights, v, n, dim, i, out);
}

void swarm_acceleration(std::span<const double> x, std::span<const double> v, std::span<const double> attraction,
                        std::size_t n, std::size_t dim, const SwarmCoefficients& coeff, std::span<double> out)
{
    for (std::size_t i = 0; i < n; ++i)
        detail::swarm_row(x, v, attraction, n, dim, coeff, i, out);
}

namespace {

double pair_distance(std::span<const double> x, std::size_t dim, std::size_t a, std::size_t b)
{
    double dd = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
        const double diff = x[a * dim + c] - x[b * dim + c];
        dd += diff * diff;
    }
    return std::sqrt(dd);
}

} // namespace

void mollified_separation_table(std::span<const double> x, std::span<const double> masses, std::size_t n,
                                std::size_t dim, double eps, std::span<double> out)
{
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dij = pair_distance(x, dim, i, j);
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double s = dij - pair_distance(x, dim, i, k);
                const double psi = s >= 0.0 ? 1.0 : (s <= -eps ? 0.0 : s / eps + 1.0);
                sum += masses[k] * psi;
            }
            out[i * n + j] = sum;
        }
    }
}

void sharp_separation_table(std::span<const double> x, std::span<const double> masses, std::size_t n,
                            std::size_t dim, std::span<double> out)
{
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dij = pair_distance(x, dim, i, j);
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                if (pair_distance(x, dim, i, k) < dij)
                    sum += masses[k];
            out[i * n + j] = sum;
        }
    }
}

} // namespace tcs::kernels::serial
