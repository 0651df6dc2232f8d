#pragma once

// Shared row kernels used by both the serial and the OpenMP variants.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tcs::kernels::detail {

struct RankKey {
    double dist;
    double rate;
    std::uint32_t index;
};

inline bool rank_less(const RankKey& a, const RankKey& b)
{
    if (a.dist != b.dist)
        return a.dist < b.dist;
    if (a.rate != b.rate)
        return a.rate < b.rate;
    return a.index < b.index;
}

inline void rank_row(std::span<const double> x, std::span<const double> v, std::size_t n, std::size_t dim,
                     std::size_t i, std::vector<RankKey>& keys, std::span<std::uint32_t> row)
{
    keys.resize(n);
    const double* xi = x.data() + i * dim;
    const double* vi = v.data() + i * dim;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == i) {
            keys[k] = {-1.0, 0.0, static_cast<std::uint32_t>(k)};
            continue;
        }
        const double* xk = x.data() + k * dim;
        const double* vk = v.data() + k * dim;
        double dd = 0.0;
        double dot = 0.0;
        double vv = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            const double dx = xk[c] - xi[c];
            const double dv = vk[c] - vi[c];
            dd += dx * dx;
            dot += dx * dv;
            vv += dv * dv;
        }
        const double dist = std::sqrt(dd);
        // right derivative of |x_k - x_i| in time
        const double rate = dist > 0.0 ? dot / dist : std::sqrt(vv);
        keys[k] = {dist, rate, static_cast<std::uint32_t>(k)};
    }
    std::sort(keys.begin(), keys.end(), rank_less);
    for (std::size_t r = 0; r < n; ++r)
        row[keys[r].index] = static_cast<std::uint32_t>(r);
}

inline void consensus_row(std::span<const double> weights, std::span<const double> v, std::size_t n,
                          std::size_t dim, std::size_t i, std::span<double> out)
{
    const double* w = weights.data() + i * n;
    const double* vi = v.data() + i * dim;
    double acc[3] = {0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        if (w[j] == 0.0)
            continue;
        const double* vj = v.data() + j * dim;
        for (std::size_t c = 0; c < dim; ++c)
            acc[c] += w[j] * (vj[c] - vi[c]);
    }
    for (std::size_t c = 0; c < dim; ++c)
        out[i * dim + c] = acc[c];
}

template <class Coeff>
inline void swarm_row(std::span<const double> x, std::span<const double> v, std::span<const double> attraction,
                      std::size_t n, std::size_t dim, const Coeff& coeff, std::size_t i, std::span<double> out)
{
    const double* xi = x.data() + i * dim;
    const double* vi = v.data() + i * dim;
    double speed2 = 0.0;
    for (std::size_t c = 0; c < dim; ++c)
        speed2 += vi[c] * vi[c];
    const double propulsion = coeff.self_propulsion - coeff.friction * speed2;
    const double inv_n = 1.0 / static_cast<double>(n);
    const double rep_scale = coeff.repulsion_strength / coeff.repulsion_length;
    double acc[3] = {0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i)
            continue;
        const double* xj = x.data() + j * dim;
        double diff[3] = {0.0, 0.0, 0.0};
        double rr = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            diff[c] = xi[c] - xj[c];
            rr += diff[c] * diff[c];
        }
        if (rr == 0.0)
            continue;
        const double r = std::sqrt(rr);
        const double magnitude = rep_scale * std::exp(-r / coeff.repulsion_length) - attraction[i * n + j];
        for (std::size_t c = 0; c < dim; ++c)
            acc[c] += magnitude * diff[c] / r;
    }
    for (std::size_t c = 0; c < dim; ++c)
        out[i * dim + c] = propulsion * vi[c] + inv_n * acc[c];
}

} // namespace tcs::kernels::detail
