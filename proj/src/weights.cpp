#include "tcs/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcs {

namespace {

double simpson(const std::function<double(double)>& g, int intervals)
{
    const double h = 1.0 / intervals;
    double sum = g(0.0) + g(1.0);
    for (int k = 1; k < intervals; ++k)
        sum += (k % 2 == 1 ? 4.0 : 2.0) * g(k * h);
    return sum * h / 3.0;
}

} // namespace

NormalizedKernel::NormalizedKernel(std::string family, std::vector<double> params, std::function<double(double)> g)
    : family_(std::move(family)), params_(std::move(params)), g_(std::move(g))
{
    constexpr int grid = 4096;
    double lo = g_(0.0);
    double hi = lo;
    double lip = 0.0;
    double prev = lo;
    for (int k = 1; k <= grid; ++k) {
        const double value = g_(static_cast<double>(k) / grid);
        if (!std::isfinite(value) || value < 0.0)
            throw std::invalid_argument("NormalizedKernel: g must be finite and nonnegative on [0,1]");
        lo = std::min(lo, value);
        hi = std::max(hi, value);
        lip = std::max(lip, std::abs(value - prev) * grid);
        prev = value;
    }
    if (!std::isfinite(lo) || lo < 0.0)
        throw std::invalid_argument("NormalizedKernel: g must be finite and nonnegative on [0,1]");
    inf_ = lo;
    sup_ = hi;
    lipschitz_ = lip;
    gamma_ = simpson(g_, 1024);
}

NormalizedKernel NormalizedKernel::constant(double c)
{
    if (!(c > 0.0))
        throw std::invalid_argument("NormalizedKernel::constant: c must be positive");
    NormalizedKernel k("constant", {c}, [c](double) { return c; });
    k.gamma_ = c;
    k.lipschitz_ = 0.0;
    k.sup_ = k.inf_ = c;
    return k;
}

NormalizedKernel NormalizedKernel::exponential(double scale, double length)
{
    if (!(scale > 0.0) || !(length > 0.0))
        throw std::invalid_argument("NormalizedKernel::exponential: scale and length must be positive");
    NormalizedKernel k("exponential", {scale, length},
                       [scale, length](double s) { return scale / length * std::exp(-s / length); });
    k.gamma_ = -scale * std::expm1(-1.0 / length);
    k.lipschitz_ = scale / (length * length);
    k.sup_ = scale / length;
    k.inf_ = scale / length * std::exp(-1.0 / length);
    return k;
}

NormalizedKernel NormalizedKernel::affine(double c0, double c1)
{
    if (c0 < 0.0 || c0 + c1 < 0.0 || !(c0 + 0.5 * c1 > 0.0))
        throw std::invalid_argument("NormalizedKernel::affine: g must be nonnegative with positive integral");
    NormalizedKernel k("affine", {c0, c1}, [c0, c1](double s) { return c0 + c1 * (1.0 - s); });
    k.gamma_ = c0 + 0.5 * c1;
    k.lipschitz_ = std::abs(c1);
    k.sup_ = std::max(c0, c0 + c1);
    k.inf_ = std::min(c0, c0 + c1);
    return k;
}

NormalizedKernel NormalizedKernel::custom(std::function<double(double)> g)
{
    NormalizedKernel k("custom", {}, std::move(g));
    if (!(k.gamma_ > 0.0))
        throw std::invalid_argument("NormalizedKernel::custom: integral of g must be positive");
    return k;
}

double MetricWeights::operator()(double r) const
{
    return lambda / std::pow(sigma * sigma + r * r, beta);
}

WeightFunction WeightFunction::discrete(std::vector<double> table)
{
    if (table.empty())
        throw std::invalid_argument("WeightFunction::discrete: empty table");
    bool any_positive = false;
    for (double value : table) {
        if (!std::isfinite(value) || value < 0.0)
            throw std::invalid_argument("WeightFunction::discrete: weights must be finite and nonnegative");
        any_positive = any_positive || value > 0.0;
    }
    if (!any_positive)
        throw std::invalid_argument("WeightFunction::discrete: weight table is identically zero");
    return WeightFunction(DiscreteWeights{std::move(table)});
}

WeightFunction WeightFunction::normalized(NormalizedKernel kernel)
{
    if (!(kernel.gamma() > 0.0))
        throw std::invalid_argument("WeightFunction::normalized: gamma must be positive");
    return WeightFunction(std::move(kernel));
}

WeightFunction WeightFunction::metric(double lambda, double sigma, double beta)
{
    if (!(lambda > 0.0) || !(sigma > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("WeightFunction::metric: lambda, sigma and beta must be positive");
    return WeightFunction(MetricWeights{lambda, sigma, beta});
}

WeightMode WeightFunction::mode() const
{
    switch (spec_.index()) {
    case 0:
        return WeightMode::topological_discrete;
    case 1:
        return WeightMode::topological_normalized;
    default:
        return WeightMode::metric;
    }
}

double WeightFunction::gamma_n(std::size_t n) const
{
    const auto& table = as_discrete().table;
    if (table.size() < n)
        throw std::invalid_argument("WeightFunction: weight table shorter than the number of agents");
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        sum += table[k];
    return sum;
}

double WeightFunction::row_normalizer(std::size_t n) const
{
    switch (mode()) {
    case WeightMode::topological_discrete:
        return gamma_n(n);
    case WeightMode::topological_normalized: {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            sum += as_normalized()(static_cast<double>(k) / static_cast<double>(n));
        return sum;
    }
    case WeightMode::metric:
        return static_cast<double>(n);
    }
    return 0.0;
}

double WeightFunction::rank_weight(std::size_t rank, std::size_t n) const
{
    switch (mode()) {
    case WeightMode::topological_discrete: {
        const auto& table = as_discrete().table;
        if (table.size() < n)
            throw std::invalid_argument("WeightFunction: weight table shorter than the number of agents");
        return table[rank];
    }
    case WeightMode::topological_normalized:
        return as_normalized()(static_cast<double>(rank) / static_cast<double>(n));
    case WeightMode::metric:
        break;
    }
    throw std::logic_error("WeightFunction::rank_weight: metric weights are not rank based");
}

} // namespace tcs
