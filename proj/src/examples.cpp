#include "tcs/examples.hpp"

#include <cmath>
#include <stdexcept>

namespace tcs::examples {

Scenario scenario_example1(double c)
{
    if (!(c > 0.0))
        throw std::invalid_argument("scenario_example1: launch speed c must be positive");
    std::vector<double> x{-10.0, -9.0, -6.0, 0.0, 6.0, 9.0, 10.0};
    std::vector<double> v{-1.0, -1.0, -1.0, c, 1.0, 1.0, 1.0};
    std::vector<double> g(7, 0.0);
    g[2] = 1.0;
    return {AgentEnsemble(1, std::move(x), std::move(v)), WeightFunction::discrete(std::move(g)),
            c - std::log1p(c) < 1.0};
}

Scenario scenario_example2()
{
    std::vector<double> x{-6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0};
    std::vector<double> v{-1.0, -1.0, -1.0, 0.0, 1.0, 1.0, 1.0};
    std::vector<double> g(7, 0.0);
    g[1] = 0.5;
    g[2] = 0.5;
    return {AgentEnsemble(1, std::move(x), std::move(v)), WeightFunction::discrete(std::move(g))};
}

Scenario scenario_example3(std::size_t n)
{
    if (n < 3)
        throw std::invalid_argument("scenario_example3: needs at least 3 agents");
    std::vector<double> x(n), v(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        x[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 2);
    x[n - 1] = 5.0;
    std::vector<double> g(n, 1.0);
    g[0] = 0.0;
    g[n - 1] = 0.0;
    return {AgentEnsemble(1, std::move(x), std::move(v)), WeightFunction::discrete(std::move(g))};
}

Excursion analytic_example1(double t, double c)
{
    const double decay = -std::expm1(-t); // 1 - e^{-t}
    return {(c + 1.0) * decay - t, (c + 1.0) * std::exp(-t) - 1.0};
}

namespace {

// (tau - 1 + e^{-tau}) / tau^2, evaluated without cancellation.
double excess_ratio(double tau)
{
    if (tau < 1e-2) {
        // sum_k (-tau)^k / (k+2)!
        double term = 0.5;
        double sum = 0.0;
        for (int k = 0; k < 8; ++k) {
            sum += term;
            term *= -tau / (k + 3);
        }
        return sum;
    }
    return (tau + std::expm1(-tau)) / (tau * tau);
}

} // namespace

double return_time(double c)
{
    if (!(c > 0.0))
        throw std::invalid_argument("return_time: c must be positive");
    // With tau = c u the root condition becomes u * excess_ratio(c u) = 1/(1+c),
    // which stays well conditioned as c -> 0; the root lies in u in (1, 2).
    const double target = 1.0 / (1.0 + c);
    auto residual = [&](double u) { return u * excess_ratio(c * u) - target; };
    double lo = 1.0;
    double hi = 2.0;
    if (!(residual(lo) < 0.0) || !(residual(hi) > 0.0))
        throw std::runtime_error("return_time: root not bracketed in (c, 2c)");
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (residual(mid) < 0.0 ? lo : hi) = mid;
    }
    return c * 0.5 * (lo + hi);
}

ReturnMapResult return_map_iterate(double c0, std::size_t k_max)
{
    if (!(c0 > 0.0))
        throw std::invalid_argument("return_map_iterate: c0 must be positive");
    if (k_max < 1)
        throw std::invalid_argument("return_map_iterate: k_max must be at least 1");
    ReturnMapResult result;
    double c = c0;
    double total = 0.0;
    for (std::size_t k = 0; k < k_max && c >= 1e-300; ++k) {
        const double tau = return_time(c);
        const double s = tau - c;
        result.records.push_back({c, tau, s, std::log1p(c), c - std::log1p(c)});
        total += tau;
        result.partial_sums.push_back(total);
        c = s;
    }
    return result;
}

} // namespace tcs::examples
