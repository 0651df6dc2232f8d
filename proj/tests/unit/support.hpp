#pragma once

#include "tcs/ensemble.hpp"
#include "tcs/rng.hpp"

#include <vector>

namespace tcs::testing {

inline AgentEnsemble random_ensemble(std::size_t n, std::size_t dim, Rng& rng, double box = 1.0, double speed = 1.0)
{
    std::vector<double> x(n * dim), v(n * dim);
    for (double& value : x)
        value = uniform(rng, -box, box);
    for (double& value : v)
        value = uniform(rng, -speed, speed);
    return AgentEnsemble(dim, std::move(x), std::move(v));
}

inline AgentEnsemble line(std::vector<double> x, std::vector<double> v = {})
{
    if (v.empty())
        v.assign(x.size(), 0.0);
    return AgentEnsemble(1, std::move(x), std::move(v));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

} // namespace tcs::testing
