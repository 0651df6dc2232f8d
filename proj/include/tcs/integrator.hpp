#pragma once

#include "tcs/ensemble.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tcs {

/// Raised when an integration produces non-finite values or chatters.
class SimulationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One classical RK4 step of x' = v, v' = accel(x, v) on an ensemble.
/// `accel(x, v, out)` writes the acceleration of every agent into `out`.
template <class Accel>
AgentEnsemble rk4_step(const AgentEnsemble& state, double h, Accel&& accel)
{
    const std::size_t m = state.positions().size();
    const auto& x0 = state.positions();
    const auto& v0 = state.velocities();
    std::vector<double> xs(m), vs(m);
    std::vector<double> a1(m), a2(m), a3(m), a4(m);

    accel(std::span<const double>(x0), std::span<const double>(v0), std::span<double>(a1));

    for (std::size_t k = 0; k < m; ++k) {
        xs[k] = x0[k] + 0.5 * h * v0[k];
        vs[k] = v0[k] + 0.5 * h * a1[k];
    }
    std::vector<double> v2 = vs;
    accel(std::span<const double>(xs), std::span<const double>(vs), std::span<double>(a2));

    for (std::size_t k = 0; k < m; ++k) {
        xs[k] = x0[k] + 0.5 * h * v2[k];
        vs[k] = v0[k] + 0.5 * h * a2[k];
    }
    std::vector<double> v3 = vs;
    accel(std::span<const double>(xs), std::span<const double>(vs), std::span<double>(a3));

    for (std::size_t k = 0; k < m; ++k) {
        xs[k] = x0[k] + h * v3[k];
        vs[k] = v0[k] + h * a3[k];
    }
    accel(std::span<const double>(xs), std::span<const double>(vs), std::span<double>(a4));

    AgentEnsemble out = state;
    auto& x = out.positions();
    auto& v = out.velocities();
    for (std::size_t k = 0; k < m; ++k) {
        x[k] = x0[k] + h / 6.0 * (v0[k] + 2.0 * v2[k] + 2.0 * v3[k] + vs[k]);
        v[k] = v0[k] + h / 6.0 * (a1[k] + 2.0 * a2[k] + 2.0 * a3[k] + a4[k]);
    }
    return out;
}

/// Step count and step boundaries of a uniform grid on [0, t_end]; the last
/// step is shortened when t_end is not a multiple of dt.
struct TimeGrid {
    double dt;
    double t_end;
    std::size_t steps;

    TimeGrid(double dt_, double t_end_) : dt(dt_), t_end(t_end_)
    {
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw std::invalid_argument("time step must be positive");
        if (!(t_end > 0.0) || !std::isfinite(t_end))
            throw std::invalid_argument("end time must be positive");
        steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
        if (steps == 0)
            steps = 1;
    }

    double time(std::size_t k) const { return k >= steps ? t_end : static_cast<double>(k) * dt; }
};

} // namespace tcs
