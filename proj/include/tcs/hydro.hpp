#pragma once

// One-dimensional Lagrangian particles for the monokinetic Euler system with
// the nonlocal topological average velocity.

#include "tcs/weights.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tcs::hydro {

struct HydroState {
    std::vector<double> masses;
    std::vector<double> X;
    std::vector<double> U;
    /// Positive lower bound of the kernel, when the run asserts one.
    std::optional<double> g0;

    std::size_t size() const { return masses.size(); }
    /// Throws std::invalid_argument unless masses are positive, sum to 1 within
    /// 1e-12, and all arrays agree in length and are finite.
    void validate() const;
};

/// Uniform masses 1/N on the given positions and velocities.
HydroState uniform_state(std::vector<double> X, std::vector<double> U);

/// Mass of the particles ranked strictly before j as seen from i, with the
/// same (distance, distance rate, index) order as the particle model.
double mass_rank_separation(const HydroState& state, std::size_t i, std::size_t j);

/// Row-major N*N table of mass_rank_separation.
std::vector<double> mass_rank_table(const HydroState& state);

/// ubar_i = (1/gamma) sum_j g(sep_ij) m_j U_j.
std::vector<double> local_average(const HydroState& state, const NormalizedKernel& kernel);

struct HydroSample {
    double time;
    HydroState state;
};

/// X' = U, U' = ubar(X) - U by RK4; separations are refreshed every step.
std::vector<HydroSample> simulate_hydro(const HydroState& initial, const NormalizedKernel& kernel, double dt,
                                        double t_end, std::size_t sample_every = 1);

struct Prop2Report {
    std::vector<double> times;
    std::vector<double> d_x;
    std::vector<double> d_u;
    double sup_d_x = 0.0;
    /// max over samples of d_u(t) / (d_u(0) e^{-g0^2 t}); 0 for consensus data.
    double worst_ratio = 0.0;
    bool holds = true;
};

/// Checks d_u(t) <= slack * d_u(0) exp(-g0^2 t) + 1e-12 (1 + max|U(0)|) at every
/// sample and that d_x stays finite.
Prop2Report prop2_check(const std::vector<HydroSample>& samples, double g0, double slack = 1.05);

} // namespace tcs::hydro
