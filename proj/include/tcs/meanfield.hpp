#pragma once

#include "tcs/dynamics.hpp"
#include "tcs/ensemble.hpp"
#include "tcs/rng.hpp"
#include "tcs/weights.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace tcs::meanfield {

/// Weighted particle cloud in phase space.
class EmpiricalMeasure {
  public:
    EmpiricalMeasure(std::size_t dim, std::vector<double> positions, std::vector<double> velocities,
                     std::vector<double> masses);

    /// Equal masses 1/N on the agents of an ensemble.
    static EmpiricalMeasure uniform(const AgentEnsemble& ensemble);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return masses_.size(); }
    double total_mass() const;

    std::span<const double> position(std::size_t k) const { return {positions_.data() + k * dim_, dim_}; }
    std::span<const double> velocity(std::size_t k) const { return {velocities_.data() + k * dim_, dim_}; }
    double mass(std::size_t k) const { return masses_[k]; }
    const std::vector<double>& positions() const { return positions_; }
    const std::vector<double>& velocities() const { return velocities_; }
    const std::vector<double>& masses() const { return masses_; }

  private:
    std::size_t dim_;
    std::vector<double> positions_;
    std::vector<double> velocities_;
    std::vector<double> masses_;
};

/// Ramp psi(s) = 0 for s <= -eps, s/eps + 1 on (-eps, 0), 1 for s >= 0.
struct Mollifier {
    double epsilon;

    explicit Mollifier(double eps);
    double operator()(double s) const;
    double lipschitz() const { return 1.0 / epsilon; }
};

/// Continuum separation with the sharp indicator: the mass strictly closer to
/// x than y is.
double sharp_separation(const EmpiricalMeasure& measure, std::span<const double> x, std::span<const double> y);

/// sum_k m_k psi(|y - x| - |z_k - x|).
double smoothed_separation(const EmpiricalMeasure& measure, const Mollifier& mollifier, std::span<const double> x,
                           std::span<const double> y);

/// Separation used by the kinetic field: mollified, or sharp when empty.
using SeparationChoice = std::optional<Mollifier>;

/// (1/gamma) sum_k m_k g(alpha(x, y_k)) w_k: the rank-weighted average
/// velocity seen from x (the average-velocity part of the field).
std::vector<double> kinetic_average(const EmpiricalMeasure& measure, const SeparationChoice& separation,
                                    const NormalizedKernel& kernel, std::span<const double> x);

/// (1/gamma) sum_k m_k g(alpha(x, y_k)) (w_k - v).
std::vector<double> kinetic_field(const EmpiricalMeasure& measure, const SeparationChoice& separation,
                                  const NormalizedKernel& kernel, std::span<const double> x,
                                  std::span<const double> v);

/// Exact 1-Wasserstein distance between two clouds of equal size and equal
/// uniform masses, with ground metric |x - x'| + |v - v'|, by optimal assignment.
double wasserstein1(const EmpiricalMeasure& f, const EmpiricalMeasure& h);

/// Optimal assignment (minimum total cost) for an n*n row-major cost matrix.
/// Returns the column assigned to each row.
std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n);

/// W1 between two equal-size uniform point sets on the real line (sorted matching).
double wasserstein1_line(std::span<const double> a, std::span<const double> b);

/// Mean-field particle system: every particle follows the kinetic field of the
/// cloud's own empirical measure (uniform masses). Separations are frozen
/// within each step.
Trajectory simulate_meanfield_particles(const AgentEnsemble& initial, const NormalizedKernel& kernel,
                                        const SeparationChoice& separation, double dt, double t_end,
                                        std::size_t sample_every = 1);

/// Default smoothing width 0.05 * spatial diameter (positive even for a point cloud).
Mollifier default_mollifier(const AgentEnsemble& ensemble);

/// Draws n particles: positions uniform in [0,1]^d, velocities uniform in [-1,1]^d.
/// The first m particles of an n-draw coincide with an m-draw from the same engine state.
AgentEnsemble sample_uniform_cloud(std::size_t n, std::size_t dim, Rng& rng);

} // namespace tcs::meanfield
