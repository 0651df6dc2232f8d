#pragma once

#include "tcs/dynamics.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tcs {

/// Flocking observables sampled along a trajectory.
struct DiagnosticsSeries {
    std::vector<double> times;
    std::vector<double> omega;                ///< max_i |v_i|
    std::vector<std::size_t> argmax_index;    ///< lowest index attaining omega
    std::vector<double> vel_diameter;         ///< max_ij |v_i - v_j|
    std::vector<double> pos_fluctuation;      ///< sum_i |x_i - x_c|^2
    std::vector<std::vector<double>> momentum; ///< (1/N) sum_i v_i
    std::vector<double> max_position;         ///< max_i |x_i|
};

DiagnosticsSeries compute_series(const Trajectory& trajectory);

double velocity_diameter(const AgentEnsemble& state);

struct FlockingVerdict {
    bool flocked = false;
    std::optional<double> t_flock;
    std::optional<std::vector<double>> v_consensus;
};

/// Flocked when the velocity diameter stays below `tol` from some sample to
/// the end of the run and that tail lasts at least `dwell` time units.
FlockingVerdict check_flocking(const DiagnosticsSeries& series, double tol = 1e-6, double dwell = 1.0);

struct InvariantReport {
    bool holds = true;
    std::optional<std::size_t> first_violation; ///< sample index
    double worst_excess = 0.0;
};

/// omega(t_{k+1}) <= omega(t_k) + tol for every consecutive sample pair.
InvariantReport check_omega_monotone(const DiagnosticsSeries& series, double tol = 1e-12);

/// d = 2: every velocity set lies in the previous sample's convex hull dilated
/// about its centroid by (1 + 1e-8). Otherwise: the velocity diameter is
/// nonincreasing within 1e-10 per sample.
InvariantReport check_hull_contraction(const Trajectory& trajectory);

/// max_i |x_i(t)| <= max_i |x_i(0)| + omega(0) t + 1e-9 at every sample.
InvariantReport check_position_bound(const Trajectory& trajectory);

/// max_t |V(t) - V(0)| for the mean velocity V.
double momentum_drift(const Trajectory& trajectory);

/// Membership of `point` in the convex hull of `points` (agent-major, d values
/// each). Exact hull test in 1-D and 2-D within `tol`; in 3-D only the
/// componentwise bounding box is checked.
bool in_convex_hull(std::span<const double> points, std::size_t dim, std::span<const double> point,
                    double tol = 1e-9);

/// 2-D convex hull (counter-clockwise, no collinear points) of agent-major points.
std::vector<std::array<double, 2>> convex_hull_2d(std::span<const double> points);

} // namespace tcs
