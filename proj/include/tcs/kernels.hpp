#pragma once

// Data-parallel inner loops of the simulators. Each kernel has a serial
// reference implementation and an OpenMP implementation. Every output row is
// written by exactly one thread and rows are never reduced across threads, so
// the two variants agree bit for bit wherever they share an algorithm. The
// separation tables use a different (sorted prefix-sum) algorithm in the
// parallel variant and agree with the reference to rounding.

#include <cstddef>
#include <cstdint>
#include <span>

namespace tcs::kernels {

/// Pairwise-force parameters consumed by swarm_acceleration.
struct SwarmCoefficients {
    double self_propulsion = 0.0;
    double friction = 0.0;
    double repulsion_strength = 0.0;
    double repulsion_length = 1.0;
};

namespace serial {

/// Row i ranks every agent k by the key (|x_i - x_k|, d/dt |x_i - x_k|, k),
/// with agent i itself always at rank 0. `ranks` is n*n, row-major.
void rank_table(std::span<const double> x, std::span<const double> v, std::size_t n, std::size_t dim,
                std::span<std::uint32_t> ranks);

/// out_i = sum_j w_ij (v_j - v_i) for an n*n row-major weight matrix.
void consensus_rhs(std::span<const double> weights, std::span<const double> v, std::size_t n, std::size_t dim,
                   std::span<double> out);

/// Self-propulsion, Morse repulsion gradient and precomputed attraction
/// magnitudes (n*n, row-major) of the topological attraction-repulsion model.
void swarm_acceleration(std::span<const double> x, std::span<const double> v, std::span<const double> attraction,
                        std::size_t n, std::size_t dim, const SwarmCoefficients& coeff, std::span<double> out);

/// out_ij = sum_k m_k psi(|x_j - x_i| - |x_k - x_i|) with the ramp psi of
/// width eps; direct triple loop.
void mollified_separation_table(std::span<const double> x, std::span<const double> masses, std::size_t n,
                                std::size_t dim, double eps, std::span<double> out);

/// out_ij = sum_k m_k [|x_k - x_i| < |x_j - x_i|]; direct triple loop.
void sharp_separation_table(std::span<const double> x, std::span<const double> masses, std::size_t n,
                            std::size_t dim, std::span<double> out);

} // namespace serial

namespace parallel {

void rank_table(std::span<const double> x, std::span<const double> v, std::size_t n, std::size_t dim,
                std::span<std::uint32_t> ranks);

void consensus_rhs(std::span<const double> weights, std::span<const double> v, std::size_t n, std::size_t dim,
                   std::span<double> out);

void swarm_acceleration(std::span<const double> x, std::span<const double> v, std::span<const double> attraction,
                        std::size_t n, std::size_t dim, const SwarmCoefficients& coeff, std::span<double> out);

void mollified_separation_table(std::span<const double> x, std::span<const double> masses, std::size_t n,
                                std::size_t dim, double eps, std::span<double> out);

void sharp_separation_table(std::span<const double> x, std::span<const double> masses, std::size_t n,
                            std::size_t dim, std::span<double> out);

} // namespace parallel

/// Below this many agents the OpenMP variants run on the calling thread.
inline constexpr std::size_t parallel_threshold = 64;

} // namespace tcs::kernels
