#include "tcs/meanfield.hpp"

#include "tcs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tcs::meanfield {

EmpiricalMeasure::EmpiricalMeasure(std::size_t dim, std::vector<double> positions, std::vector<double> velocities,
                                   std::vector<double> masses)
    : dim_(dim), positions_(std::move(positions)), velocities_(std::move(velocities)), masses_(std::move(masses))
{
    if (dim_ < 1 || dim_ > 3)
        throw std::invalid_argument("EmpiricalMeasure: dim must be 1, 2 or 3");
    if (masses_.empty())
        throw std::invalid_argument("EmpiricalMeasure: needs at least one point");
    if (positions_.size() != masses_.size() * dim_ || velocities_.size() != masses_.size() * dim_)
        throw std::invalid_argument("EmpiricalMeasure: coordinate arrays do not match the mass count");
    for (double m : masses_)
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument("EmpiricalMeasure: masses must be positive");
    if (std::abs(total_mass() - 1.0) > 1e-12)
        throw std::invalid_argument("EmpiricalMeasure: masses must sum to 1");
}

EmpiricalMeasure EmpiricalMeasure::uniform(const AgentEnsemble& ensemble)
{
    const std::size_t n = ensemble.size();
    return {ensemble.dim(), ensemble.positions(), ensemble.velocities(),
            std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

double EmpiricalMeasure::total_mass() const
{
    double total = 0.0;
    for (double m : masses_)
        total += m;
    return total;
}

Mollifier::Mollifier(double eps) : epsilon(eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("Mollifier: epsilon must be positive");
}

double Mollifier::operator()(double s) const
{
    if (s >= 0.0)
        return 1.0;
    if (s <= -epsilon)
        return 0.0;
    return s / epsilon + 1.0;
}

namespace {

void check_point(const EmpiricalMeasure& measure, std::span<const double> p, const char* what)
{
    if (p.size() != measure.dim())
        throw std::invalid_argument(std::string(what) + ": point dimension does not match the measure");
}

double separation(const EmpiricalMeasure& measure, const SeparationChoice& choice, std::span<const double> x,
                  std::span<const double> y)
{
    return choice ? smoothed_separation(measure, *choice, x, y) : sharp_separation(measure, x, y);
}

} // namespace

double sharp_separation(const EmpiricalMeasure& measure, std::span<const double> x, std::span<const double> y)
{
    check_point(measure, x, "sharp_separation");
    check_point(measure, y, "sharp_separation");
    const double r = distance(y, x);
    double total = 0.0;
    for (std::size_t k = 0; k < measure.size(); ++k)
        if (distance(measure.position(k), x) < r)
            total += measure.mass(k);
    return total;
}

double smoothed_separation(const EmpiricalMeasure& measure, const Mollifier& mollifier, std::span<const double> x,
                           std::span<const double> y)
{
    check_point(measure, x, "smoothed_separation");
    check_point(measure, y, "smoothed_separation");
    const double r = distance(y, x);
    double total = 0.0;
    for (std::size_t k = 0; k < measure.size(); ++k)
        total += measure.mass(k) * mollifier(r - distance(measure.position(k), x));
    return std::min(total, 1.0);
}

std::vector<double> kinetic_average(const EmpiricalMeasure& measure, const SeparationChoice& separation_choice,
                                    const NormalizedKernel& kernel, std::span<const double> x)
{
    check_point(measure, x, "kinetic_average");
    const double gamma = kernel.gamma();
    if (!(gamma > 0.0))
        throw std::invalid_argument("kinetic_average: kernel integral must be positive");
    std::vector<double> out(measure.dim(), 0.0);
    for (std::size_t k = 0; k < measure.size(); ++k) {
        const double w = measure.mass(k) * kernel(separation(measure, separation_choice, x, measure.position(k)));
        for (std::size_t c = 0; c < measure.dim(); ++c)
            out[c] += w * measure.velocity(k)[c];
    }
    for (double& value : out)
        value /= gamma;
    return out;
}

std::vector<double> kinetic_field(const EmpiricalMeasure& measure, const SeparationChoice& separation_choice,
                                  const NormalizedKernel& kernel, std::span<const double> x,
                                  std::span<const double> v)
{
    check_point(measure, x, "kinetic_field");
    check_point(measure, v, "kinetic_field");
    const double gamma = kernel.gamma();
    if (!(gamma > 0.0))
        throw std::invalid_argument("kinetic_field: kernel integral must be positive");
    std::vector<double> out(measure.dim(), 0.0);
    for (std::size_t k = 0; k < measure.size(); ++k) {
        const double w = measure.mass(k) * kernel(separation(measure, separation_choice, x, measure.position(k)));
        for (std::size_t c = 0; c < measure.dim(); ++c)
            out[c] += w * (measure.velocity(k)[c] - v[c]);
    }
    for (double& value : out)
        value /= gamma;
    return out;
}

std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n)
{
    if (cost.size() != n * n)
        throw std::invalid_argument("solve_assignment: cost matrix must be n*n");
    if (n == 0)
        return {};
    // Shortest augmenting path with potentials (Hungarian method), 1-based.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> assignment(n);
    for (std::size_t j = 1; j <= n; ++j)
        assignment[p[j] - 1] = j - 1;
    return assignment;
}

double wasserstein1(const EmpiricalMeasure& f, const EmpiricalMeasure& h)
{
    if (f.dim() != h.dim())
        throw std::invalid_argument("wasserstein1: dimension mismatch");
    if (f.size() != h.size())
        throw std::invalid_argument("wasserstein1: clouds must have equal particle counts");
    const std::size_t n = f.size();
    const double m = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(f.mass(k) - m) > 1e-12 || std::abs(h.mass(k) - m) > 1e-12)
            throw std::invalid_argument("wasserstein1: only uniform equal masses are supported");

    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i * n + j] = distance(f.position(i), h.position(j)) + distance(f.velocity(i), h.velocity(j));
    const auto assignment = solve_assignment(cost, n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        total += cost[i * n + assignment[i]];
    return total * m;
}

double wasserstein1_line(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("wasserstein1_line: point sets must be nonempty and of equal size");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double total = 0.0;
    for (std::size_t k = 0; k < sa.size(); ++k)
        total += std::abs(sa[k] - sb[k]);
    return total / static_cast<double>(sa.size());
}

Trajectory simulate_meanfield_particles(const AgentEnsemble& initial, const NormalizedKernel& kernel,
                                        const SeparationChoice& separation_choice, double dt, double t_end,
                                        std::size_t sample_every)
{
    if (initial.size() < 2)
        throw std::invalid_argument("simulate_meanfield_particles: needs at least 2 particles");
    if (sample_every < 1)
        throw std::invalid_argument("sample_every must be at least 1");
    const double gamma = kernel.gamma();
    if (!(gamma > 0.0))
        throw std::invalid_argument("simulate_meanfield_particles: kernel integral must be positive");
    const TimeGrid grid(dt, t_end);
    const std::size_t n = initial.size();
    const std::size_t dim = initial.dim();
    const std::vector<double> masses(n, 1.0 / static_cast<double>(n));

    std::vector<double> alpha(n * n), weights(n * n);
    auto freeze = [&](const AgentEnsemble& state) {
        if (separation_choice)
            kernels::parallel::mollified_separation_table(state.positions(), masses, n, dim,
                                                          separation_choice->epsilon, alpha);
        else
            kernels::parallel::sharp_separation_table(state.positions(), masses, n, dim, alpha);
        for (std::size_t k = 0; k < n * n; ++k)
            weights[k] = masses[k % n] * kernel(std::min(alpha[k], 1.0)) / gamma;
    };

    Trajectory traj;
    traj.switch_log.t_end = t_end;
    traj.times.push_back(0.0);
    traj.states.push_back(initial);
    AgentEnsemble state = initial;
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t1 = grid.time(k + 1);
        freeze(state);
        state = rk4_step(state, t1 - grid.time(k),
                         [&](std::span<const double>, std::span<const double> v, std::span<double> out) {
                             kernels::parallel::consensus_rhs(weights, v, n, dim, out);
                         });
        if (!state.all_finite())
            throw SimulationError("mean-field simulation produced a non-finite coordinate at t = " +
                                  std::to_string(t1));
        if ((k + 1) % sample_every == 0 || k + 1 == grid.steps) {
            traj.times.push_back(t1);
            traj.states.push_back(state);
        }
    }
    return traj;
}

Mollifier default_mollifier(const AgentEnsemble& ensemble)
{
    double diameter = 0.0;
    for (std::size_t i = 0; i < ensemble.size(); ++i)
        for (std::size_t j = i + 1; j < ensemble.size(); ++j)
            diameter = std::max(diameter, distance(ensemble.position(i), ensemble.position(j)));
    return Mollifier(diameter > 0.0 ? 0.05 * diameter : 0.05);
}

AgentEnsemble sample_uniform_cloud(std::size_t n, std::size_t dim, Rng& rng)
{
    if (n < 1)
        throw std::invalid_argument("sample_uniform_cloud: n must be positive");
    std::vector<double> x(n * dim), v(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < dim; ++c)
            x[i * dim + c] = uniform01(rng);
        for (std::size_t c = 0; c < dim; ++c)
            v[i * dim + c] = uniform(rng, -1.0, 1.0);
    }
    return AgentEnsemble(dim, std::move(x), std::move(v));
}

} // namespace tcs::meanfield
