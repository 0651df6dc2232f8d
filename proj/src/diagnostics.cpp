#include "tcs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcs {

double velocity_diameter(const AgentEnsemble& state)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i)
        for (std::size_t j = i + 1; j < state.size(); ++j)
            worst = std::max(worst, distance(state.velocity(i), state.velocity(j)));
    return worst;
}

DiagnosticsSeries compute_series(const Trajectory& trajectory)
{
    if (trajectory.states.empty())
        throw std::invalid_argument("compute_series: empty trajectory");
    DiagnosticsSeries s;
    s.times = trajectory.times;
    for (const auto& state : trajectory.states) {
        const std::size_t n = state.size();
        const std::size_t dim = state.dim();
        double omega = -1.0;
        std::size_t argmax = 0;
        double max_pos = 0.0;
        std::vector<double> centre(dim, 0.0);
        std::vector<double> mean_v(dim, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double speed = norm(state.velocity(i));
            if (speed > omega) {
                omega = speed;
                argmax = i;
            }
            max_pos = std::max(max_pos, norm(state.position(i)));
            for (std::size_t c = 0; c < dim; ++c) {
                centre[c] += state.position(i)[c];
                mean_v[c] += state.velocity(i)[c];
            }
        }
        for (std::size_t c = 0; c < dim; ++c) {
            centre[c] /= static_cast<double>(n);
            mean_v[c] /= static_cast<double>(n);
        }
        double fluctuation = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            fluctuation += std::pow(distance(state.position(i), centre), 2);

        s.omega.push_back(omega);
        s.argmax_index.push_back(argmax);
        s.vel_diameter.push_back(velocity_diameter(state));
        s.pos_fluctuation.push_back(fluctuation);
        s.momentum.push_back(std::move(mean_v));
        s.max_position.push_back(max_pos);
    }
    return s;
}

FlockingVerdict check_flocking(const DiagnosticsSeries& series, double tol, double dwell)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("check_flocking: tol must be positive");
    FlockingVerdict verdict;
    const std::size_t count = series.times.size();
    if (count == 0 || !(series.vel_diameter.back() < tol))
        return verdict;
    std::size_t first = count - 1;
    while (first > 0 && series.vel_diameter[first - 1] < tol)
        --first;
    if (series.times.back() - series.times[first] < dwell)
        return verdict;
    verdict.flocked = true;
    verdict.t_flock = series.times[first];
    verdict.v_consensus = series.momentum.back();
    return verdict;
}

InvariantReport check_omega_monotone(const DiagnosticsSeries& series, double tol)
{
    InvariantReport report;
    for (std::size_t k = 1; k < series.omega.size(); ++k) {
        const double excess = series.omega[k] - series.omega[k - 1];
        if (excess > tol) {
            if (report.holds)
                report.first_violation = k;
            report.holds = false;
        }
        report.worst_excess = std::max(report.worst_excess, excess);
    }
    return report;
}

namespace {

using Point = std::array<double, 2>;

double cross(const Point& o, const Point& a, const Point& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double point_distance(const Point& a, const Point& b)
{
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double segment_distance(const Point& a, const Point& b, const Point& q)
{
    const double len2 = (b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]);
    if (len2 == 0.0)
        return point_distance(a, q);
    double t = ((q[0] - a[0]) * (b[0] - a[0]) + (q[1] - a[1]) * (b[1] - a[1])) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return point_distance({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])}, q);
}

// Largest distance by which q lies outside the hull (0 or negative when inside).
double hull_excess(const std::vector<Point>& hull, const Point& q)
{
    if (hull.size() == 1)
        return point_distance(hull[0], q);
    if (hull.size() == 2)
        return segment_distance(hull[0], hull[1], q);
    double worst = -INFINITY;
    for (std::size_t e = 0; e < hull.size(); ++e) {
        const Point& a = hull[e];
        const Point& b = hull[(e + 1) % hull.size()];
        const double len = point_distance(a, b);
        worst = std::max(worst, -cross(a, b, q) / len);
    }
    return worst;
}

} // namespace

std::vector<std::array<double, 2>> convex_hull_2d(std::span<const double> points)
{
    std::vector<Point> pts;
    for (std::size_t k = 0; k + 1 < points.size(); k += 2)
        pts.push_back({points[k], points[k + 1]});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0)
            --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 2)
        return hull;
    // all points collinear: keep the two extremes
    if (hull.size() == 2 || std::all_of(hull.begin(), hull.end(),
                                        [&](const Point& p) { return cross(hull[0], hull[1], p) == 0.0; }))
        return {pts.front(), pts.back()};
    return hull;
}

bool in_convex_hull(std::span<const double> points, std::size_t dim, std::span<const double> point, double tol)
{
    const std::size_t n = points.size() / dim;
    if (dim == 2) {
        const auto hull = convex_hull_2d(points);
        return hull_excess(hull, {point[0], point[1]}) <= tol;
    }
    for (std::size_t c = 0; c < dim; ++c) {
        double lo = INFINITY;
        double hi = -INFINITY;
        for (std::size_t i = 0; i < n; ++i) {
            lo = std::min(lo, points[i * dim + c]);
            hi = std::max(hi, points[i * dim + c]);
        }
        if (point[c] < lo - tol || point[c] > hi + tol)
            return false;
    }
    return true;
}

InvariantReport check_hull_contraction(const Trajectory& trajectory)
{
    InvariantReport report;
    const auto& states = trajectory.states;
    if (states.empty())
        return report;
    const std::size_t dim = states.front().dim();

    auto flag = [&](std::size_t k, double excess, double tol) {
        report.worst_excess = std::max(report.worst_excess, excess);
        if (excess > tol) {
            if (report.holds)
                report.first_violation = k;
            report.holds = false;
        }
    };

    if (dim != 2) {
        double previous = velocity_diameter(states.front());
        for (std::size_t k = 1; k < states.size(); ++k) {
            const double current = velocity_diameter(states[k]);
            flag(k, current - previous, 1e-10);
            previous = current;
        }
        return report;
    }

    constexpr double dilation = 1.0 + 1e-8;
    for (std::size_t k = 1; k < states.size(); ++k) {
        const auto& prev = states[k - 1];
        const auto hull = convex_hull_2d(prev.velocities());
        Point centre{0.0, 0.0};
        double scale = 0.0;
        for (std::size_t i = 0; i < prev.size(); ++i) {
            centre[0] += prev.velocity(i)[0] / static_cast<double>(prev.size());
            centre[1] += prev.velocity(i)[1] / static_cast<double>(prev.size());
            scale = std::max(scale, norm(prev.velocity(i)));
        }
        const double tol = 1e-12 * (1.0 + scale);
        double worst = -INFINITY;
        for (std::size_t i = 0; i < states[k].size(); ++i) {
            const auto v = states[k].velocity(i);
            const Point shrunk{centre[0] + (v[0] - centre[0]) / dilation, centre[1] + (v[1] - centre[1]) / dilation};
            worst = std::max(worst, hull_excess(hull, shrunk));
        }
        flag(k, worst, tol);
    }
    return report;
}

InvariantReport check_position_bound(const Trajectory& trajectory)
{
    InvariantReport report;
    if (trajectory.states.empty())
        return report;
    const auto series = compute_series(trajectory);
    const double x0 = series.max_position.front();
    const double w0 = series.omega.front();
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        const double excess = series.max_position[k] - (x0 + w0 * series.times[k]);
        report.worst_excess = std::max(report.worst_excess, excess);
        if (excess > 1e-9) {
            if (report.holds)
                report.first_violation = k;
            report.holds = false;
        }
    }
    return report;
}

double momentum_drift(const Trajectory& trajectory)
{
    if (trajectory.states.empty())
        return 0.0;
    const auto mean_velocity = [](const AgentEnsemble& state) {
        std::vector<double> mean(state.dim(), 0.0);
        for (std::size_t i = 0; i < state.size(); ++i)
            for (std::size_t c = 0; c < state.dim(); ++c)
                mean[c] += state.velocity(i)[c];
        for (double& value : mean)
            value /= static_cast<double>(state.size());
        return mean;
    };
    const auto v0 = mean_velocity(trajectory.states.front());
    double drift = 0.0;
    for (const auto& state : trajectory.states) {
        const auto vt = mean_velocity(state);
        drift = std::max(drift, distance(vt, v0));
    }
    return drift;
}

} // namespace tcs
