#pragma once

// Reference scenarios on the line and the return map of the oscillating agent.
//
// Agent layout of the seven-agent scenarios: storage index k holds the agent
// labelled k - 3, i.e. labels -3, -2, -1, 0, 1, 2, 3 map to indices 0..6.

#include "tcs/ensemble.hpp"
#include "tcs/weights.hpp"

#include <cstddef>
#include <vector>

namespace tcs::examples {

/// Storage index of the central agent (label 0) in the seven-agent scenarios.
inline constexpr std::size_t central_agent = 3;

struct Scenario {
    AgentEnsemble ensemble;
    WeightFunction weights;
    /// False when the launch speed is large enough that the central agent can
    /// leave the strip where only its two inner neighbours compete for rank 2.
    bool confinement_holds = true;
};

/// Seven agents, each following only its second-closest neighbour; the
/// central agent starts at the origin with speed c.
Scenario scenario_example1(double c);

/// Seven agents, each averaging its two closest neighbours; the digraph loses
/// strong connectivity once the outer triplets compress.
Scenario scenario_example2();

/// n agents in [-1, 1] plus one at distance 5; the farthest neighbour gets
/// weight zero, so no path leads into the outlier.
Scenario scenario_example3(std::size_t n);

struct Excursion {
    double x;
    double v;
};

/// Closed-form first excursion of the central agent (sign(x) = +1 branch):
/// x(t) = (c+1)(1 - e^{-t}) - t, v(t) = (c+1)e^{-t} - 1.
Excursion analytic_example1(double t, double c);

/// First positive root tau of (c+1)(1 - e^{-tau}) = tau, bracketed in (c, 2c).
double return_time(double c);

struct ReturnMapRecord {
    double c;      ///< launch speed
    double tau;    ///< return time
    double s;      ///< return speed tau - c
    double t_turn; ///< ln(c+1)
    double x_turn; ///< c - ln(c+1)
};

struct ReturnMapResult {
    std::vector<ReturnMapRecord> records;
    std::vector<double> partial_sums; ///< running sums of the return times
};

/// Iterates c_{n+1} = s(c_n) for up to k_max excursions; stops early once the
/// speed falls below 1e-300.
ReturnMapResult return_map_iterate(double c0, std::size_t k_max);

} // namespace tcs::examples
