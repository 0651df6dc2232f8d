#include "tcs/app/runner.hpp"

#include "tcs/diagnostics.hpp"
#include "tcs/dynamics.hpp"
#include "tcs/examples.hpp"
#include "tcs/graph.hpp"
#include "tcs/hydro.hpp"
#include "tcs/meanfield.hpp"
#include "tcs/rng.hpp"
#include "tcs/swarm.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>

namespace tcs::app {

namespace {

using nlohmann::ordered_json;

// Independent random streams of one run.
enum Stream : std::uint64_t { positions_stream = 1, velocities_stream = 2 };

std::string hex(std::uint64_t value)
{
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

NormalizedKernel kernel_of(const RunConfig& c)
{
    const auto& p = c.kernel_params;
    if (c.weights == "constant")
        return NormalizedKernel::constant(p.at(0));
    if (c.weights == "exponential")
        return NormalizedKernel::exponential(p.at(0), p.at(1));
    if (c.weights == "affine")
        return NormalizedKernel::affine(p.at(0), p.at(1));
    throw ConfigError("weights", "'" + c.weights + "' is not a kernel family");
}

WeightFunction weights_of(const RunConfig& c)
{
    if (c.weights == "table")
        return WeightFunction::discrete(c.g_table);
    if (c.weights == "metric")
        return WeightFunction::metric(c.lambda, c.sigma, c.beta);
    return WeightFunction::normalized(kernel_of(c));
}

AgentEnsemble random_ensemble(const RunConfig& c)
{
    Rng xs(stream_seed(c.seed, positions_stream));
    Rng vs(stream_seed(c.seed, velocities_stream));
    std::vector<double> x(c.n_agents * c.dim), v(c.n_agents * c.dim);
    for (double& value : x)
        value = uniform(xs, -1.0, 1.0);
    for (double& value : v)
        value = uniform(vs, -1.0, 1.0);
    return AgentEnsemble(c.dim, std::move(x), std::move(v));
}

ordered_json vector_json(std::span<const double> values)
{
    ordered_json out = ordered_json::array();
    for (double value : values)
        out.push_back(value);
    return out;
}

struct Outcome {
    Trajectory trajectory;
    ordered_json extra = ordered_json::object();
};

Outcome run_particles(const RunConfig& c)
{
    const std::string& s = c.scenario;
    std::optional<examples::Scenario> scenario;
    if (s == "example1")
        scenario = examples::scenario_example1(c.c);
    else if (s == "example2")
        scenario = examples::scenario_example2();
    else if (s == "example3")
        scenario = examples::scenario_example3(c.n_agents);
    const AgentEnsemble initial = scenario ? scenario->ensemble : random_ensemble(c);

    SimulationOptions options;
    options.sample_every = c.sample_every;
    options.refine_switches = c.refine_switches;
    Outcome out{simulate(initial, weights_of(c), c.dt, c.t_end, options)};

    if (s == "example1") {
        const double predicted = examples::return_time(c.c);
        out.extra["c"] = c.c;
        out.extra["confinement_holds"] = scenario->confinement_holds;
        out.extra["predicted_return_time"] = predicted;
        const auto& events = out.trajectory.switch_log.events;
        if (events.empty()) {
            out.extra["first_return_time"] = nullptr;
            out.extra["return_time_error"] = nullptr;
        } else {
            out.extra["first_return_time"] = events.front().time;
            out.extra["return_time_error"] = std::abs(events.front().time - predicted);
        }
    }
    if (s == "example2" || s == "example3") {
        ordered_json transitions = ordered_json::array();
        for (const auto& e : out.trajectory.switch_log.events)
            if (e.before != e.after)
                transitions.push_back(
                    {{"time", e.time}, {"before", to_string(e.before)}, {"after", to_string(e.after)}});
        out.extra["connectivity_transitions"] = transitions;
    }
    return out;
}

Outcome run_fixed(const RunConfig& c)
{
    const AgentEnsemble initial = random_ensemble(c);
    const Topology topology = communication_matrix(initial, weights_of(c));
    Outcome out{simulate_fixed_topology(initial, topology, c.dt, c.t_end, c.sample_every)};
    const auto cert = left_null_vector(topology);
    out.extra["strongly_connected"] = strongly_connected_components(topology).is_strong;
    out.extra["kernel_dimension"] = cert.kernel_dimension;
    if (cert.valid) {
        const auto predicted = predict_consensus(cert, initial.velocities(), initial.dim());
        const auto& final_state = out.trajectory.states.back();
        double error = 0.0;
        for (std::size_t i = 0; i < final_state.size(); ++i)
            error = std::max(error, distance(final_state.velocity(i), predicted));
        out.extra["xi"] = vector_json(cert.xi);
        out.extra["prediction"] = vector_json(predicted);
        out.extra["prediction_error"] = error;
    } else {
        out.extra["prediction"] = nullptr;
    }
    return out;
}

Outcome run_meanfield(const RunConfig& c)
{
    Rng rng(stream_seed(c.seed, positions_stream));
    const AgentEnsemble initial = meanfield::sample_uniform_cloud(c.n_agents, c.dim, rng);
    meanfield::SeparationChoice separation;
    if (c.epsilon == 0.0)
        separation = meanfield::default_mollifier(initial);
    else if (c.epsilon > 0.0)
        separation = meanfield::Mollifier(c.epsilon);
    Outcome out{meanfield::simulate_meanfield_particles(initial, kernel_of(c), separation, c.dt, c.t_end,
                                                       c.sample_every)};
    if (separation)
        out.extra["epsilon"] = separation->epsilon;
    else
        out.extra["epsilon"] = "sharp";
    return out;
}

Outcome run_hydro(const RunConfig& c)
{
    Rng xs(stream_seed(c.seed, positions_stream));
    Rng us(stream_seed(c.seed, velocities_stream));
    std::vector<double> X(c.n_agents), U(c.n_agents);
    for (double& value : X)
        value = uniform(xs, -1.0, 1.0);
    for (double& value : U)
        value = uniform(us, -1.0, 1.0);
    auto state = hydro::uniform_state(std::move(X), std::move(U));
    state.g0 = c.g0;
    const auto kernel = kernel_of(c);
    const auto samples = hydro::simulate_hydro(state, kernel, c.dt, c.t_end, c.sample_every);

    Outcome out;
    out.trajectory.switch_log.t_end = c.t_end;
    for (const auto& sample : samples) {
        out.trajectory.times.push_back(sample.time);
        out.trajectory.states.emplace_back(1, sample.state.X, sample.state.U);
    }
    const auto report = hydro::prop2_check(samples, c.g0);
    out.extra["prop2"] = {{"g0", c.g0},
                          {"gamma", kernel.gamma()},
                          {"kernel_min", kernel.inf()},
                          {"holds", report.holds},
                          {"worst_ratio", report.worst_ratio},
                          {"sup_d_x", report.sup_d_x},
                          {"d_u_final", report.d_u.back()}};
    return out;
}

Outcome run_swarm(const RunConfig& c)
{
    const swarm::SwarmParams params{c.a, c.b, c.C_R, c.l_R, c.C_A, c.l_A};
    Rng rng(stream_seed(c.seed, positions_stream));
    const AgentEnsemble initial = swarm::random_initial(c.n_agents, c.dim, rng);
    Outcome out{swarm::simulate_swarm(initial, params, c.dt, c.t_end, c.sample_every)};
    const auto metrics = swarm::pattern_metrics(out.trajectory, params);
    out.extra["cluster_cutoff"] = 3.0 * params.l_R;
    out.extra["final_polarization"] = metrics.polarization.back();
    out.extra["final_angular_momentum"] = metrics.angular_momentum.back();
    out.extra["final_clusters"] = metrics.clusters.back();
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("error while writing " + path.string());
}

std::string trajectory_csv(const Trajectory& traj)
{
    const auto& first = traj.states.front();
    const std::size_t n = first.size();
    const std::size_t dim = first.dim();
    std::string text = "t";
    for (const char* prefix : {"x", "v"})
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t c = 1; c <= dim; ++c)
                text += "," + std::string(prefix) + std::to_string(i) + (dim > 1 ? "_" + std::to_string(c) : "");
    text += "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        text += format_double(traj.times[k]);
        for (double value : traj.states[k].positions())
            text += "," + format_double(value);
        for (double value : traj.states[k].velocities())
            text += "," + format_double(value);
        text += "\n";
    }
    return text;
}

std::string diagnostics_csv(const DiagnosticsSeries& s, std::size_t dim)
{
    std::string text = "t,omega,vel_diameter,pos_fluctuation";
    for (std::size_t c = 1; c <= dim; ++c)
        text += ",momentum_" + std::to_string(c);
    text += ",max_position\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        text += format_double(s.times[k]) + "," + format_double(s.omega[k]) + "," +
                format_double(s.vel_diameter[k]) + "," + format_double(s.pos_fluctuation[k]);
        for (double value : s.momentum[k])
            text += "," + format_double(value);
        text += "," + format_double(s.max_position[k]) + "\n";
    }
    return text;
}

ordered_json switches_json(const SwitchLog& log)
{
    ordered_json events = ordered_json::array();
    for (const auto& e : log.events)
        events.push_back({{"time", e.time},
                          {"old_hash", hex(e.old_hash)},
                          {"new_hash", hex(e.new_hash)},
                          {"before", to_string(e.before)},
                          {"after", to_string(e.after)}});
    ordered_json occupancy = ordered_json::array();
    for (const auto& [hash, duration] : log.occupancy())
        occupancy.push_back({{"hash", hex(hash)}, {"time", duration}});
    return {{"initial_hash", hex(log.initial_hash)},
            {"initial_connectivity", to_string(log.initial_connectivity)},
            {"t_end", log.t_end},
            {"event_count", log.events.size()},
            {"events", events},
            {"occupancy", occupancy}};
}

} // namespace

std::string format_double(double value)
{
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    if (result.ec == std::errc())
        return std::string(buf, result.ptr);
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string run(const RunConfig& config)
{
    validate(config);
    Outcome out;
    if (config.model == "fixed-topology")
        out = run_fixed(config);
    else if (config.model == "meanfield")
        out = run_meanfield(config);
    else if (config.model == "hydro")
        out = run_hydro(config);
    else if (config.model == "swarm")
        out = run_swarm(config);
    else
        out = run_particles(config);

    const auto& traj = out.trajectory;
    const auto series = compute_series(traj);
    const auto verdict = check_flocking(series);
    const auto omega = check_omega_monotone(series);
    const auto hull = check_hull_contraction(traj);
    const auto bound = check_position_bound(traj);

    ordered_json flocking = {{"flocked", verdict.flocked}, {"t_flock", nullptr}, {"v_consensus", nullptr}};
    if (verdict.t_flock)
        flocking["t_flock"] = *verdict.t_flock;
    if (verdict.v_consensus)
        flocking["v_consensus"] = vector_json(*verdict.v_consensus);

    ordered_json summary = ordered_json::object();
    summary["schema_version"] = schema_version;
    summary["config"] = ordered_json::parse(emit_config(config));
    summary["flocking"] = flocking;
    summary["final_mean_velocity"] = vector_json(series.momentum.back());
    summary["final_velocity_diameter"] = series.vel_diameter.back();
    summary["drift"] = {{"momentum_drift", momentum_drift(traj)}};
    summary["invariants"] = {{"omega_monotone", omega.holds},
                             {"omega_worst_excess", omega.worst_excess},
                             {"hull_contraction", hull.holds},
                             {"position_bound", bound.holds}};
    summary["switch_count"] = traj.switch_log.events.size();
    summary["scenario_report"] = out.extra;

    const std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "trajectory.csv", trajectory_csv(traj));
    write_file(dir / "switches.json", switches_json(traj.switch_log).dump(2) + "\n");
    write_file(dir / "diagnostics.csv", diagnostics_csv(series, traj.states.front().dim()));
    const std::string text = summary.dump(2) + "\n";
    write_file(dir / "summary.json", text);
    return text;
}

} // namespace tcs::app
