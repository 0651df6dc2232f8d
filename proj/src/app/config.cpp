#include "tcs/app/config.hpp"

#include "tcs/app/scenarios.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace tcs::app {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

enum class Kind { text, count, real, flag, reals };

struct Field {
    const char* name;
    Kind kind;
    std::function<void(RunConfig&, const json&)> read;
    std::function<ordered_json(const RunConfig&)> write;
};

template <class T>
Field field(const char* name, Kind kind, T RunConfig::*member)
{
    return {name, kind, [member](RunConfig& c, const json& j) { c.*member = j.get<T>(); },
            [member](const RunConfig& c) { return ordered_json(c.*member); }};
}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table{
        field("scenario", Kind::text, &RunConfig::scenario),
        field("model", Kind::text, &RunConfig::model),
        field("n_agents", Kind::count, &RunConfig::n_agents),
        field("dim", Kind::count, &RunConfig::dim),
        field("dt", Kind::real, &RunConfig::dt),
        field("t_end", Kind::real, &RunConfig::t_end),
        field("sample_every", Kind::count, &RunConfig::sample_every),
        field("seed", Kind::count, &RunConfig::seed),
        field("refine_switches", Kind::flag, &RunConfig::refine_switches),
        field("output_dir", Kind::text, &RunConfig::output_dir),
        field("weights", Kind::text, &RunConfig::weights),
        field("g_table", Kind::reals, &RunConfig::g_table),
        field("lambda", Kind::real, &RunConfig::lambda),
        field("sigma", Kind::real, &RunConfig::sigma),
        field("beta", Kind::real, &RunConfig::beta),
        field("kernel_params", Kind::reals, &RunConfig::kernel_params),
        field("c", Kind::real, &RunConfig::c),
        field("epsilon", Kind::real, &RunConfig::epsilon),
        field("g0", Kind::real, &RunConfig::g0),
        field("a", Kind::real, &RunConfig::a),
        field("b", Kind::real, &RunConfig::b),
        field("C_R", Kind::real, &RunConfig::C_R),
        field("l_R", Kind::real, &RunConfig::l_R),
        field("C_A", Kind::real, &RunConfig::C_A),
        field("l_A", Kind::real, &RunConfig::l_A),
    };
    return table;
}

const char* kind_name(Kind kind)
{
    switch (kind) {
    case Kind::text: return "a string";
    case Kind::count: return "a nonnegative integer";
    case Kind::real: return "a number";
    case Kind::flag: return "a boolean";
    case Kind::reals: return "an array of numbers";
    }
    return "?";
}

bool matches(Kind kind, const json& value)
{
    switch (kind) {
    case Kind::text: return value.is_string();
    case Kind::count: return value.is_number_unsigned() || (value.is_number_integer() && value.get<long long>() >= 0);
    case Kind::real: return value.is_number();
    case Kind::flag: return value.is_boolean();
    case Kind::reals:
        return value.is_array() && std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); });
    }
    return false;
}

// Defaults that depend on the scenario, applied to keys absent from the document.
void apply_defaults(RunConfig& c, const std::set<std::string>& given)
{
    auto unset = [&](const char* key) { return !given.contains(key); };
    const auto& info = find_scenario(c.scenario);
    if (unset("model"))
        c.model = info.models.front();
    if (unset("output_dir"))
        c.output_dir = "out/" + c.scenario;

    auto table_of = [](std::size_t n, std::initializer_list<std::pair<std::size_t, double>> entries) {
        std::vector<double> g(n, 0.0);
        for (const auto& [k, value] : entries)
            if (k < n)
                g[k] = value;
        return g;
    };

    const std::string& s = c.scenario;
    if (s == "example1" || s == "example2") {
        if (unset("n_agents"))
            c.n_agents = 7;
        if (unset("refine_switches"))
            c.refine_switches = true;
        if (unset("g_table"))
            c.g_table = s == "example1" ? table_of(7, {{2, 1.0}}) : table_of(7, {{1, 0.5}, {2, 0.5}});
    } else if (s == "example3") {
        if (unset("n_agents"))
            c.n_agents = 10;
        if (unset("g_table")) {
            c.g_table.assign(c.n_agents, 1.0);
            c.g_table.front() = 0.0;
            c.g_table.back() = 0.0;
        }
    } else if (s == "complete_digraph") {
        if (unset("n_agents"))
            c.n_agents = 10;
        if (unset("dim"))
            c.dim = 2;
        if (unset("g_table"))
            c.g_table.assign(c.n_agents, 1.0);
    } else if (s == "random_flock" || s == "fixed_topology") {
        if (unset("n_agents"))
            c.n_agents = s == "random_flock" ? 10 : 8;
        if (unset("dim"))
            c.dim = 2;
        if (c.model == "metric" && unset("weights"))
            c.weights = "metric";
        if (unset("g_table") && c.weights == "table") {
            if (s == "random_flock") {
                c.g_table = table_of(c.n_agents, {{1, 1.0}, {2, 1.0}, {3, 1.0}});
            } else {
                // g(k) = 1/k: complete but unbalanced digraph
                c.g_table.assign(c.n_agents, 0.0);
                for (std::size_t k = 1; k < c.n_agents; ++k)
                    c.g_table[k] = 1.0 / static_cast<double>(k);
            }
        }
    } else if (s == "meanfield") {
        if (unset("n_agents"))
            c.n_agents = 100;
        if (unset("weights"))
            c.weights = "exponential";
        if (unset("kernel_params") && c.weights == "exponential")
            c.kernel_params = {1.0, 0.5};
    } else if (s == "hydro") {
        if (unset("n_agents"))
            c.n_agents = 64;
        if (unset("weights"))
            c.weights = "affine";
        if (unset("kernel_params") && c.weights == "affine")
            c.kernel_params = {c.g0, 2.0 * (1.0 - c.g0)};
    } else if (s == "swarm") {
        if (unset("n_agents"))
            c.n_agents = 100;
        if (unset("dim"))
            c.dim = 2;
    }
    if (unset("kernel_params") && c.kernel_params.empty()) {
        if (c.weights == "constant")
            c.kernel_params = {1.0};
        else if (c.weights == "exponential")
            c.kernel_params = {1.0, 0.5};
        else if (c.weights == "affine")
            c.kernel_params = {1.0, 0.0};
    }
}

bool is_kernel_family(const std::string& w)
{
    return w == "constant" || w == "exponential" || w == "affine";
}

void require(bool condition, const char* key, const std::string& message)
{
    if (!condition)
        throw ConfigError(key, message);
}

} // namespace

void validate(const RunConfig& c)
{
    const auto& info = find_scenario(c.scenario);
    require(std::find(info.models.begin(), info.models.end(), c.model) != info.models.end(), "model",
            "model '" + c.model + "' is not available for scenario '" + c.scenario + "'");
    require(c.dt > 0.0 && std::isfinite(c.dt), "dt", "must be positive");
    require(c.t_end > 0.0 && std::isfinite(c.t_end), "t_end", "must be positive");
    require(c.sample_every >= 1, "sample_every", "must be at least 1");
    require(c.dim >= 1 && c.dim <= 3, "dim", "must be 1, 2 or 3");
    require(c.n_agents >= 2, "n_agents", "must be at least 2");
    require(!c.output_dir.empty(), "output_dir", "must not be empty");

    if (c.scenario == "example1" || c.scenario == "example2") {
        require(c.n_agents == 7, "n_agents", "this scenario has exactly 7 agents");
        require(c.dim == 1, "dim", "this scenario lives on the line");
    }
    if (c.scenario == "example1")
        require(c.c > 0.0, "c", "launch speed must be positive");
    if (c.scenario == "example3") {
        require(c.dim == 1, "dim", "this scenario lives on the line");
        require(c.n_agents >= 3, "n_agents", "needs at least 3 agents");
    }
    if (c.model == "hydro")
        require(c.dim == 1, "dim", "the hydrodynamic solver is one-dimensional");
    if (c.model == "swarm") {
        require(c.dim == 2, "dim", "the swarm scenario is two-dimensional");
        require(c.a >= 0.0, "a", "must be nonnegative");
        require(c.b >= 0.0, "b", "must be nonnegative");
        require(c.C_R >= 0.0, "C_R", "must be nonnegative");
        require(c.C_A >= 0.0, "C_A", "must be nonnegative");
        require(c.l_R > 0.0, "l_R", "must be positive");
        require(c.l_A > 0.0, "l_A", "must be positive");
        return;
    }
    if (c.model == "hydro")
        require(c.g0 > 0.0, "g0", "must be positive");

    const bool topological = c.model == "topological" || c.model == "fixed-topology";
    if (c.model == "metric") {
        require(c.weights == "metric", "weights", "metric model needs weights = \"metric\"");
        require(c.lambda > 0.0, "lambda", "must be positive");
        require(c.sigma > 0.0, "sigma", "must be positive");
        require(c.beta > 0.0, "beta", "must be positive");
    } else if (topological) {
        require(c.weights == "table" || is_kernel_family(c.weights), "weights",
                "topological models take a table or a kernel family");
    } else {
        require(is_kernel_family(c.weights), "weights", "this model needs a kernel family");
    }
    if (c.weights == "table") {
        require(c.g_table.size() >= c.n_agents, "g_table", "needs at least n_agents entries");
        require(std::all_of(c.g_table.begin(), c.g_table.end(), [](double g) { return g >= 0.0; }), "g_table",
                "entries must be nonnegative");
    }
    if (is_kernel_family(c.weights)) {
        const std::size_t want = c.weights == "constant" ? 1 : 2;
        require(c.kernel_params.size() == want, "kernel_params",
                "'" + c.weights + "' takes " + std::to_string(want) + " parameter(s)");
    }
}

RunConfig parse_config(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("<document>", "expected a JSON object");

    RunConfig config;
    std::set<std::string> given;
    for (const auto& [key, value] : doc.items()) {
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return key == f.name; });
        if (it == table.end())
            throw ConfigError(key, "unknown key");
        if (!matches(it->kind, value))
            throw ConfigError(key, std::string("expected ") + kind_name(it->kind));
        it->read(config, value);
        given.insert(key);
    }
    if (!given.contains("scenario"))
        throw ConfigError("scenario", "missing required key");
    for (const auto& key : find_scenario(config.scenario).required)
        if (!given.contains(key))
            throw ConfigError(key, "missing required key for scenario '" + config.scenario + "'");
    apply_defaults(config, given);
    validate(config);
    return config;
}

std::string emit_config(const RunConfig& config)
{
    ordered_json doc = ordered_json::object();
    for (const auto& f : fields())
        doc[f.name] = f.write(config);
    return doc.dump(2) + "\n";
}

} // namespace tcs::app
