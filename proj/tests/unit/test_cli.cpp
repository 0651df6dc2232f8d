#include "tcs/app/config.hpp"
#include "tcs/app/runner.hpp"
#include "tcs/app/scenarios.hpp"
#include "tcs/rng.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tcs::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("tcs_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void write(const fs::path& path, const std::string& text)
{
    std::ofstream(path, std::ios::binary) << text;
}

struct Outcome {
    int status;
    std::string err;
    std::string out;
};

Outcome invoke(const std::string& args, const fs::path& dir)
{
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string command =
        std::string(TCS_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int raw = std::system(command.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(err), slurp(out)};
}

std::string expect_error_key(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<no error>";
}

std::size_t count_columns(const std::string& line)
{
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

} // namespace

TEST(Config, ErrorsNameTheKey)
{
    EXPECT_EQ(expect_error_key(R"({"scenario": "example1", "dtt": 0.1, "dt": 0.1, "t_end": 1, "c": 0.5})"), "dtt");
    EXPECT_EQ(expect_error_key(R"({"scenario": "example1", "dt": 0.1, "c": 0.5})"), "t_end");
    EXPECT_EQ(expect_error_key(R"({"scenario": "example1", "dt": "fast", "t_end": 1, "c": 0.5})"), "dt");
    EXPECT_EQ(expect_error_key(R"({"dt": 0.1, "t_end": 1})"), "scenario");
    EXPECT_EQ(expect_error_key(R"({"scenario": "nowhere", "dt": 0.1, "t_end": 1})"), "scenario");
    EXPECT_EQ(expect_error_key(R"({"scenario": "random_flock", "dt": -0.1, "t_end": 1})"), "dt");
    EXPECT_EQ(expect_error_key(R"({"scenario": "random_flock", "dt": 0.1, "t_end": 1, "model": "swarm"})"),
              "model");
    EXPECT_EQ(expect_error_key(R"({"scenario": "random_flock", "dt": 0.1, "t_end": 1, "n_agents": 1})"),
              "n_agents");
    EXPECT_EQ(expect_error_key(R"({"scenario": "swarm", "dt": 0.1, "t_end": 1, "dim": 3})"), "dim");
    EXPECT_EQ(expect_error_key("[1, 2]"), "<document>");
}

TEST(Config, DefaultsFromRegistry)
{
    const auto c = parse_config(R"({"scenario": "example1", "dt": 0.001, "t_end": 2, "c": 0.5})");
    EXPECT_EQ(c.model, "topological");
    EXPECT_EQ(c.n_agents, 7u);
    EXPECT_TRUE(c.refine_switches);
    EXPECT_EQ(c.output_dir, "out/example1");
    EXPECT_EQ(c.g_table, (std::vector<double>{0, 0, 1, 0, 0, 0, 0}));
    EXPECT_EQ(scenario_registry().size(), 9u);
    EXPECT_THROW(find_scenario("bogus"), ConfigError);
}

TEST(Config, RoundTripOfGeneratedConfigs)
{
    tcs::Rng rng(99);
    const auto& registry = scenario_registry();
    for (int trial = 0; trial < 100; ++trial) {
        const auto& info = registry[trial % registry.size()];
        json doc;
        doc["scenario"] = info.name;
        doc["model"] = info.models[rng() % info.models.size()];
        doc["dt"] = 0.001 * (1 + rng() % 50);
        doc["t_end"] = 0.5 + tcs::uniform01(rng);
        doc["seed"] = rng();
        doc["sample_every"] = 1 + rng() % 5;
        if (info.name == "example1")
            doc["c"] = 0.1 + tcs::uniform01(rng);
        if (info.name == "meanfield")
            doc["epsilon"] = tcs::uniform01(rng) < 0.5 ? -1.0 : tcs::uniform01(rng);
        if (info.name == "swarm")
            doc["l_A"] = 0.05 + tcs::uniform01(rng);
        if (info.name == "hydro")
            doc["g0"] = 0.1 + 0.8 * tcs::uniform01(rng);
        if (info.name == "random_flock" && doc["model"] == "metric")
            doc["beta"] = tcs::uniform01(rng);
        const auto parsed = parse_config(doc.dump());
        const auto text = emit_config(parsed);
        const auto reparsed = parse_config(text);
        EXPECT_EQ(parsed, reparsed) << text;
        EXPECT_EQ(emit_config(reparsed), text);
        EXPECT_EQ(parsed.seed, doc["seed"].get<std::uint64_t>());
    }
}

TEST(Runner, FormatDoubleRoundTrips)
{
    tcs::Rng rng(5);
    for (int k = 0; k < 1000; ++k) {
        const double value = (tcs::uniform01(rng) - 0.5) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        EXPECT_EQ(std::stod(format_double(value)), value);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Runner, Example1ReturnTimeAndFiles)
{
    const auto dir = scratch("example1");
    auto config = parse_config(R"({"scenario": "example1", "dt": 0.001, "t_end": 1.5, "c": 0.5, "sample_every": 10})");
    config.output_dir = dir.string();
    const auto summary = json::parse(run(config));
    EXPECT_EQ(summary["schema_version"], 1);
    const auto& report = summary["scenario_report"];
    EXPECT_LE(report["return_time_error"].get<double>(), 1e-6);
    EXPECT_NEAR(report["predicted_return_time"].get<double>(), 0.874217465798717, 1e-12);
    for (const char* name : {"trajectory.csv", "switches.json", "diagnostics.csv", "summary.json"})
        EXPECT_TRUE(fs::exists(dir / name)) << name;

    std::ifstream csv(dir / "trajectory.csv");
    std::string line;
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        EXPECT_EQ(count_columns(line), 1u + 2u * 7u);
        ++rows;
    }
    EXPECT_EQ(rows, 1u + 151u);
    const auto switches = json::parse(slurp(dir / "switches.json"));
    EXPECT_EQ(switches["event_count"], switches["events"].size());
    EXPECT_GE(switches["event_count"].get<std::size_t>(), 1u);
}

TEST(Runner, FixedTopologyPrediction)
{
    const auto dir = scratch("fixed");
    auto config = parse_config(R"({"scenario": "fixed_topology", "dt": 0.01, "t_end": 40, "seed": 4})");
    config.output_dir = dir.string();
    const auto summary = json::parse(run(config));
    ASSERT_TRUE(summary["scenario_report"]["strongly_connected"].get<bool>());
    EXPECT_LE(summary["scenario_report"]["prediction_error"].get<double>(), 1e-6);
    std::ifstream csv(dir / "trajectory.csv");
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(count_columns(header), 1u + 2u * 8u * 2u);
}

TEST(Cli, ListScenarios)
{
    const auto dir = scratch("list");
    const auto r = invoke("list-scenarios", dir);
    EXPECT_EQ(r.status, 0);
    for (const auto& info : scenario_registry())
        EXPECT_NE(r.out.find(info.name), std::string::npos);
}

TEST(Cli, UnknownKeyExitsWithMessage)
{
    const auto dir = scratch("badkey");
    write(dir / "bad.json", R"({"scenario": "example1", "dtt": 0.1, "dt": 0.1, "t_end": 1})");
    const auto r = invoke("run " + (dir / "bad.json").string(), dir);
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.err.find("dtt"), std::string::npos);
    EXPECT_NE(invoke("run " + (dir / "missing.json").string(), dir).status, 0);
}

TEST(Cli, RerunsAreByteIdentical)
{
    const auto dir = scratch("rerun");
    write(dir / "flock.json", R"({"scenario": "random_flock", "dt": 0.01, "t_end": 2, "n_agents": 12})");
    const std::string args = "run " + (dir / "flock.json").string() + " --seed 17 --quiet --output-dir " +
                             (dir / "out").string();
    const char* files[] = {"trajectory.csv", "switches.json", "diagnostics.csv", "summary.json"};
    std::vector<std::string> first;
    auto r = invoke(args, dir);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    for (const char* name : files)
        first.push_back(slurp(dir / "out" / name));
    r = invoke(args, dir);
    ASSERT_EQ(r.status, 0) << r.err;
    for (std::size_t k = 0; k < first.size(); ++k) {
        EXPECT_FALSE(first[k].empty());
        EXPECT_EQ(slurp(dir / "out" / files[k]), first[k]) << files[k];
    }
    const auto summary = json::parse(first.back());
    EXPECT_EQ(summary["config"]["seed"], 17);
}

TEST(Cli, SweepRunsEveryMatch)
{
    const auto dir = scratch("sweep");
    write(dir / "one.json", R"({"scenario": "example3", "dt": 0.01, "t_end": 1})");
    write(dir / "two.json", R"({"scenario": "complete_digraph", "dt": 0.01, "t_end": 1})");
    const auto r = invoke("sweep '" + (dir / "*.json").string() + "' --quiet --output-dir " + (dir / "out").string(),
                          dir);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "out" / "one" / "summary.json"));
    EXPECT_TRUE(fs::exists(dir / "out" / "two" / "summary.json"));
    EXPECT_NE(invoke("sweep '" + (dir / "*.none").string() + "'", dir).status, 0);
}
