#include "tcs/app/config.hpp"
#include "tcs/app/runner.hpp"
#include "tcs/app/scenarios.hpp"

#include <CLI11.hpp>

#include <glob.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

struct Overrides {
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

tcs::app::RunConfig load(const std::string& path, const Overrides& o)
{
    auto config = tcs::app::parse_config(read_file(path));
    if (o.output_dir)
        config.output_dir = *o.output_dir;
    if (o.seed)
        config.seed = *o.seed;
    tcs::app::validate(config);
    return config;
}

int run_one(const std::string& path, const Overrides& o)
{
    try {
        const auto config = load(path, o);
        tcs::app::run(config);
        if (!o.quiet)
            std::cout << path << " -> " << config.output_dir << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << path << ": error: " << e.what() << "\n";
        return 1;
    }
}

std::vector<std::string> expand(const std::string& pattern)
{
    glob_t matches{};
    std::vector<std::string> paths;
    if (glob(pattern.c_str(), 0, nullptr, &matches) == 0)
        for (std::size_t k = 0; k < matches.gl_pathc; ++k)
            paths.emplace_back(matches.gl_pathv[k]);
    globfree(&matches);
    std::sort(paths.begin(), paths.end());
    return paths;
}

int sweep(const std::string& pattern, const Overrides& o)
{
    const auto paths = expand(pattern);
    if (paths.empty()) {
        std::cerr << "sweep: no config matches " << pattern << "\n";
        return 1;
    }
    std::vector<int> status(paths.size(), 0);
    const long count = static_cast<long>(paths.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) {
        const auto& path = paths[k];
        try {
            auto config = load(path, o);
            const std::string stem = std::filesystem::path(path).stem().string();
            config.output_dir = (std::filesystem::path(o.output_dir.value_or(config.output_dir)) / stem).string();
            tcs::app::run(config);
            if (!o.quiet) {
#pragma omp critical(sweep_log)
                std::cout << path << " -> " << config.output_dir << "\n";
            }
        } catch (const std::exception& e) {
#pragma omp critical(sweep_log)
            std::cerr << path << ": error: " << e.what() << "\n";
            status[k] = 1;
        }
    }
    return std::count(status.begin(), status.end(), 1) == 0 ? 0 : 1;
}

void list_scenarios()
{
    for (const auto& info : tcs::app::scenario_registry()) {
        std::cout << info.name << "\n  models:";
        for (const auto& m : info.models)
            std::cout << " " << m;
        std::cout << "\n  required:";
        for (const auto& r : info.required)
            std::cout << " " << r;
        std::cout << "\n  " << info.description << "\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Topological Cucker-Smale flocking simulator"};
    app.require_subcommand(1);

    Overrides overrides;
    std::string output_dir;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output-dir", output_dir, "Override the output directory");
        cmd->add_option("--seed", seed, "Override the random seed");
        cmd->add_flag("--quiet", overrides.quiet, "Suppress progress output");
    };

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run one configuration");
    run_cmd->add_option("config", config_path, "JSON config file")->required();
    add_common(run_cmd);

    std::string pattern;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run every config matching a glob (in parallel)");
    sweep_cmd->add_option("config-glob", pattern, "Glob pattern, quote it to keep the shell from expanding it")
        ->required();
    add_common(sweep_cmd);

    app.add_subcommand("list-scenarios", "List the scenario registry");

    CLI11_PARSE(app, argc, argv);

    for (auto* cmd : {run_cmd, sweep_cmd}) {
        if (cmd->count("--output-dir"))
            overrides.output_dir = output_dir;
        if (cmd->count("--seed"))
            overrides.seed = seed;
    }

    if (*run_cmd)
        return run_one(config_path, overrides);
    if (*sweep_cmd)
        return sweep(pattern, overrides);
    list_scenarios();
    return 0;
}
