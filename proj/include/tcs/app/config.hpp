#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcs::app {

/// Thrown for malformed or invalid configuration documents; the message
/// names the offending key.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key))
    {
    }
    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

/// Fully resolved run description. The on-disk form is a flat JSON object
/// whose keys are the member names below.
struct RunConfig {
    std::string scenario;
    std::string model;
    std::size_t n_agents = 0;
    std::size_t dim = 1;
    double dt = 0.0;
    double t_end = 0.0;
    std::size_t sample_every = 1;
    std::uint64_t seed = 0;
    bool refine_switches = false;
    std::string output_dir = "out";

    /// table | metric | constant | exponential | affine
    std::string weights = "table";
    std::vector<double> g_table;
    double lambda = 1.0;
    double sigma = 1.0;
    double beta = 0.25;
    /// constant: {c}; exponential: {scale, length}; affine: {c0, c1}
    std::vector<double> kernel_params;

    double c = 0.5;
    /// Mollifier width; 0 selects 0.05 * initial spatial diameter, negative the sharp count.
    double epsilon = 0.0;
    double g0 = 0.5;

    double a = 1.0;
    double b = 0.5;
    double C_R = 1.0;
    double l_R = 0.5;
    double C_A = 1.0;
    double l_A = 0.1;

    bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON document, fills registry defaults for the chosen scenario and
/// validates the result.
RunConfig parse_config(const std::string& text);

/// Canonical JSON text of a config (every key, stable order).
std::string emit_config(const RunConfig& config);

/// Re-checks invariants after command-line overrides.
void validate(const RunConfig& config);

} // namespace tcs::app
