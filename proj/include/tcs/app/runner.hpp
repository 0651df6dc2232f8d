#pragma once

#include "tcs/app/config.hpp"

#include <filesystem>
#include <string>

namespace tcs::app {

inline constexpr int schema_version = 1;

/// Runs one configuration and writes trajectory.csv, switches.json,
/// diagnostics.csv and summary.json into config.output_dir.
/// Returns the summary document as text.
std::string run(const RunConfig& config);

/// Shortest round-trip decimal form of a finite double.
std::string format_double(double value);

} // namespace tcs::app
