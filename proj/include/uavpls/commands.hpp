#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "uavpls/config.hpp"

namespace uavpls {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Column header shared by the zone-sweep, optimize and altitude-sweep tables.
std::vector<std::string> sweep_csv_columns();
std::string sweep_csv_row(const SweepResult& r);

const std::vector<std::string>& known_commands();

/**
 * Runs one experiment command and writes its CSV tables plus manifest.json
 * into `out_dir` (created if missing). `validate` only prints the resolved
 * config. Returns the process exit status; errors are reported on `err`.
 */
int run_command(std::string_view command, const ExperimentConfig& cfg,
                const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

}  // namespace uavpls
