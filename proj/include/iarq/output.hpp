#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "iarq/serialization.hpp"
#include "iarq/simulator.hpp"

namespace iarq {

/// Shortest round-trip decimal form; "inf" for the infinite uncertainty marker.
std::string format_double(double v);
std::string format_uncertainty(const Uncertainty& u);

// CSV writers. Column layouts are listed in the README.
void write_curve_csv(std::ostream& out, const RunLog& log);
void write_decisions_csv(std::ostream& out, const RunLog& log);
void write_aggregate_csv(std::ostream& out, const AggregateCurve& agg);

struct RunFiles {
    std::filesystem::path curve;
    std::filesystem::path decisions;
    std::filesystem::path summary;
};

/// Writes {stem}.csv, {stem}_decisions.csv and {stem}.json into `dir`. The JSON holds the
/// config echo under "config" and run_summary() under "summary".
RunFiles write_run(const std::filesystem::path& dir, const RunLog& log, const Json& config_echo);

} // namespace iarq
