#pragma once

#include "jetframe/parallel.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace jetframe {

inline constexpr const char* kSchemaVersion = "1.0.0";
inline constexpr const char* kArtifactVersion = "0.1.0";

/// Suites in declaration order.
const std::vector<std::string>& suite_names();

struct RunConfig {
    unsigned n = 2;
    unsigned d = 3;
    unsigned chart = 1;
    std::uint64_t seed = 0;
    unsigned trials = 5;
    std::vector<std::string> suites = suite_names();
    Exec exec = Exec::Parallel;

    /// Throws std::invalid_argument on d <= n, a chart outside [1, n+1] or an unknown suite.
    void validate() const;
};

/// Parses a comma list, rejects unknown names and returns the selection in declaration order.
std::vector<std::string> parse_suites(const std::string& list);

/// Runs the selected suites and assembles the report.
nlohmann::json run(const RunConfig& config);

bool report_passed(const nlohmann::json& report);

/// The report with every timing field removed.
nlohmann::json strip_timing(nlohmann::json report);

nlohmann::json report_schema();

std::string render_text(const nlohmann::json& report);

}  // namespace jetframe
