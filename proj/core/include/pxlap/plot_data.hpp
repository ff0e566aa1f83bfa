#pragma once

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace pxlap::reporting {

/// Plot kinds understood by emit_plot_data.
const std::vector<std::string>& plot_kinds();

/// Writes a CSV table for one figure drawn from a report.json document.
///   eigenfunction: x[,y],u
///   trace:         iteration,rayleigh,residual
///   oscillation:   R,osc,bound (needs the oscillation check in the report)
/// Throws std::invalid_argument for an unknown kind or a missing section.
void emit_plot_data(const nlohmann::json& report, const std::string& kind, std::ostream& os);

/// Reads the report from disk first.
void emit_plot_data(const std::filesystem::path& report_path, const std::string& kind, std::ostream& os);

}  // namespace pxlap::reporting
