#include "pxlap/plot_data.hpp"

#include <fstream>
#include <locale>
#include <ostream>
#include <stdexcept>

namespace pxlap::reporting {

namespace {

using nlohmann::json;

const json& section(const json& report, const char* key) {
  if (!report.contains(key)) throw std::invalid_argument(std::string("report has no \"") + key + "\" section");
  return report.at(key);
}

void put(std::ostream& os, const json& v) {
  if (v.is_number()) {
    os << v.get<double>();
  } else {
    os << v.get<std::string>();  // "inf" / "nan" markers
  }
}

void eigenfunction(const json& report, std::ostream& os) {
  const json& ef = section(report, "eigenfunction");
  const bool two_d = ef.at("dimension").get<int>() == 2;
  os << (two_d ? "x,y,u\n" : "x,u\n");
  const json& x = ef.at("x");
  const json& v = ef.at("values");
  for (std::size_t i = 0; i < v.size(); ++i) {
    put(os, x[i]);
    if (two_d) os << ',', put(os, ef.at("y")[i]);
    os << ',';
    put(os, v[i]);
    os << '\n';
  }
}

void trace(const json& report, std::ostream& os) {
  os << "iteration,rayleigh,residual\n";
  for (const json& row : section(report, "trace")) {
    os << row[0].get<int>() << ',';
    put(os, row[1]);
    os << ',';
    put(os, row[2]);
    os << '\n';
  }
}

void oscillation(const json& report, std::ostream& os) {
  const json* entry = nullptr;
  for (const json& c : section(report, "checks")) {
    if (c.at("name") == "oscillation") entry = &c;
  }
  if (!entry) throw std::invalid_argument("report has no oscillation check");
  const json& w = entry->at("witness");
  os << "R,osc,bound\n";
  const json& radii = w.at("radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    put(os, radii[i]);
    os << ',';
    put(os, w.at("oscillations")[i]);
    os << ',';
    put(os, w.at("bounds")[i]);
    os << '\n';
  }
}

}  // namespace

const std::vector<std::string>& plot_kinds() {
  static const std::vector<std::string> kinds = {"eigenfunction", "oscillation", "trace"};
  return kinds;
}

void emit_plot_data(const json& report, const std::string& kind, std::ostream& os) {
  const std::locale old = os.imbue(std::locale::classic());
  const auto old_precision = os.precision(17);
  if (kind == "eigenfunction") {
    eigenfunction(report, os);
  } else if (kind == "trace") {
    trace(report, os);
  } else if (kind == "oscillation") {
    oscillation(report, os);
  } else {
    os.imbue(old);
    throw std::invalid_argument("unknown plot kind: " + kind);
  }
  os.precision(old_precision);
  os.imbue(old);
}

void emit_plot_data(const std::filesystem::path& report_path, const std::string& kind, std::ostream& os) {
  std::ifstream in(report_path);
  if (!in) throw std::invalid_argument("cannot open " + report_path.string());
  json report;
  try {
    report = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(report_path.string() + ": " + e.what());
  }
  emit_plot_data(report, kind, os);
}

}  // namespace pxlap::reporting
