#include "pxlap/property_report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pxlap::harness {

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0.0 ? "inf" : "-inf";
}

void write_csv(std::ostream& os, const WitnessTable& table) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf << std::setprecision(17);
  for (std::size_t i = 0; i < table.columns.size(); ++i) buf << (i ? "," : "") << table.columns[i];
  buf << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) buf << (i ? "," : "") << row[i];
    buf << '\n';
  }
  os << buf.str();
}

void PropertyReport::add(CheckEntry entry) {
  if (find(entry.name)) throw std::invalid_argument("check \"" + entry.name + "\" reported twice");
  const auto pos = std::lower_bound(entries_.begin(), entries_.end(), entry.name,
                                    [](const CheckEntry& e, const std::string& n) { return e.name < n; });
  entries_.insert(pos, std::move(entry));
}

const CheckEntry* PropertyReport::find(const std::string& name) const {
  for (const CheckEntry& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

bool PropertyReport::all_passed() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CheckEntry& e) { return e.ok(); });
}

nlohmann::json to_json(const CheckEntry& entry) {
  nlohmann::json j;
  j["name"] = entry.name;
  j["passed"] = entry.passed;
  j["applicable"] = entry.applicable;
  nlohmann::json measured = nlohmann::json::object();
  for (const auto& [k, v] : entry.measured) measured[k] = json_number(v);
  j["measured"] = std::move(measured);
  j["witness"] = entry.witness;
  if (!entry.note.empty()) j["note"] = entry.note;
  return j;
}

nlohmann::json PropertyReport::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const CheckEntry& e : entries_) out.push_back(harness::to_json(e));
  return out;
}

}  // namespace pxlap::harness
