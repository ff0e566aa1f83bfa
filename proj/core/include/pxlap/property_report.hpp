#pragma once

#include <iosfwd>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace pxlap::harness {

/// Rows of numbers with named columns, written as a witness CSV.
struct WitnessTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool empty() const { return rows.empty(); }
};

struct CheckEntry {
  std::string name;
  bool passed = false;
  bool applicable = true;
  std::map<std::string, double> measured;
  nlohmann::json witness = nlohmann::json::object();  ///< parameters and per-witness values
  WitnessTable table;
  std::string note;

  /// Inapplicable checks never count as failures.
  bool ok() const { return passed || !applicable; }
};

class PropertyReport {
 public:
  /// Throws std::invalid_argument when a check of that name is already present.
  void add(CheckEntry entry);
  const std::vector<CheckEntry>& entries() const { return entries_; }
  const CheckEntry* find(const std::string& name) const;
  bool all_passed() const;
  bool empty() const { return entries_.empty(); }

  /// Array of entries sorted by name.
  nlohmann::json to_json() const;

 private:
  std::vector<CheckEntry> entries_;
};

nlohmann::json to_json(const CheckEntry& entry);

/// A finite value as a JSON number; infinities and NaN as the strings
/// "inf", "-inf" and "nan".
nlohmann::json json_number(double v);

/// Header row then one row per entry, 17 significant digits, '.' decimals.
void write_csv(std::ostream& os, const WitnessTable& table);

}  // namespace pxlap::harness
