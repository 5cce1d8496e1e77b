#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "morreykit/grid.hpp"

namespace morreykit {

/// Parsed configuration tree. Sections nest with braces, keys bind scalars
/// or bracketed lists:
///
///   grid { n = 1  L = 1.0  h = 0.0078125 }
///   verify { cases = [L2-strong, L2-weak] }
///
/// Every getter records the key it touched; ensure_all_consumed rejects
/// unknown keys with their line number, so a typo never runs half a battery.
class ConfigNode {
 public:
  struct Scalar {
    std::string text;
    int line = 0;
  };

  bool has(const std::string& key) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  /// Scalar x, or [x, y] for dimension 2.
  Vec get_vec(const std::string& key, Vec fallback) const;

  /// Section lookup; `required` controls missing-section handling.
  const ConfigNode* section(const std::string& key) const;
  const ConfigNode& require_section(const std::string& key) const;

  void ensure_all_consumed(const std::string& prefix = "") const;

  // parser plumbing
  std::map<std::string, Scalar> scalars;
  std::map<std::string, std::vector<Scalar>> lists;
  std::map<std::string, std::unique_ptr<ConfigNode>> sections;
  int line = 0;

 private:
  const Scalar& scalar(const std::string& key) const;
  mutable std::set<std::string> consumed_;
};

/// Parses configuration text; throws config_error with a line number on
/// malformed input.
std::unique_ptr<ConfigNode> parse_config(const std::string& text);
std::unique_ptr<ConfigNode> parse_config_file(const std::string& path);

/// One numeric column from a plain text/CSV file (first field per line,
/// header lines skipped).
std::vector<double> read_csv_column(const std::string& path);

}  // namespace morreykit
