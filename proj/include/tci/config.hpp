#ifndef TCI_CONFIG_HPP
#define TCI_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tci/solver.hpp"

namespace tci {

/// One entry of a comparison: `everywhere`, `first_order`, `straddle`,
/// `restricted:<K>`, optionally followed by `@<nx>x<ny>`.
struct LimitingSetting {
  LimitingMode limiting = LimitingMode::everywhere;
  MaskSource mask_source = MaskSource::indicator;
  std::optional<double> k;
  std::optional<std::pair<int, int>> grid;

  /// `everywhere`, `first_order`, `straddle` or `restricted`.
  std::string name() const;
  /// name() plus the threshold, e.g. `restricted:0.05`.
  std::string label() const;
};

LimitingSetting parse_limiting_setting(std::string_view text);

struct OutputNames {
  std::string history = "history.csv";
  std::string field = "field.csv";
  std::string mask = "mask.csv";
  std::string report = "report.csv";
  std::optional<std::string> vtk;
  std::string flag_summary = "flag_summary.csv";
  std::string compare = "compare.csv";
};

/// Parsed `key = value` run configuration.
struct AppConfig {
  std::string case_name;
  int nx = 100;
  int ny = 100;
  std::optional<double> beta;
  double gamma = 1.4;
  LimitingSetting limiting;
  RunConfig run;
  std::vector<double> k_list;
  std::vector<LimitingSetting> compare;
  std::size_t window = 20;
  OutputNames outputs;
  /// FNV-1a over the sorted key/value pairs; insensitive to comments,
  /// blank lines, spacing and key order.
  std::uint64_t hash = 0;

  /// RunConfig for one comparison entry, sharing everything else.
  RunConfig run_for(const LimitingSetting& setting) const;
};

/// Keys accepted in a config file, in documentation order.
const std::vector<std::string_view>& config_keys();

/// Throws ConfigError (with the line number) for syntax errors, unknown or
/// repeated keys, bad values and inconsistent settings.
AppConfig parse_config(std::string_view text);

/// Throws IoError if the file cannot be read, otherwise as parse_config.
AppConfig load_config(const std::filesystem::path& path);

std::uint64_t fnv1a(std::string_view bytes);
std::string hash_hex(std::uint64_t hash);

}  // namespace tci

#endif  // TCI_CONFIG_HPP
