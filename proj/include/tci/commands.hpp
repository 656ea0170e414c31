#ifndef TCI_COMMANDS_HPP
#define TCI_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tci/config.hpp"

namespace tci {

enum class Command { run, flag, compare, cases_list };

std::optional<Command> parse_command(std::string_view name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitIoError = 4;

struct CommandOptions {
  Command command = Command::run;
  std::filesystem::path config;
  std::filesystem::path out;
  bool force = false;
};

/// File produced by a command, held in memory until every computation has
/// succeeded.
struct Artifact {
  std::string name;
  std::string content;
};

/// File names a command will write for `config`. Throws ConfigError when the
/// command cannot run with it (flag without k_list, compare with fewer than
/// two settings, duplicate thresholds, ...).
std::vector<std::string> planned_artifacts(Command command, const AppConfig& config);

/// Builds the artifacts without touching the file system.
std::vector<Artifact> cmd_run(const AppConfig& config);
std::vector<Artifact> cmd_flag(const AppConfig& config);
std::vector<Artifact> cmd_compare(const AppConfig& config);
void cmd_cases_list(std::ostream& out);

/// Creates `dir` if needed. Throws IoError if any target exists and `force`
/// is false; nothing is written in that case.
void ensure_writable(const std::filesystem::path& dir, const std::vector<std::string>& names,
                     bool force);
void write_artifacts(const std::filesystem::path& dir, const std::vector<Artifact>& artifacts);

/// Loads the config, validates it, computes and writes the artifacts, and
/// maps failures to exit codes with a message on `err`.
int execute(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace tci

#endif  // TCI_COMMANDS_HPP
