#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace midpoint::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitIncomplete = 2,  // max_outer reached, or a compared scheme failed
  kExitCheckFailed = 3,
};

struct CommandOptions {
  std::optional<std::filesystem::path> out_dir;
  long horizon = 1000;
  std::vector<std::string> schemes;
  std::optional<std::uint64_t> seed;
};

int cmd_run(const std::filesystem::path& config_path, const CommandOptions& opts,
            std::ostream& out, std::ostream& err);
int cmd_validate_schedule(const std::filesystem::path& config_path, const CommandOptions& opts,
                          std::ostream& out, std::ostream& err);
int cmd_compare(const std::filesystem::path& config_path, const CommandOptions& opts,
                std::ostream& out, std::ostream& err);
int cmd_reproduce_table1(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify_mapping(const std::filesystem::path& config_path, const CommandOptions& opts,
                       std::ostream& out, std::ostream& err);

}  // namespace midpoint::cli
