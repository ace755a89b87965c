#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace yangc {

inline constexpr std::string_view kUsage = "usage: yangc [-h] [-f format] [-o outputfile] [-p paths] file [file]*";

enum ExitStatus : int { kExitClean = 0, kExitInvalid = 1, kExitUsage = 2 };

struct CliConfig {
  bool show_help = false;
  std::optional<std::string> format;
  std::optional<std::string> output_file;
  std::vector<std::string> search_paths;
  std::vector<std::string> input_files;
};

struct CliEnvironment {
  // Value of YANG_PATH, if set.
  std::optional<std::string> yang_path;
};

/// Runs the command line `args` (without the program name). Translations go
/// to `out`, diagnostics to `err`.
///
/// Exit status: 0 when no errors were found, 1 when a specification has
/// errors, 2 for usage and I/O errors. The highest applicable status wins.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnvironment& env);

}  // namespace yangc
