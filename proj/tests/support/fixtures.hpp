#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "yangc/diagnostics.hpp"
#include "yangc/resolver.hpp"
#include "yangc/semantics.hpp"

namespace yangc::test {

/// Absolute path of a file below tests/fixtures.
std::filesystem::path fixture(std::string_view relative);

std::string read_file(const std::filesystem::path& path);

/// Outcome of running the whole pipeline on one file.
struct Pipeline {
  DiagnosticBag diagnostics;
  std::shared_ptr<const Specification> root;
  std::optional<ModuleRegistry> registry;
  std::optional<CheckResult> result;
};

/// Load, resolve and check `file`, searching `search` for dependencies.
Pipeline run_pipeline(const std::filesystem::path& file, const std::vector<std::filesystem::path>& search);

/// Same, for in-memory sources; `root` names an entry of `provider`.
Pipeline run_pipeline(const MemoryProvider& provider, std::string_view root);

/// Sorted code names of the error diagnostics.
std::vector<std::string> error_codes(const DiagnosticBag& diags);

/// Rendered diagnostics, for failure messages.
std::string describe(const DiagnosticBag& diags);

}  // namespace yangc::test
