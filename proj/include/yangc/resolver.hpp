#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "yangc/ast.hpp"
#include "yangc/diagnostics.hpp"

namespace yangc {

/// Search order: each `-p` entry (itself a path list), then the entries of
/// `yang_path` (the YANG_PATH value), then the current directory.
std::vector<std::filesystem::path> make_search_paths(const std::vector<std::string>& cli_paths,
                                                     std::optional<std::string_view> yang_path);

/// First `<name>.yang` found in `paths`, in order.
std::optional<std::filesystem::path> locate(std::string_view name,
                                            const std::vector<std::filesystem::path>& paths);

/// Where specifications referenced by import and include come from.
class SourceProvider {
 public:
  virtual ~SourceProvider() = default;
  /// File identifier for the named specification, if one exists.
  virtual std::optional<std::string> find(std::string_view name) const = 0;
  /// Contents of a file returned by find(); nullopt when it cannot be read.
  virtual std::optional<std::string> read(const std::string& file_id) const = 0;
};

class FileSystemProvider : public SourceProvider {
 public:
  explicit FileSystemProvider(std::vector<std::filesystem::path> search_paths)
      : paths_(std::move(search_paths)) {}

  std::optional<std::string> find(std::string_view name) const override;
  std::optional<std::string> read(const std::string& file_id) const override;
  const std::vector<std::filesystem::path>& search_paths() const { return paths_; }

 private:
  std::vector<std::filesystem::path> paths_;
};

/// In-memory sources keyed by specification name; the file id is
/// `<name>.yang`.
class MemoryProvider : public SourceProvider {
 public:
  void add(std::string name, std::string text) { sources_[std::move(name)] = std::move(text); }

  std::optional<std::string> find(std::string_view name) const override;
  std::optional<std::string> read(const std::string& file_id) const override;

 private:
  std::map<std::string, std::string, std::less<>> sources_;
};

/// Lexes, parses and builds one file. Returns nullopt after a lexical or
/// syntax error, which is the only diagnostic reported in that case.
std::optional<Specification> load_specification(std::string_view text, std::string_view file_id,
                                                DiagnosticBag& diags);

/// Every specification reachable from a root through import and include.
struct ModuleRegistry {
  std::string root;
  std::map<std::string, std::shared_ptr<const Specification>> specs;
  // Per specification: prefix -> module name. Contains the specification's
  // own prefix (bound to its owning module) and every import.
  std::map<std::string, std::map<std::string, std::string>> prefix_tables;
  // Per specification: the submodules it includes directly.
  std::map<std::string, std::vector<std::string>> include_graph;

  const Specification* find(std::string_view name) const;
  /// Module bound to `prefix` in the prefix table of `spec_name`.
  std::optional<std::string> module_for_prefix(std::string_view spec_name, std::string_view prefix) const;
  /// The named module or submodule followed by every submodule it includes,
  /// transitively, in first-visit order.
  std::vector<const Specification*> group(std::string_view name) const;
  /// Names of all loaded modules (not submodules), sorted.
  std::vector<std::string> module_names() const;
};

/// Transitively loads the imports and includes of `root`.
///
/// A root submodule does not pull in the module it belongs to. Diagnostics
/// produced while loading other files (lexical, syntax, build) are reported
/// into `diags` as well.
ModuleRegistry resolve_linkages(std::shared_ptr<const Specification> root, const SourceProvider& provider,
                                DiagnosticBag& diags);

}  // namespace yangc
