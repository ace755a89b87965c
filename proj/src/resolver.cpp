#include "yangc/resolver.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "yangc/astbuild.hpp"
#include "yangc/syntax.hpp"

namespace yangc {

namespace fs = std::filesystem;

namespace {

#ifdef _WIN32
constexpr char kPathSeparator = ';';
#else
constexpr char kPathSeparator = ':';
#endif

void split_path_list(std::string_view list, std::vector<fs::path>& out) {
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(kPathSeparator, start);
    if (end == std::string_view::npos) end = list.size();
    if (end > start) out.emplace_back(std::string(list.substr(start, end - start)));
    start = end + 1;
  }
}

class Linker {
 public:
  Linker(const SourceProvider& provider, DiagnosticBag& diags) : provider_(provider), diags_(diags) {}

  ModuleRegistry run(std::shared_ptr<const Specification> root) {
    registry_.root = root->name;
    registry_.specs[root->name] = root;
    link(*root);
    return std::move(registry_);
  }

 private:
  enum class Via { Import, Include };

  void link(const Specification& spec) {
    in_progress_.push_back(spec.name);
    auto& prefixes = registry_.prefix_tables[spec.name];
    std::map<std::string, SourceSpan> prefix_sites;
    if (auto own = spec.own_prefix()) {
      prefixes[*own] = spec.owner();
      prefix_sites[*own] = spec.span;
    }
    for (const auto& imp : spec.imports) {
      if (prefix_sites.count(imp.prefix.value)) {
        diags_.error(DiagCode::DuplicatePrefix, imp.prefix.span,
                     "prefix '" + imp.prefix.value + "' is already used in '" + spec.name + "'");
        continue;
      }
      prefix_sites[imp.prefix.value] = imp.prefix.span;
      if (const auto* target = fetch(imp.module, imp.span, Via::Import)) {
        if (!target->is_module()) {
          diags_.error(DiagCode::ImportOfSubmodule, imp.span,
                       "'" + imp.module + "' is a submodule and cannot be imported");
          continue;
        }
        prefixes[imp.prefix.value] = imp.module;
      }
    }
    auto& included = registry_.include_graph[spec.name];
    for (const auto& inc : spec.includes) {
      const auto* target = fetch(inc.submodule, inc.span, Via::Include);
      if (!target) continue;
      if (target->is_module()) {
        diags_.error(DiagCode::IncludeOfModule, inc.span,
                     "'" + inc.submodule + "' is a module and cannot be included");
        continue;
      }
      if (target->owner() != spec.owner()) {
        diags_.error(DiagCode::BelongsToMismatch, inc.span,
                     "submodule '" + inc.submodule + "' belongs to '" + target->owner() + "', not '" +
                         spec.owner() + "'");
        continue;
      }
      if (std::find(included.begin(), included.end(), inc.submodule) == included.end()) {
        included.push_back(inc.submodule);
      }
    }
    in_progress_.pop_back();
  }

  // Loads and links the named specification; nullptr when unavailable.
  const Specification* fetch(const std::string& name, const SourceSpan& site, Via via) {
    if (std::find(in_progress_.begin(), in_progress_.end(), name) != in_progress_.end()) {
      std::string chain;
      auto from = std::find(in_progress_.begin(), in_progress_.end(), name);
      for (auto it = from; it != in_progress_.end(); ++it) chain += *it + " -> ";
      chain += name;
      diags_.error(via == Via::Import ? DiagCode::CircularImport : DiagCode::CircularInclude, site,
                   std::string(via == Via::Import ? "circular import: " : "circular include: ") + chain);
      return nullptr;
    }
    if (auto it = registry_.specs.find(name); it != registry_.specs.end()) return it->second.get();
    if (unavailable_.count(name)) {
      diags_.error(DiagCode::SpecNotFound, site, "specification '" + name + "' could not be loaded");
      return nullptr;
    }
    auto spec = load(name, site);
    if (!spec) {
      unavailable_.insert(name);
      return nullptr;
    }
    auto shared = std::make_shared<const Specification>(std::move(*spec));
    registry_.specs[name] = shared;
    link(*shared);
    return shared.get();
  }

  std::optional<Specification> load(const std::string& name, const SourceSpan& site) {
    auto file = provider_.find(name);
    if (!file) {
      diags_.error(DiagCode::SpecNotFound, site, "cannot find specification '" + name + "' (" + name + ".yang)");
      return std::nullopt;
    }
    auto text = provider_.read(*file);
    if (!text) {
      diags_.error(DiagCode::FileNotReadable, site, "cannot read '" + *file + "'");
      return std::nullopt;
    }
    auto spec = load_specification(*text, *file, diags_);
    if (!spec) return std::nullopt;
    if (spec->name != name) {
      diags_.error(DiagCode::SpecNameMismatch, site,
                   "'" + *file + "' defines '" + spec->name + "', expected '" + name + "'");
      return std::nullopt;
    }
    return spec;
  }

  const SourceProvider& provider_;
  DiagnosticBag& diags_;
  ModuleRegistry registry_;
  std::vector<std::string> in_progress_;
  std::set<std::string> unavailable_;
};

}  // namespace

std::vector<fs::path> make_search_paths(const std::vector<std::string>& cli_paths,
                                        std::optional<std::string_view> yang_path) {
  std::vector<fs::path> out;
  for (const auto& entry : cli_paths) split_path_list(entry, out);
  if (yang_path) split_path_list(*yang_path, out);
  out.emplace_back(".");
  return out;
}

std::optional<fs::path> locate(std::string_view name, const std::vector<fs::path>& paths) {
  const std::string file = std::string(name) + ".yang";
  for (const auto& dir : paths) {
    std::error_code ec;
    auto candidate = dir / file;
    if (fs::is_regular_file(candidate, ec)) return candidate;
  }
  return std::nullopt;
}

std::optional<std::string> FileSystemProvider::find(std::string_view name) const {
  auto found = locate(name, paths_);
  if (!found) return std::nullopt;
  return found->lexically_normal().string();
}

std::optional<std::string> FileSystemProvider::read(const std::string& file_id) const {
  std::ifstream in(file_id, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buffer.str();
}

std::optional<std::string> MemoryProvider::find(std::string_view name) const {
  if (!sources_.count(name)) return std::nullopt;
  return std::string(name) + ".yang";
}

std::optional<std::string> MemoryProvider::read(const std::string& file_id) const {
  constexpr std::string_view kSuffix = ".yang";
  if (file_id.size() <= kSuffix.size()) return std::nullopt;
  auto it = sources_.find(std::string_view(file_id).substr(0, file_id.size() - kSuffix.size()));
  if (it == sources_.end()) return std::nullopt;
  return it->second;
}

std::optional<Specification> load_specification(std::string_view text, std::string_view file_id,
                                                DiagnosticBag& diags) {
  auto parsed = parse_text(text, file_id);
  if (!parsed.ok()) {
    diags.report(std::move(*parsed.error));
    return std::nullopt;
  }
  return build(*parsed.statement, diags);
}

const Specification* ModuleRegistry::find(std::string_view name) const {
  auto it = specs.find(std::string(name));
  return it == specs.end() ? nullptr : it->second.get();
}

std::optional<std::string> ModuleRegistry::module_for_prefix(std::string_view spec_name,
                                                             std::string_view prefix) const {
  auto table = prefix_tables.find(std::string(spec_name));
  if (table == prefix_tables.end()) return std::nullopt;
  auto it = table->second.find(std::string(prefix));
  if (it == table->second.end()) return std::nullopt;
  return it->second;
}

std::vector<const Specification*> ModuleRegistry::group(std::string_view name) const {
  std::vector<const Specification*> out;
  std::vector<std::string> pending{std::string(name)};
  std::set<std::string> seen;
  while (!pending.empty()) {
    auto current = std::move(pending.front());
    pending.erase(pending.begin());
    if (!seen.insert(current).second) continue;
    const auto* spec = find(current);
    if (!spec) continue;
    out.push_back(spec);
    if (auto it = include_graph.find(current); it != include_graph.end()) {
      pending.insert(pending.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

std::vector<std::string> ModuleRegistry::module_names() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : specs) {
    if (spec->is_module()) out.push_back(name);
  }
  return out;
}

ModuleRegistry resolve_linkages(std::shared_ptr<const Specification> root, const SourceProvider& provider,
                                DiagnosticBag& diags) {
  return Linker(provider, diags).run(std::move(root));
}

}  // namespace yangc
