#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace yangc::test {

namespace {

Pipeline finish(std::optional<Specification> spec, const SourceProvider& provider, DiagnosticBag diags) {
  Pipeline out;
  if (spec) {
    out.root = std::make_shared<const Specification>(std::move(*spec));
    out.registry = resolve_linkages(out.root, provider, diags);
    out.result = check(*out.registry);
    diags.append(out.result->diagnostics);
  }
  out.diagnostics = std::move(diags);
  return out;
}

}  // namespace

std::filesystem::path fixture(std::string_view relative) {
  return std::filesystem::path(YANGC_FIXTURES_DIR) / std::filesystem::path(relative);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Pipeline run_pipeline(const std::filesystem::path& file, const std::vector<std::filesystem::path>& search) {
  FileSystemProvider provider(search);
  DiagnosticBag diags;
  auto spec = load_specification(read_file(file), file.string(), diags);
  return finish(std::move(spec), provider, std::move(diags));
}

Pipeline run_pipeline(const MemoryProvider& provider, std::string_view root) {
  DiagnosticBag diags;
  const auto id = provider.find(root);
  const auto text = id ? provider.read(*id) : std::nullopt;
  std::optional<Specification> spec;
  if (text) spec = load_specification(*text, *id, diags);
  return finish(std::move(spec), provider, std::move(diags));
}

std::vector<std::string> error_codes(const DiagnosticBag& diags) {
  std::vector<std::string> out;
  for (const auto& d : diags.items()) {
    if (d.severity == Severity::Error) out.emplace_back(code_name(d.code));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string describe(const DiagnosticBag& diags) { return render(diags.items(), RenderFormat::Human); }

}  // namespace yangc::test
