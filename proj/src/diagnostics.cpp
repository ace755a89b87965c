#include "yangc/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include <json.hpp>

namespace yangc {

namespace {

struct CodeEntry {
  DiagCode code;
  std::string_view name;
};

constexpr std::array kCodes{
    CodeEntry{DiagCode::UnterminatedString, "UNTERMINATED_STRING"},
    CodeEntry{DiagCode::UnterminatedComment, "UNTERMINATED_COMMENT"},
    CodeEntry{DiagCode::IllegalCharacter, "ILLEGAL_CHARACTER"},
    CodeEntry{DiagCode::UnexpectedToken, "UNEXPECTED_TOKEN"},
    CodeEntry{DiagCode::UnbalancedBraces, "UNBALANCED_BRACES"},
    CodeEntry{DiagCode::MultipleTopLevel, "MULTIPLE_TOP_LEVEL"},
    CodeEntry{DiagCode::NotAModule, "NOT_A_MODULE"},
    CodeEntry{DiagCode::MissingSubstatement, "MISSING_SUBSTATEMENT"},
    CodeEntry{DiagCode::DuplicateSubstatement, "DUP_SUBSTATEMENT"},
    CodeEntry{DiagCode::MisplacedSubstatement, "MISPLACED_SUBSTATEMENT"},
    CodeEntry{DiagCode::MissingNamespaceOrPrefix, "MISSING_NAMESPACE_OR_PREFIX"},
    CodeEntry{DiagCode::ListWithoutDataDef, "LIST_WITHOUT_DATADEF"},
    CodeEntry{DiagCode::UnknownStatement, "UNKNOWN_STATEMENT"},
    CodeEntry{DiagCode::InvalidArgument, "INVALID_ARGUMENT"},
    CodeEntry{DiagCode::MissingRevision, "MISSING_REVISION"},
    CodeEntry{DiagCode::SpecNotFound, "SPEC_NOT_FOUND"},
    CodeEntry{DiagCode::SpecNameMismatch, "SPEC_NAME_MISMATCH"},
    CodeEntry{DiagCode::ImportOfSubmodule, "IMPORT_OF_SUBMODULE"},
    CodeEntry{DiagCode::IncludeOfModule, "INCLUDE_OF_MODULE"},
    CodeEntry{DiagCode::BelongsToMismatch, "BELONGS_TO_MISMATCH"},
    CodeEntry{DiagCode::DuplicatePrefix, "DUP_PREFIX"},
    CodeEntry{DiagCode::CircularImport, "CIRCULAR_IMPORT"},
    CodeEntry{DiagCode::CircularInclude, "CIRCULAR_INCLUDE"},
    CodeEntry{DiagCode::UnknownType, "UNKNOWN_TYPE"},
    CodeEntry{DiagCode::CircularTypedef, "CIRCULAR_TYPEDEF"},
    CodeEntry{DiagCode::UnknownPrefix, "UNKNOWN_PREFIX"},
    CodeEntry{DiagCode::InvalidRestriction, "INVALID_RESTRICTION"},
    CodeEntry{DiagCode::RestrictionWidensBase, "RESTRICTION_WIDENS_BASE"},
    CodeEntry{DiagCode::RestrictionKindMismatch, "RESTRICTION_KIND_MISMATCH"},
    CodeEntry{DiagCode::DefaultOutOfRange, "DEFAULT_OUT_OF_RANGE"},
    CodeEntry{DiagCode::DefaultSyntaxError, "DEFAULT_SYNTAX_ERROR"},
    CodeEntry{DiagCode::DefaultNotAnEnumMember, "DEFAULT_NOT_ENUM_MEMBER"},
    CodeEntry{DiagCode::DuplicateDefinition, "DUP_DEFINITION"},
    CodeEntry{DiagCode::UnknownExtension, "UNKNOWN_EXTENSION"},
    CodeEntry{DiagCode::ExtensionArgumentMismatch, "EXTENSION_ARGUMENT_MISMATCH"},
    CodeEntry{DiagCode::UnknownGrouping, "UNKNOWN_GROUPING"},
    CodeEntry{DiagCode::CircularGrouping, "CIRCULAR_GROUPING"},
    CodeEntry{DiagCode::RefineTargetNotFound, "REFINE_TARGET_NOT_FOUND"},
    CodeEntry{DiagCode::RefineKindMismatch, "REFINE_KIND_MISMATCH"},
    CodeEntry{DiagCode::DuplicateSibling, "DUP_SIBLING"},
    CodeEntry{DiagCode::AugmentTargetNotFound, "AUGMENT_TARGET_NOT_FOUND"},
    CodeEntry{DiagCode::AugmentPayloadMismatch, "AUGMENT_PAYLOAD_MISMATCH"},
    CodeEntry{DiagCode::AugmentNameCollision, "AUGMENT_NAME_COLLISION"},
    CodeEntry{DiagCode::KeyLeafNotFound, "KEY_LEAF_NOT_FOUND"},
    CodeEntry{DiagCode::DuplicateKeyComponent, "DUP_KEY_COMPONENT"},
    CodeEntry{DiagCode::KeyrefTargetInvalid, "KEYREF_TARGET_INVALID"},
    CodeEntry{DiagCode::UniqueComponentNotFound, "UNIQUE_COMPONENT_NOT_FOUND"},
    CodeEntry{DiagCode::UniqueComponentNotALeaf, "UNIQUE_COMPONENT_NOT_A_LEAF"},
    CodeEntry{DiagCode::DuplicateUniqueComponent, "DUP_UNIQUE_COMPONENT"},
    CodeEntry{DiagCode::ChoiceDefaultNotFound, "CHOICE_DEFAULT_NOT_FOUND"},
    CodeEntry{DiagCode::UsageError, "USAGE_ERROR"},
    CodeEntry{DiagCode::FileNotReadable, "FILE_NOT_READABLE"},
};

constexpr auto kAllCodes = [] {
  std::array<DiagCode, kCodes.size()> out{};
  for (std::size_t i = 0; i < kCodes.size(); ++i) out[i] = kCodes[i].code;
  return out;
}();

bool position_less(const Diagnostic& a, const Diagnostic& b) {
  if (a.span.start_line != b.span.start_line) return a.span.start_line < b.span.start_line;
  return a.span.start_col < b.span.start_col;
}

}  // namespace

SourceSpan join(const SourceSpan& first, const SourceSpan& last) {
  SourceSpan out = first;
  out.end_line = last.end_line;
  out.end_col = last.end_col;
  return out;
}

std::string_view code_name(DiagCode code) {
  for (const auto& entry : kCodes) {
    if (entry.code == code) return entry.name;
  }
  return "UNKNOWN";
}

std::optional<DiagCode> code_from_name(std::string_view name) {
  for (const auto& entry : kCodes) {
    if (entry.name == name) return entry.code;
  }
  return std::nullopt;
}

std::span<const DiagCode> all_codes() { return kAllCodes; }

std::string_view severity_name(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

Diagnostic make_error(DiagCode code, SourceSpan span, std::string message) {
  return Diagnostic{Severity::Error, code, std::move(message), std::move(span), {}};
}

void DiagnosticBag::report(Diagnostic diagnostic) { items_.push_back(std::move(diagnostic)); }

void DiagnosticBag::error(DiagCode code, const SourceSpan& span, std::string message) {
  items_.push_back(Diagnostic{Severity::Error, code, std::move(message), span, {}});
}

void DiagnosticBag::warning(DiagCode code, const SourceSpan& span, std::string message) {
  items_.push_back(Diagnostic{Severity::Warning, code, std::move(message), span, {}});
}

void DiagnosticBag::append(const DiagnosticBag& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::size_t DiagnosticBag::error_count() const {
  return static_cast<std::size_t>(std::count_if(items_.begin(), items_.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  }));
}

std::vector<DiagCode> DiagnosticBag::codes() const {
  std::vector<DiagCode> out;
  out.reserve(items_.size());
  for (const auto& d : items_) out.push_back(d.code);
  return out;
}

std::string render(std::span<const Diagnostic> diagnostics, RenderFormat format) {
  std::map<std::string, std::size_t> file_rank;
  for (const auto& d : diagnostics) file_rank.emplace(d.span.file, file_rank.size());

  std::vector<std::size_t> order(diagnostics.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
    const auto& a = diagnostics[lhs];
    const auto& b = diagnostics[rhs];
    const auto ra = file_rank[a.span.file];
    const auto rb = file_rank[b.span.file];
    if (ra != rb) return ra < rb;
    return position_less(a, b);
  });

  std::string out;
  for (auto index : order) {
    const auto& d = diagnostics[index];
    if (format == RenderFormat::Human) {
      out += d.span.file;
      out += ':' + std::to_string(d.span.start_line) + ':' + std::to_string(d.span.start_col) + ": ";
      out += severity_name(d.severity);
      out += '[';
      out += code_name(d.code);
      out += "]: ";
      out += d.message;
    } else {
      nlohmann::ordered_json record;
      record["file"] = d.span.file;
      record["line"] = d.span.start_line;
      record["col"] = d.span.start_col;
      record["severity"] = severity_name(d.severity);
      record["code"] = code_name(d.code);
      record["message"] = d.message;
      out += record.dump();
    }
    out += '\n';
  }
  return out;
}

}  // namespace yangc
