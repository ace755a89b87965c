#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace yangc {

/// 1-based, inclusive source region. `end_*` points at the last character.
struct SourceSpan {
  std::string file;
  std::uint32_t start_line = 1;
  std::uint32_t start_col = 1;
  std::uint32_t end_line = 1;
  std::uint32_t end_col = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Span covering `first` through `last`.
SourceSpan join(const SourceSpan& first, const SourceSpan& last);

enum class Severity { Error, Warning };

// The published code set. Adding a code means adding it to code_name() and
// all_codes() as well.
enum class DiagCode {
  // lexing
  UnterminatedString,
  UnterminatedComment,
  IllegalCharacter,
  // syntax
  UnexpectedToken,
  UnbalancedBraces,
  MultipleTopLevel,
  NotAModule,
  // astbuild
  MissingSubstatement,
  DuplicateSubstatement,
  MisplacedSubstatement,
  MissingNamespaceOrPrefix,
  ListWithoutDataDef,
  UnknownStatement,
  InvalidArgument,
  MissingRevision,
  // resolver
  SpecNotFound,
  SpecNameMismatch,
  ImportOfSubmodule,
  IncludeOfModule,
  BelongsToMismatch,
  DuplicatePrefix,
  CircularImport,
  CircularInclude,
  // typesystem
  UnknownType,
  CircularTypedef,
  UnknownPrefix,
  InvalidRestriction,
  RestrictionWidensBase,
  RestrictionKindMismatch,
  DefaultOutOfRange,
  DefaultSyntaxError,
  DefaultNotAnEnumMember,
  // semantics
  DuplicateDefinition,
  UnknownExtension,
  ExtensionArgumentMismatch,
  UnknownGrouping,
  CircularGrouping,
  RefineTargetNotFound,
  RefineKindMismatch,
  DuplicateSibling,
  AugmentTargetNotFound,
  AugmentPayloadMismatch,
  AugmentNameCollision,
  KeyLeafNotFound,
  DuplicateKeyComponent,
  KeyrefTargetInvalid,
  UniqueComponentNotFound,
  UniqueComponentNotALeaf,
  DuplicateUniqueComponent,
  ChoiceDefaultNotFound,
  // tool
  UsageError,
  FileNotReadable,
};

/// Stable short identifier, e.g. "DUP_PREFIX".
std::string_view code_name(DiagCode code);
std::optional<DiagCode> code_from_name(std::string_view name);
std::span<const DiagCode> all_codes();

std::string_view severity_name(Severity severity);

struct Diagnostic {
  Severity severity = Severity::Error;
  DiagCode code = DiagCode::UnexpectedToken;
  std::string message;
  SourceSpan span;
  std::vector<SourceSpan> related;
};

Diagnostic make_error(DiagCode code, SourceSpan span, std::string message);

/// Ordered collection of diagnostics for one checking pass.
class DiagnosticBag {
 public:
  void report(Diagnostic diagnostic);
  void error(DiagCode code, const SourceSpan& span, std::string message);
  void warning(DiagCode code, const SourceSpan& span, std::string message);
  void append(const DiagnosticBag& other);

  const std::vector<Diagnostic>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  std::size_t error_count() const;
  bool has_errors() const { return error_count() != 0; }
  std::vector<DiagCode> codes() const;

 private:
  std::vector<Diagnostic> items_;
};

enum class RenderFormat { Human, Machine };

/// Renders one line per diagnostic. Diagnostics are grouped by file in order
/// of first appearance and sorted by position within a file; ties keep
/// emission order.
///
/// Human:   `file:line:col: severity[CODE]: message`
/// Machine: one JSON object per line with keys file, line, col, severity,
///          code, message (in that order).
std::string render(std::span<const Diagnostic> diagnostics, RenderFormat format);

}  // namespace yangc
