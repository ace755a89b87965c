#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yangc/diagnostics.hpp"
#include "yangc/lexer.hpp"

namespace yangc {

/// Untyped `keyword [argument] (; | { ... })` statement.
struct RawStatement {
  std::string keyword;
  std::optional<std::string> argument;
  std::vector<RawStatement> children;
  SourceSpan span;

  bool has_prefix() const { return keyword.find(':') != std::string::npos; }
  std::string_view prefix() const;
  std::string_view local_name() const;
};

/// Keyword, argument and children compared recursively; spans are ignored.
bool structurally_equal(const RawStatement& a, const RawStatement& b);

struct ParseResult {
  std::optional<RawStatement> statement;
  std::optional<Diagnostic> error;

  bool ok() const { return statement.has_value(); }
};

/// Parses exactly one top-level `module` or `submodule` statement.
///
/// The grammar is keyword-agnostic: any identifier or prefixed identifier is
/// accepted as a keyword. A parenthesized number directly after an argument
/// (`type bits (32);`) is folded into the argument as `bits (32)`.
ParseResult parse(std::span<const Token> tokens, std::string_view file_id);

/// tokenize() followed by parse(); a lexical error is returned as the error.
ParseResult parse_text(std::string_view source, std::string_view file_id);

/// Canonical YANG text: two-space indentation, every argument double-quoted.
std::string to_yang(const RawStatement& statement);

}  // namespace yangc
