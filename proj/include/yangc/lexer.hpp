#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "yangc/diagnostics.hpp"

namespace yangc {

enum class TokenKind {
  Identifier,
  PrefixedIdentifier,
  String,
  Number,
  LeftBrace,
  RightBrace,
  Semicolon,
  Plus,
};

std::string_view kind_name(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Identifier;
  // Decoded value for strings (quotes removed, escapes processed, `+` joins
  // applied); the lexeme for everything else.
  std::string text;
  SourceSpan span;
  // Set for the `(32)` form, whose text is the bare number.
  bool parenthesized = false;

  friend bool operator==(const Token&, const Token&) = default;
};

struct LexResult {
  std::vector<Token> tokens;
  // Lexing stops at the first error; `tokens` then holds what came before it.
  std::optional<Diagnostic> error;

  bool ok() const { return !error.has_value(); }
};

/// Splits YANG source into tokens.
///
/// Comments (`//` and `/* */`) are dropped. Unquoted words are classified as
/// Identifier, PrefixedIdentifier (`a:b`) or Number (leading digit or signed
/// digit); any other unquoted word, such as `login/user` or `urn:a:b`, is
/// returned as a String token holding the word verbatim.
LexResult tokenize(std::string_view source, std::string_view file_id);

bool is_identifier(std::string_view text);
bool is_prefixed_identifier(std::string_view text);

}  // namespace yangc
