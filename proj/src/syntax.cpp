#include "yangc/syntax.hpp"

namespace yangc {

namespace {

bool is_keyword_token(const Token& t) {
  return t.kind == TokenKind::Identifier || t.kind == TokenKind::PrefixedIdentifier;
}

bool is_argument_token(const Token& t) {
  switch (t.kind) {
    case TokenKind::Identifier:
    case TokenKind::PrefixedIdentifier:
    case TokenKind::String:
      return true;
    case TokenKind::Number:
      return !t.parenthesized;
    default:
      return false;
  }
}

std::string describe(const Token& t) {
  if (t.kind == TokenKind::String) return "string \"" + t.text + "\"";
  if (t.kind == TokenKind::Number && t.parenthesized) return "'(" + t.text + ")'";
  if (t.kind != TokenKind::Identifier && t.kind != TokenKind::PrefixedIdentifier && t.kind != TokenKind::Number) {
    return "'" + t.text + "'";
  }
  return std::string(kind_name(t.kind)) + " '" + t.text + "'";
}

class Parser {
 public:
  Parser(std::span<const Token> tokens, std::string_view file) : tokens_(tokens), file_(file) {}

  ParseResult run() {
    ParseResult result;
    if (tokens_.empty()) {
      result.error = make_error(DiagCode::NotAModule, SourceSpan{file_, 1, 1, 1, 1},
                                "expected a module or submodule statement, found empty input");
      return result;
    }
    const Token& first = tokens_.front();
    if (first.kind == TokenKind::RightBrace) {
      result.error = make_error(DiagCode::UnbalancedBraces, first.span, "unmatched '}'");
      return result;
    }
    if (is_keyword_token(first) && first.text != "module" && first.text != "submodule") {
      result.error = make_error(DiagCode::NotAModule, first.span,
                                "top-level statement must be 'module' or 'submodule', found '" + first.text + "'");
      return result;
    }
    auto stmt = statement(0);
    if (error_) {
      result.error = std::move(error_);
      return result;
    }
    if (pos_ < tokens_.size()) {
      const Token& extra = tokens_[pos_];
      if (extra.kind == TokenKind::RightBrace) {
        result.error = make_error(DiagCode::UnbalancedBraces, extra.span, "unmatched '}'");
      } else if (is_keyword_token(extra)) {
        result.error = make_error(DiagCode::MultipleTopLevel, extra.span,
                                  "a file must contain exactly one specification; found another statement '" +
                                      extra.text + "'");
      } else {
        result.error = make_error(DiagCode::UnexpectedToken, extra.span,
                                  "unexpected " + describe(extra) + " after the specification");
      }
      return result;
    }
    result.statement = std::move(stmt);
    return result;
  }

 private:
  void fail(DiagCode code, const SourceSpan& span, std::string message) {
    if (!error_) error_ = make_error(code, span, std::move(message));
  }

  SourceSpan end_span() const {
    if (tokens_.empty()) return SourceSpan{file_, 1, 1, 1, 1};
    const auto& last = tokens_.back().span;
    return SourceSpan{file_, last.end_line, last.end_col, last.end_line, last.end_col};
  }

  void premature_end(int depth) {
    if (depth > 0) {
      fail(DiagCode::UnbalancedBraces, end_span(), "end of input inside a block; missing '}'");
    } else {
      fail(DiagCode::UnexpectedToken, end_span(), "unexpected end of input; expected ';' or '{'");
    }
  }

  // `depth` counts the blocks enclosing this statement.
  RawStatement statement(int depth) {
    RawStatement stmt;
    const Token& kw = tokens_[pos_];
    if (!is_keyword_token(kw)) {
      fail(DiagCode::UnexpectedToken, kw.span, "expected a statement keyword, found " + describe(kw));
      return stmt;
    }
    stmt.keyword = kw.text;
    stmt.span = kw.span;
    ++pos_;

    if (pos_ < tokens_.size() && is_argument_token(tokens_[pos_])) {
      stmt.argument = tokens_[pos_].text;
      stmt.span = join(stmt.span, tokens_[pos_].span);
      ++pos_;
      if (pos_ < tokens_.size() && tokens_[pos_].kind == TokenKind::Number && tokens_[pos_].parenthesized) {
        *stmt.argument += " (" + tokens_[pos_].text + ")";
        stmt.span = join(stmt.span, tokens_[pos_].span);
        ++pos_;
      }
    }

    if (pos_ >= tokens_.size()) {
      premature_end(depth);
      return stmt;
    }
    const Token& term = tokens_[pos_];
    if (term.kind == TokenKind::Semicolon) {
      stmt.span = join(stmt.span, term.span);
      ++pos_;
      return stmt;
    }
    if (term.kind != TokenKind::LeftBrace) {
      fail(DiagCode::UnexpectedToken, term.span,
           "expected ';' or '{' after '" + stmt.keyword + "', found " + describe(term));
      return stmt;
    }
    ++pos_;
    while (!error_) {
      if (pos_ >= tokens_.size()) {
        premature_end(depth + 1);
        break;
      }
      if (tokens_[pos_].kind == TokenKind::RightBrace) {
        stmt.span = join(stmt.span, tokens_[pos_].span);
        ++pos_;
        break;
      }
      stmt.children.push_back(statement(depth + 1));
    }
    return stmt;
  }

  std::span<const Token> tokens_;
  std::string file_;
  std::size_t pos_ = 0;
  std::optional<Diagnostic> error_;
};

bool needs_no_escape(char c) { return c != '"' && c != '\\' && c != '\n' && c != '\t'; }

void quote(std::string& out, std::string_view text) {
  out += '"';
  for (char c : text) {
    if (needs_no_escape(c)) {
      out += c;
      continue;
    }
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: break;
    }
  }
  out += '"';
}

void write(std::string& out, const RawStatement& stmt, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += stmt.keyword;
  if (stmt.argument) {
    out += ' ';
    quote(out, *stmt.argument);
  }
  if (stmt.children.empty()) {
    out += ";\n";
    return;
  }
  out += " {\n";
  for (const auto& child : stmt.children) write(out, child, depth + 1);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "}\n";
}

}  // namespace

std::string_view RawStatement::prefix() const {
  const auto colon = keyword.find(':');
  return colon == std::string::npos ? std::string_view{} : std::string_view(keyword).substr(0, colon);
}

std::string_view RawStatement::local_name() const {
  const auto colon = keyword.find(':');
  return colon == std::string::npos ? std::string_view(keyword) : std::string_view(keyword).substr(colon + 1);
}

bool structurally_equal(const RawStatement& a, const RawStatement& b) {
  if (a.keyword != b.keyword || a.argument != b.argument || a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

ParseResult parse(std::span<const Token> tokens, std::string_view file_id) {
  return Parser(tokens, file_id).run();
}

ParseResult parse_text(std::string_view source, std::string_view file_id) {
  auto lexed = tokenize(source, file_id);
  if (!lexed.ok()) {
    ParseResult result;
    result.error = std::move(lexed.error);
    return result;
  }
  return parse(lexed.tokens, file_id);
}

std::string to_yang(const RawStatement& statement) {
  std::string out;
  write(out, statement, 0);
  return out;
}

}  // namespace yangc
