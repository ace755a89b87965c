#include "yangc/lexer.hpp"

#include <cstdint>

namespace yangc {

namespace {

bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Length of the UTF-8 sequence starting at `s[0]`, or 0 when malformed.
std::size_t utf8_length(std::string_view s) {
  const auto lead = static_cast<unsigned char>(s[0]);
  std::size_t len = 0;
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0 && lead >= 0xC2) {
    len = 2;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
  } else if ((lead & 0xF8) == 0xF0 && lead <= 0xF4) {
    len = 4;
  } else {
    return 0;
  }
  if (s.size() < len) return 0;
  for (std::size_t i = 1; i < len; ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) return 0;
  }
  return len;
}

struct RawToken {
  Token token;
  bool quoted = false;
};

class Lexer {
 public:
  Lexer(std::string_view source, std::string_view file) : src_(source), file_(file) {}

  LexResult run() {
    std::vector<RawToken> raw;
    while (!error_) {
      skip_trivia();
      if (error_ || eof()) break;
      auto tok = next_token();
      if (!tok) break;
      raw.push_back(std::move(*tok));
    }
    LexResult result;
    result.tokens = join_strings(std::move(raw));
    result.error = std::move(error_);
    return result;
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  SourceSpan here() const { return SourceSpan{file_, line_, col_, line_, col_}; }

  SourceSpan from(std::uint32_t line, std::uint32_t col) const {
    return SourceSpan{file_, line, col, last_line_, last_col_};
  }

  void fail(DiagCode code, SourceSpan span, std::string message) {
    if (!error_) error_ = make_error(code, std::move(span), std::move(message));
  }

  // Consumes one code point, appending its bytes to `out` when given.
  bool advance(std::string* out = nullptr) {
    const char c = src_[pos_];
    const auto uc = static_cast<unsigned char>(c);
    if ((uc < 0x20 && !is_space(c)) || uc == 0x7F) {
      fail(DiagCode::IllegalCharacter, here(), "illegal control character 0x" + hex(uc));
      return false;
    }
    const auto len = utf8_length(src_.substr(pos_));
    if (len == 0) {
      fail(DiagCode::IllegalCharacter, here(), "malformed UTF-8 byte 0x" + hex(uc));
      return false;
    }
    if (out) out->append(src_.substr(pos_, len));
    last_line_ = line_;
    last_col_ = col_;
    pos_ += len;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return true;
  }

  static std::string hex(unsigned char c) {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    return {kDigits[c >> 4], kDigits[c & 0xF]};
  }

  void skip_trivia() {
    while (!eof() && !error_) {
      const char c = peek();
      if (is_space(c)) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!eof() && peek() != '\n' && advance()) {
        }
      } else if (c == '/' && peek(1) == '*') {
        const auto line = line_;
        const auto col = col_;
        advance();
        advance();
        bool closed = false;
        while (!eof() && !error_) {
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            closed = true;
            break;
          }
          advance();
        }
        if (!closed && !error_) {
          fail(DiagCode::UnterminatedComment, from(line, col), "unterminated block comment");
        }
      } else {
        return;
      }
    }
  }

  std::optional<RawToken> punct(TokenKind kind) {
    const auto span = here();
    std::string text(1, peek());
    advance();
    return RawToken{Token{kind, std::move(text), span, false}, false};
  }

  std::optional<RawToken> next_token() {
    switch (peek()) {
      case '{':
        return punct(TokenKind::LeftBrace);
      case '}':
        return punct(TokenKind::RightBrace);
      case ';':
        return punct(TokenKind::Semicolon);
      case '"':
        return double_quoted();
      case '\'':
        return single_quoted();
      default:
        break;
    }
    if (peek() == '(') {
      if (auto tok = parenthesized_number()) return tok;
    }
    return word();
  }

  bool at_word_end() const {
    if (eof()) return true;
    const char c = peek();
    if (is_space(c) || c == ';' || c == '{' || c == '}') return true;
    return c == '/' && (peek(1) == '/' || peek(1) == '*');
  }

  std::optional<RawToken> parenthesized_number() {
    std::size_t k = 1;
    while (is_digit(peek(k))) ++k;
    if (k == 1 || peek(k) != ')') return std::nullopt;
    const auto saved_pos = pos_;
    const auto line = line_;
    const auto col = col_;
    advance();
    std::string digits;
    while (is_digit(peek())) advance(&digits);
    advance();
    if (!at_word_end()) {
      // Something like `(32)x`: rewind and lex it as an ordinary word.
      pos_ = saved_pos;
      line_ = line;
      col_ = col;
      return std::nullopt;
    }
    return RawToken{Token{TokenKind::Number, std::move(digits), from(line, col), true}, false};
  }

  std::optional<RawToken> word() {
    const auto line = line_;
    const auto col = col_;
    std::string text;
    while (!at_word_end()) {
      const char c = peek();
      if (c == '"' || c == '\'' || c == '`') {
        fail(DiagCode::IllegalCharacter, here(),
             std::string("illegal character '") + c + "' in unquoted string");
        return std::nullopt;
      }
      if (!advance(&text)) return std::nullopt;
    }
    TokenKind kind = TokenKind::String;
    if (text == "+") {
      kind = TokenKind::Plus;
    } else if (is_digit(text[0]) || ((text[0] == '-' || text[0] == '+') && text.size() > 1 && is_digit(text[1]))) {
      kind = TokenKind::Number;
    } else if (is_identifier(text)) {
      kind = TokenKind::Identifier;
    } else if (is_prefixed_identifier(text)) {
      kind = TokenKind::PrefixedIdentifier;
    }
    return RawToken{Token{kind, std::move(text), from(line, col), false}, false};
  }

  std::optional<RawToken> double_quoted() {
    const auto line = line_;
    const auto col = col_;
    advance();
    std::string text;
    while (!eof()) {
      const char c = peek();
      if (c == '"') {
        advance();
        return RawToken{Token{TokenKind::String, std::move(text), from(line, col), false}, true};
      }
      if (c == '\\' && pos_ + 1 < src_.size()) {
        const char next = peek(1);
        const char* mapped = nullptr;
        switch (next) {
          case 'n': mapped = "\n"; break;
          case 't': mapped = "\t"; break;
          case '"': mapped = "\""; break;
          case '\\': mapped = "\\"; break;
          default: break;
        }
        if (mapped) {
          advance();
          advance();
          text += mapped;
          continue;
        }
      }
      if (!advance(&text)) return std::nullopt;
    }
    fail(DiagCode::UnterminatedString, from(line, col), "unterminated double-quoted string");
    return std::nullopt;
  }

  std::optional<RawToken> single_quoted() {
    const auto line = line_;
    const auto col = col_;
    advance();
    std::string text;
    while (!eof()) {
      if (peek() == '\'') {
        advance();
        return RawToken{Token{TokenKind::String, std::move(text), from(line, col), false}, true};
      }
      if (!advance(&text)) return std::nullopt;
    }
    fail(DiagCode::UnterminatedString, from(line, col), "unterminated single-quoted string");
    return std::nullopt;
  }

  // `"a" + "b"` becomes one String token.
  static std::vector<Token> join_strings(std::vector<RawToken> raw) {
    std::vector<Token> out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
      Token tok = std::move(raw[i].token);
      if (raw[i].quoted) {
        while (i + 2 < raw.size() && raw[i + 1].token.kind == TokenKind::Plus && raw[i + 2].quoted) {
          tok.text += raw[i + 2].token.text;
          tok.span = join(tok.span, raw[i + 2].token.span);
          i += 2;
        }
      }
      out.push_back(std::move(tok));
      ++i;
    }
    return out;
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
  std::uint32_t last_line_ = 1;
  std::uint32_t last_col_ = 1;
  std::optional<Diagnostic> error_;
};

}  // namespace

std::string_view kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::PrefixedIdentifier: return "prefixed identifier";
    case TokenKind::String: return "string";
    case TokenKind::Number: return "number";
    case TokenKind::LeftBrace: return "'{'";
    case TokenKind::RightBrace: return "'}'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Plus: return "'+'";
  }
  return "token";
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !is_ident_start(text[0])) return false;
  for (char c : text.substr(1)) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

bool is_prefixed_identifier(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return false;
  return is_identifier(text.substr(0, colon)) && is_identifier(text.substr(colon + 1));
}

LexResult tokenize(std::string_view source, std::string_view file_id) {
  return Lexer(source, file_id).run();
}

}  // namespace yangc
