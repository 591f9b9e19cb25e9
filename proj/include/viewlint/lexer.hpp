//===- lexer.hpp - Tokenizer for the analyzed language ----------*- C++ -*-===//

#pragma once

#include "viewlint/source.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace viewlint {

enum class TokenKind {
  Identifier,
  IntLiteral,
  StringLiteral,
  CharLiteral,
  Punct,
  /// `//` or `/* */` comment; kept as trivia for the verify harness.
  Comment,
};

struct Token {
  TokenKind kind;
  /// Spelling for identifiers, punctuators and comments (comment text
  /// excludes the delimiters); the decoded value for string literals.
  std::string text;
  SourceLocation loc;
  SourceLocation endLoc;
  std::int64_t intValue = 0;

  bool is(TokenKind K, std::string_view T) const { return kind == K && text == T; }
  bool isPunct(std::string_view T) const { return is(TokenKind::Punct, T); }
  bool isIdent(std::string_view T) const { return is(TokenKind::Identifier, T); }
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<FrontendError> errors;
};

/// Tokenizes \p Source. Illegal characters produce a LexError and are
/// skipped so later errors can still be found.
LexResult lex(std::string_view Source, const std::string &File = "<input>");

std::string_view tokenKindName(TokenKind K);

} // namespace viewlint
