//===- lexer.cpp - Tokenizer for the analyzed language --------------------===//

#include "viewlint/lexer.hpp"

#include <array>
#include <cctype>
#include <limits>

namespace viewlint {

std::string FrontendError::str() const {
  const char *Prefix = kind == FrontendErrorKind::Lex     ? "lex error"
                       : kind == FrontendErrorKind::Parse ? "parse error"
                                                          : "resolve error";
  return loc.file + ":" + std::to_string(loc.line) + ":" +
         std::to_string(loc.column) + ": " + Prefix + ": " + message;
}

std::string_view tokenKindName(TokenKind K) {
  switch (K) {
  case TokenKind::Identifier:
    return "identifier";
  case TokenKind::IntLiteral:
    return "integer literal";
  case TokenKind::StringLiteral:
    return "string literal";
  case TokenKind::CharLiteral:
    return "character literal";
  case TokenKind::Punct:
    return "punctuator";
  case TokenKind::Comment:
    return "comment";
  }
  return "token";
}

namespace {

// Longest match first.
constexpr std::array<std::string_view, 21> Punctuators = {
    "::", "==", "!=", "+=", "(", ")", "{", "}", "[", "]", ";",
    ",",  ".",  "=",  "<",  ">",  "+", "-", "&", "*", "!"};

class Lexer {
public:
  Lexer(std::string_view Src, const std::string &File) : Src(Src), File(File) {}

  LexResult run() {
    LexResult R;
    while (Pos < Src.size()) {
      char C = Src[Pos];
      if (C == '\n' || C == ' ' || C == '\t' || C == '\r' || C == '\f' ||
          C == '\v') {
        advance();
        continue;
      }
      SourceLocation Start = here();
      if (C == '/' && peek(1) == '/') {
        advance(2);
        std::size_t B = Pos;
        while (Pos < Src.size() && Src[Pos] != '\n')
          advance();
        R.tokens.push_back({TokenKind::Comment, std::string(Src.substr(B, Pos - B)),
                            Start, here()});
        continue;
      }
      if (C == '/' && peek(1) == '*') {
        advance(2);
        std::size_t B = Pos;
        while (Pos < Src.size() && !(Src[Pos] == '*' && peek(1) == '/'))
          advance();
        if (Pos >= Src.size()) {
          R.errors.push_back({FrontendErrorKind::Lex, Start, "unterminated comment"});
          break;
        }
        std::string Text(Src.substr(B, Pos - B));
        advance(2);
        R.tokens.push_back({TokenKind::Comment, std::move(Text), Start, here()});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(C)) || C == '_') {
        std::size_t B = Pos;
        while (Pos < Src.size() &&
               (std::isalnum(static_cast<unsigned char>(Src[Pos])) || Src[Pos] == '_'))
          advance();
        R.tokens.push_back({TokenKind::Identifier, std::string(Src.substr(B, Pos - B)),
                            Start, here()});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(C))) {
        lexNumber(R, Start);
        continue;
      }
      if (C == '"') {
        lexQuoted(R, Start, '"', TokenKind::StringLiteral);
        continue;
      }
      if (C == '\'') {
        lexQuoted(R, Start, '\'', TokenKind::CharLiteral);
        continue;
      }
      bool Matched = false;
      for (std::string_view P : Punctuators) {
        if (Src.substr(Pos, P.size()) == P) {
          advance(P.size());
          R.tokens.push_back({TokenKind::Punct, std::string(P), Start, here()});
          Matched = true;
          break;
        }
      }
      if (!Matched) {
        R.errors.push_back({FrontendErrorKind::Lex, Start,
                            std::string("illegal character '") + C + "'"});
        advance();
      }
    }
    return R;
  }

private:
  SourceLocation here() const { return {File, Line, Col}; }
  char peek(std::size_t Ahead) const {
    return Pos + Ahead < Src.size() ? Src[Pos + Ahead] : '\0';
  }
  void advance(std::size_t N = 1) {
    for (std::size_t I = 0; I < N && Pos < Src.size(); ++I, ++Pos) {
      if (Src[Pos] == '\n') {
        ++Line;
        Col = 1;
      } else {
        ++Col;
      }
    }
  }

  void lexNumber(LexResult &R, const SourceLocation &Start) {
    std::size_t B = Pos;
    std::int64_t Value = 0;
    bool Overflow = false;
    while (Pos < Src.size() && std::isdigit(static_cast<unsigned char>(Src[Pos]))) {
      int D = Src[Pos] - '0';
      if (Value > (std::numeric_limits<std::int64_t>::max() - D) / 10)
        Overflow = true;
      else
        Value = Value * 10 + D;
      advance();
    }
    if (Overflow)
      R.errors.push_back({FrontendErrorKind::Lex, Start, "integer literal too large"});
    Token T{TokenKind::IntLiteral, std::string(Src.substr(B, Pos - B)), Start, here()};
    T.intValue = Value;
    R.tokens.push_back(std::move(T));
  }

  void lexQuoted(LexResult &R, const SourceLocation &Start, char Quote,
                 TokenKind Kind) {
    advance();
    std::string Value;
    while (true) {
      if (Pos >= Src.size() || Src[Pos] == '\n') {
        R.errors.push_back({FrontendErrorKind::Lex, Start,
                            Kind == TokenKind::StringLiteral
                                ? "unterminated string literal"
                                : "unterminated character literal"});
        return;
      }
      char C = Src[Pos];
      if (C == Quote) {
        advance();
        break;
      }
      if (C == '\\') {
        char E = peek(1);
        switch (E) {
        case '"':
        case '\\':
        case '\'':
          Value += E;
          break;
        case 'n':
          Value += '\n';
          break;
        case 't':
          Value += '\t';
          break;
        case '0':
          Value += '\0';
          break;
        default:
          R.errors.push_back({FrontendErrorKind::Lex, here(),
                              std::string("unknown escape sequence '\\") + E + "'"});
          break;
        }
        advance(2);
        continue;
      }
      Value += C;
      advance();
    }
    Token T{Kind, Value, Start, here()};
    if (Kind == TokenKind::CharLiteral) {
      if (Value.size() != 1)
        R.errors.push_back({FrontendErrorKind::Lex, Start,
                            "character literal must hold exactly one character"});
      T.intValue = Value.empty() ? 0 : static_cast<unsigned char>(Value[0]);
    }
    R.tokens.push_back(std::move(T));
  }

  std::string_view Src;
  const std::string &File;
  std::size_t Pos = 0;
  int Line = 1;
  int Col = 1;
};

} // namespace

LexResult lex(std::string_view Source, const std::string &File) {
  return Lexer(Source, File).run();
}

} // namespace viewlint
