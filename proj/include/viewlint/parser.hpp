//===- parser.hpp - Recursive-descent parser and name resolution -*- C++ -*-=//

#pragma once

#include "viewlint/ast.hpp"
#include "viewlint/lexer.hpp"

#include <memory>
#include <span>
#include <vector>

namespace viewlint {

struct ParseResult {
  std::unique_ptr<TranslationUnit> unit;
  std::vector<FrontendError> errors;
};

/// Builds the AST from \p Tokens. Comment tokens are skipped. On an error the
/// parser resynchronizes at the next `;` or `}` and keeps going, so one call
/// can report several errors.
ParseResult parse(std::span<const Token> Tokens, const std::string &File);

/// Links references to declarations, classifies member calls against the
/// method tables, inserts implicit string-to-view conversions, marks
/// temporaries, and rewrites string assignment into member calls.
std::vector<FrontendError> resolve(TranslationUnit &TU);

/// lex + parse + resolve. The unit is null when any stage reported errors.
struct FrontendResult {
  std::unique_ptr<TranslationUnit> unit;
  std::vector<FrontendError> errors;
  std::vector<Token> tokens;

  bool ok() const { return unit != nullptr && errors.empty(); }
};

FrontendResult parseSource(std::string_view Source, const std::string &File);

} // namespace viewlint
