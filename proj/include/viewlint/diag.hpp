//===- diag.hpp - Bug paths, rendering and the verify harness ---*- C++ -*-===//

#pragma once

#include "viewlint/engine.hpp"
#include "viewlint/lexer.hpp"
#include "viewlint/report.hpp"

#include <string>
#include <vector>

namespace viewlint {

/// Notes explaining \p SR along the shortest path from the root to its sink.
/// Only events that touch the regions and symbols behind the report are kept.
std::vector<PathNote> buildBugPath(const FunctionAnalysis &FA, const SinkReport &SR);

std::string renderText(const std::vector<BugReport> &Reports);
std::string renderJson(const std::vector<BugReport> &Reports);
/// Inverse of renderJson. Throws std::runtime_error on malformed input.
std::vector<BugReport> reportsFromJson(const std::string &Json);

struct Directive {
  enum class Kind { Warning, Note };
  Kind kind;
  /// Line the diagnostic is expected on.
  int line;
  std::string pattern;
  /// Where the directive itself is written.
  SourceLocation loc;
};

struct DirectiveParse {
  std::vector<Directive> directives;
  std::vector<FrontendError> errors;
};

/// Extracts `expected-warning` / `expected-note` directives from comments.
DirectiveParse parseDirectives(const std::vector<Token> &Tokens);

struct VerifyResult {
  bool passed = false;
  /// One line per unmatched directive or diagnostic.
  std::vector<std::string> mismatches;
};

/// Matches directives against reports one to one. Notes take part only when
/// at least one expected-note directive exists.
VerifyResult verifyDirectives(const std::vector<Directive> &Directives,
                              const std::vector<BugReport> &Reports);

} // namespace viewlint
