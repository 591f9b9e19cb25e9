//===- driver.hpp - One-call analysis of a source buffer --------*- C++ -*-===//

#pragma once

#include "viewlint/checkers.hpp"
#include "viewlint/diag.hpp"
#include "viewlint/engine.hpp"
#include "viewlint/parser.hpp"

#include <string>
#include <string_view>

namespace viewlint {

/// A registry holding the four built-in checkers, all enabled.
CheckerRegistry builtinRegistry();

struct SourceAnalysis {
  FrontendResult frontend;
  AnalysisResult analysis;
  bool ok() const { return frontend.ok(); }
};

/// Parses and analyzes \p Source. When the frontend fails the analysis is
/// left empty.
SourceAnalysis analyzeSource(std::string_view Source, const std::string &File,
                             const CheckerRegistry &Checkers, const AnalysisLimits &Limits = {},
                             bool KeepGraphs = false);

/// Throws InputError when the file cannot be read.
std::string readFile(const std::string &Path);

/// Runs the verify harness on an analyzed file. Malformed directives are
/// reported as mismatches.
VerifyResult verifySource(const SourceAnalysis &A);

} // namespace viewlint
