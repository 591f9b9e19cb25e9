//===- support.hpp - Helpers shared by the test binaries --------*- C++ -*-===//

#pragma once

#include "viewlint/driver.hpp"
#include "viewlint/method_tables.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace testsupport {

std::filesystem::path corpusDir();

/// Sorted .cvl files directly under corpusDir()/Sub.
std::vector<std::filesystem::path> corpusFiles(const std::string &Sub);

viewlint::SourceAnalysis analyzeText(const std::string &Source,
                                     const std::string &File = "test.cvl",
                                     const viewlint::AnalysisLimits &Limits = {},
                                     bool KeepGraphs = false);
viewlint::SourceAnalysis analyzeFile(const std::filesystem::path &Path);

/// Line of the first source line containing \p Needle, or 0.
int lineOf(const std::string &Source, const std::string &Needle);

/// Mutate-then-use program for one string member. The use sits on the line
/// returned by matrixUseLine().
std::string matrixProgram(const viewlint::MethodInfo &M);
constexpr int matrixUseLine() { return 6; }

struct ToolRun {
  int code = -1;
  std::string out;
};

/// Runs the viewlint executable with \p Args appended (shell-quoted by the
/// caller). stderr is discarded unless \p MergeStderr is set.
ToolRun runTool(const std::string &Args, bool MergeStderr = false);

} // namespace testsupport
