//===- driver.cpp - One-call analysis of a source buffer ------------------===//

#include "viewlint/driver.hpp"

#include <fstream>
#include <sstream>

namespace viewlint {

CheckerRegistry builtinRegistry() {
  CheckerRegistry R;
  registerBuiltinCheckers(R);
  return R;
}

SourceAnalysis analyzeSource(std::string_view Source, const std::string &File,
                             const CheckerRegistry &Checkers, const AnalysisLimits &Limits,
                             bool KeepGraphs) {
  SourceAnalysis A;
  A.frontend = parseSource(Source, File);
  if (A.frontend.ok())
    A.analysis = analyzeTranslationUnit(*A.frontend.unit, Checkers, Limits, KeepGraphs);
  return A;
}

std::string readFile(const std::string &Path) {
  std::ifstream In(Path, std::ios::binary);
  if (!In)
    throw InputError("cannot open '" + Path + "'");
  std::ostringstream OS;
  OS << In.rdbuf();
  if (In.bad())
    throw InputError("cannot read '" + Path + "'");
  return OS.str();
}

VerifyResult verifySource(const SourceAnalysis &A) {
  DirectiveParse D = parseDirectives(A.frontend.tokens);
  VerifyResult R = verifyDirectives(D.directives, A.analysis.reports);
  for (const FrontendError &E : D.errors)
    R.mismatches.insert(R.mismatches.begin(), E.str());
  R.passed = R.mismatches.empty();
  return R;
}

} // namespace viewlint
