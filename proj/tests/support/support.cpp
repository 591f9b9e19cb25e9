//===- support.cpp - Helpers shared by the test binaries ------------------===//

#include "support.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace viewlint;

namespace testsupport {

fs::path corpusDir() { return VIEWLINT_CORPUS_DIR; }

std::vector<fs::path> corpusFiles(const std::string &Sub) {
  std::vector<fs::path> Out;
  for (const auto &E : fs::directory_iterator(corpusDir() / Sub))
    if (E.path().extension() == ".cvl")
      Out.push_back(E.path());
  std::sort(Out.begin(), Out.end());
  return Out;
}

SourceAnalysis analyzeText(const std::string &Source, const std::string &File,
                           const AnalysisLimits &Limits, bool KeepGraphs) {
  static const CheckerRegistry Checkers = builtinRegistry();
  return analyzeSource(Source, File, Checkers, Limits, KeepGraphs);
}

SourceAnalysis analyzeFile(const fs::path &Path) {
  return analyzeText(readFile(Path.string()), Path.filename().string());
}

int lineOf(const std::string &Source, const std::string &Needle) {
  std::istringstream In(Source);
  int N = 1;
  for (std::string L; std::getline(In, L); ++N)
    if (L.find(Needle) != std::string::npos)
      return N;
  return 0;
}

static std::string argFor(ArgKind K) {
  switch (K) {
  case ArgKind::Int:
    return "1";
  case ArgKind::StringRef:
    return "t";
  default:
    return "\"x\"";
  }
}

std::string matrixProgram(const MethodInfo &M) {
  std::string Call;
  if (M.name == "operator[]")
    Call = "s[0];";
  else if (M.name == "operator+=")
    Call = "s += \"x\";";
  else if (M.name == "operator=")
    Call = "s = \"x\";";
  else {
    std::vector<std::string> Args;
    for (int I = 0; I < M.maxArgs; ++I)
      Args.push_back(argFor(M.args[I]));
    Call = "s." + std::string(M.name) + "(";
    for (std::size_t I = 0; I < Args.size(); ++I)
      Call += (I ? ", " : "") + Args[I];
    Call += ");";
  }
  return "int f() {\n"
         "  std::string s(\"abc\");\n"
         "  std::string t(\"def\");\n"
         "  std::string_view v = s;\n"
         "  " + Call + "\n"
         "  return v.front();\n"
         "}\n";
}

ToolRun runTool(const std::string &Args, bool MergeStderr) {
  std::string Cmd = std::string("\"") + VIEWLINT_BIN + "\" " + Args +
                    (MergeStderr ? " 2>&1" : " 2>/dev/null");
  ToolRun R;
  FILE *P = popen(Cmd.c_str(), "r");
  if (!P)
    return R;
  std::array<char, 4096> Buf;
  for (std::size_t N; (N = fread(Buf.data(), 1, Buf.size(), P)) > 0;)
    R.out.append(Buf.data(), N);
  int Status = pclose(P);
  R.code = WIFEXITED(Status) ? WEXITSTATUS(Status) : -1;
  return R;
}

} // namespace testsupport
