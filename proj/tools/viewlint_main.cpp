//===- viewlint_main.cpp - Command-line driver ----------------------------===//
//
// Exit codes: 0 clean, 1 warnings or verify mismatches, 2 input errors,
// 3 bad usage.
//
//===----------------------------------------------------------------------===//

#include "viewlint/driver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace viewlint;

namespace {

struct FileOutput {
  std::string out;
  std::string err;
  std::vector<BugReport> reports;
  std::string egraph;
  int code = 0;
};

struct Options {
  std::vector<std::string> files;
  std::string format = "text";
  bool verify = false;
  int jobs = 1;
  AnalysisLimits limits;
  std::vector<std::string> disable;
  std::string enableOnly;
  bool dumpCfg = false;
  std::string dumpEgraph;
  bool dumpConstraints = false;
  bool listCheckers = false;
};

FileOutput runFile(const std::string &Path, const Options &O, const CheckerRegistry &Checkers) {
  FileOutput R;
  std::string Source;
  try {
    Source = readFile(Path);
  } catch (const InputError &E) {
    R.err = "error: " + std::string(E.what()) + "\n";
    R.code = 2;
    return R;
  }
  bool Keep = !O.dumpEgraph.empty() || O.dumpConstraints;
  SourceAnalysis A = analyzeSource(Source, Path, Checkers, O.limits, Keep);
  if (!A.ok()) {
    for (const FrontendError &E : A.frontend.errors)
      R.err += E.str() + "\n";
    R.code = 2;
    return R;
  }
  std::ostringstream Out;
  if (O.dumpCfg)
    for (const NodePtr &Fn : A.frontend.unit->functions)
      if (Fn->hasBody)
        Out << buildCfg(*Fn).dump();
  for (const FunctionAnalysis &FA : A.analysis.functions) {
    if (!O.dumpEgraph.empty())
      R.egraph += dumpExplodedGraph(FA);
    if (O.dumpConstraints)
      for (int Leaf : FA.leaves) {
        Out << "leaf " << Leaf << " of " << FA.function->name << '\n';
        std::istringstream Lines(FA.graph.node(Leaf).state->dump(*FA.symbols));
        for (std::string L; std::getline(Lines, L);)
          Out << "  " << L << '\n';
      }
  }
  for (const std::string &Fn : A.analysis.incomplete)
    R.err += Path + ": note: analysis of '" + Fn + "' stopped after " +
             std::to_string(O.limits.maxNodes) + " nodes; results are partial\n";

  if (O.verify) {
    VerifyResult V = verifySource(A);
    for (const std::string &M : V.mismatches)
      Out << M << '\n';
    Out << (V.passed ? "PASS " : "FAIL ") << Path << '\n';
    R.code = V.passed ? 0 : 1;
  } else {
    R.reports = A.analysis.reports;
    R.code = R.reports.empty() ? 0 : 1;
  }
  R.out = Out.str();
  return R;
}

std::vector<std::string> splitIds(const std::string &S) {
  std::vector<std::string> Out;
  std::stringstream SS(S);
  for (std::string Id; std::getline(SS, Id, ',');)
    if (!Id.empty())
      Out.push_back(Id);
  return Out;
}

} // namespace

int main(int argc, char **argv) {
  Options O;
  CLI::App App{"viewlint: finds dangling std::string_view and std::string buffer pointers"};
  App.add_option("files", O.files, "Input files");
  App.add_option("--format", O.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  App.add_flag("--verify", O.verify, "Check expected-warning/expected-note directives");
  App.add_option("--jobs", O.jobs, "Files analyzed in parallel")->check(CLI::PositiveNumber);
  App.add_option("--max-inline-depth", O.limits.maxInlineDepth, "Maximum call stack depth")
      ->check(CLI::PositiveNumber);
  App.add_option("--max-unroll", O.limits.maxLoopUnroll, "Loop back edges taken per path")
      ->check(CLI::NonNegativeNumber);
  App.add_option("--max-nodes", O.limits.maxNodes, "Node budget per function")
      ->check(CLI::PositiveNumber);
  App.add_option("--disable", O.disable, "Disable a checker (repeatable)")
      ->allow_extra_args(false);
  App.add_option("--enable-only", O.enableOnly, "Comma-separated checkers to keep enabled");
  App.add_flag("--dump-cfg", O.dumpCfg, "Print the CFG of every function");
  App.add_option("--dump-egraph", O.dumpEgraph, "Write the exploded graph to a file");
  App.add_flag("--dump-constraints", O.dumpConstraints, "Print the state at every path end");
  App.add_flag("--list-checkers", O.listCheckers, "List available checkers");

  try {
    App.parse(argc, argv);
  } catch (const CLI::CallForHelp &E) {
    return App.exit(E);
  } catch (const CLI::ParseError &E) {
    App.exit(E);
    return 3;
  }

  CheckerRegistry Checkers = builtinRegistry();
  if (O.listCheckers) {
    for (const auto &C : Checkers.checkers())
      std::cout << C.id << "  " << C.description << '\n';
    return 0;
  }
  if (O.files.empty()) {
    std::cerr << App.help();
    return 3;
  }
  for (const std::string &Id : O.disable)
    if (!Checkers.setEnabled(Id, false)) {
      std::cerr << "error: unknown checker '" << Id << "'\n";
      return 3;
    }
  if (!O.enableOnly.empty()) {
    auto Keep = splitIds(O.enableOnly);
    for (const std::string &Id : Keep)
      if (!Checkers.has(Id)) {
        std::cerr << "error: unknown checker '" << Id << "'\n";
        return 3;
      }
    for (const auto &C : Checkers.checkers())
      Checkers.setEnabled(C.id, std::find(Keep.begin(), Keep.end(), C.id) != Keep.end());
  }

  std::vector<FileOutput> Results(O.files.size());
  std::atomic<std::size_t> NextFile{0};
  auto Worker = [&] {
    for (std::size_t I; (I = NextFile++) < O.files.size();)
      Results[I] = runFile(O.files[I], O, Checkers);
  };
  std::vector<std::thread> Pool;
  int Threads = std::min<int>(O.jobs, static_cast<int>(O.files.size()));
  for (int T = 1; T < Threads; ++T)
    Pool.emplace_back(Worker);
  Worker();
  for (std::thread &T : Pool)
    T.join();

  int Code = 0;
  std::vector<BugReport> All;
  std::string Egraph;
  for (const FileOutput &R : Results) {
    std::cerr << R.err;
    std::cout << R.out;
    All.insert(All.end(), R.reports.begin(), R.reports.end());
    Egraph += R.egraph;
    Code = std::max(Code, R.code);
  }
  if (!O.verify) {
    std::stable_sort(All.begin(), All.end(), reportLess);
    std::cout << (O.format == "json" ? renderJson(All) : renderText(All));
  }
  if (!O.dumpEgraph.empty()) {
    std::ofstream Out(O.dumpEgraph);
    if (!Out) {
      std::cerr << "error: cannot write '" << O.dumpEgraph << "'\n";
      return 2;
    }
    Out << Egraph;
  }
  return Code;
}
