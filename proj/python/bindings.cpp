//===- bindings.cpp - Python module ---------------------------------------===//

#include "viewlint/driver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace viewlint;

namespace {

struct FrontendFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> disable;
  std::optional<std::vector<std::string>> enableOnly;
  AnalysisLimits limits;
};

CheckerRegistry registryFor(const Options &O) {
  CheckerRegistry R = builtinRegistry();
  auto Check = [&](const std::string &Id) {
    if (!R.has(Id))
      throw py::value_error("unknown checker '" + Id + "'");
  };
  for (const std::string &Id : O.disable) {
    Check(Id);
    R.setEnabled(Id, false);
  }
  if (O.enableOnly) {
    for (const std::string &Id : *O.enableOnly)
      Check(Id);
    for (const auto &C : R.checkers())
      R.setEnabled(C.id, std::find(O.enableOnly->begin(), O.enableOnly->end(), C.id) !=
                             O.enableOnly->end());
  }
  return R;
}

SourceAnalysis run(const std::string &Source, const std::string &File, const Options &O,
                   bool KeepGraphs = false) {
  CheckerRegistry R = registryFor(O);
  SourceAnalysis A;
  {
    py::gil_scoped_release NoGil;
    A = analyzeSource(Source, File, R, O.limits, KeepGraphs);
  }
  if (!A.ok()) {
    std::string Msg;
    for (const FrontendError &E : A.frontend.errors)
      Msg += (Msg.empty() ? "" : "\n") + E.str();
    throw FrontendFailure(Msg);
  }
  return A;
}

py::dict noteDict(const PathNote &N) {
  py::dict D;
  D["kind"] = N.kind == PathNote::Kind::Event ? "event" : "control";
  D["message"] = N.message;
  D["line"] = N.loc.line;
  D["col"] = N.loc.column;
  return D;
}

py::dict reportDict(const BugReport &R) {
  py::dict D;
  D["checker"] = R.checkerId;
  D["category"] = std::string(categoryName(R.category));
  D["message"] = R.message;
  D["file"] = R.loc.file;
  D["line"] = R.loc.line;
  D["col"] = R.loc.column;
  py::list Path;
  for (const PathNote &N : R.path)
    Path.append(noteDict(N));
  D["path"] = Path;
  return D;
}

Options makeOptions(std::vector<std::string> Disable,
                    std::optional<std::vector<std::string>> EnableOnly, int Depth, int Unroll,
                    int Nodes) {
  if (Depth < 1 || Unroll < 0 || Nodes < 1)
    throw py::value_error("limits must be positive (max_unroll may be 0)");
  Options O{std::move(Disable), std::move(EnableOnly), {}};
  O.limits.maxInlineDepth = Depth;
  O.limits.maxLoopUnroll = Unroll;
  O.limits.maxNodes = Nodes;
  return O;
}

#define VIEWLINT_OPTION_ARGS                                                                       \
  py::arg("file") = "<input>", py::kw_only(), py::arg("disable") = std::vector<std::string>{},     \
  py::arg("enable_only") = py::none(), py::arg("max_inline_depth") = 5,                           \
  py::arg("max_unroll") = 4, py::arg("max_nodes") = 50000

} // namespace

PYBIND11_MODULE(_viewlint, m) {
  m.doc() = "Dangling std::string_view and std::string buffer pointer analysis";

  py::register_exception<FrontendFailure>(m, "FrontendError", PyExc_ValueError);

  m.def(
      "analyze",
      [](const std::string &Source, const std::string &File, std::vector<std::string> Disable,
         std::optional<std::vector<std::string>> EnableOnly, int Depth, int Unroll, int Nodes) {
        SourceAnalysis A =
            run(Source, File, makeOptions(std::move(Disable), std::move(EnableOnly), Depth, Unroll, Nodes));
        py::list Out;
        for (const BugReport &R : A.analysis.reports)
          Out.append(reportDict(R));
        return Out;
      },
      py::arg("source"), VIEWLINT_OPTION_ARGS, "Analyze source text; returns a list of report dicts.");

  m.def(
      "analyze_json",
      [](const std::string &Source, const std::string &File, std::vector<std::string> Disable,
         std::optional<std::vector<std::string>> EnableOnly, int Depth, int Unroll, int Nodes) {
        SourceAnalysis A =
            run(Source, File, makeOptions(std::move(Disable), std::move(EnableOnly), Depth, Unroll, Nodes));
        return renderJson(A.analysis.reports);
      },
      py::arg("source"), VIEWLINT_OPTION_ARGS, "Analyze source text; returns the JSON document.");

  m.def(
      "analyze_text",
      [](const std::string &Source, const std::string &File, std::vector<std::string> Disable,
         std::optional<std::vector<std::string>> EnableOnly, int Depth, int Unroll, int Nodes) {
        SourceAnalysis A =
            run(Source, File, makeOptions(std::move(Disable), std::move(EnableOnly), Depth, Unroll, Nodes));
        return renderText(A.analysis.reports);
      },
      py::arg("source"), VIEWLINT_OPTION_ARGS, "Analyze source text; returns compiler-style text.");

  m.def(
      "verify",
      [](const std::string &Source, const std::string &File) {
        SourceAnalysis A = run(Source, File, Options{});
        VerifyResult V = verifySource(A);
        return py::make_tuple(V.passed, V.mismatches);
      },
      py::arg("source"), py::arg("file") = "<input>",
      "Check expected-warning/expected-note directives. Returns (passed, mismatches).");

  m.def(
      "dump_cfg",
      [](const std::string &Source, const std::string &File) {
        SourceAnalysis A = run(Source, File, Options{});
        std::string Out;
        for (const NodePtr &Fn : A.frontend.unit->functions)
          if (Fn->hasBody)
            Out += buildCfg(*Fn).dump();
        return Out;
      },
      py::arg("source"), py::arg("file") = "<input>");

  m.def(
      "dump_egraph",
      [](const std::string &Source, const std::string &File, std::vector<std::string> Disable,
         std::optional<std::vector<std::string>> EnableOnly, int Depth, int Unroll, int Nodes) {
        SourceAnalysis A = run(Source, File,
                               makeOptions(std::move(Disable), std::move(EnableOnly), Depth, Unroll, Nodes),
                               true);
        std::string Out;
        for (const FunctionAnalysis &FA : A.analysis.functions)
          Out += dumpExplodedGraph(FA);
        return Out;
      },
      py::arg("source"), VIEWLINT_OPTION_ARGS);

  m.def(
      "leaf_states",
      [](const std::string &Source, const std::string &File, std::vector<std::string> Disable,
         std::optional<std::vector<std::string>> EnableOnly, int Depth, int Unroll, int Nodes) {
        SourceAnalysis A = run(Source, File,
                               makeOptions(std::move(Disable), std::move(EnableOnly), Depth, Unroll, Nodes),
                               true);
        py::dict Out;
        for (const FunctionAnalysis &FA : A.analysis.functions) {
          py::list States;
          for (int L : FA.leaves)
            States.append(FA.graph.node(L).state->dump(*FA.symbols));
          Out[py::str(FA.function->name)] = States;
        }
        return Out;
      },
      py::arg("source"), VIEWLINT_OPTION_ARGS,
      "Map of function name to the state dump at each completed path.");

  m.def("list_checkers", [] {
    std::vector<std::pair<std::string, std::string>> Out;
    CheckerRegistry R = builtinRegistry();
    for (const auto &C : R.checkers())
      Out.emplace_back(C.id, C.description);
    return Out;
  });
}
