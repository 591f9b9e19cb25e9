//===- engine.hpp - Path-sensitive symbolic execution -----------*- C++ -*-===//
//
// Explores every feasible path through a top-level function, building an
// exploded graph of (program point, program state) nodes. Calls to defined
// functions are inlined; other calls are evaluated conservatively.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "viewlint/cfg.hpp"
#include "viewlint/checker_api.hpp"
#include "viewlint/program_state.hpp"
#include "viewlint/report.hpp"

#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace viewlint {

struct AnalysisLimits {
  int maxInlineDepth = 5;
  /// Back edges taken per loop and path before the path is dropped.
  int maxLoopUnroll = 4;
  int maxNodes = 50000;
};

/// Element \p index of \p block in the CFG of the function running in
/// \p frame. An index equal to the element count means the terminator.
struct ProgramPoint {
  FrameId frame = 0;
  int block = 0;
  int index = 0;

  friend bool operator==(const ProgramPoint &, const ProgramPoint &) = default;
  friend auto operator<=>(const ProgramPoint &, const ProgramPoint &) = default;
};

struct ExplodedEdge {
  int from;
  int to;
  /// Checker notes produced by the transition.
  std::vector<NoteTag> notes;
};

struct ExplodedNode {
  int id;
  ProgramPoint point;
  ProgramStateRef state;
  std::vector<int> inEdges;
  std::vector<int> outEdges;
  bool sink = false;
};

class ExplodedGraph {
public:
  const ExplodedNode &node(int Id) const { return Nodes[Id]; }
  const ExplodedEdge &edge(int Id) const { return Edges[Id]; }
  std::size_t numNodes() const { return Nodes.size(); }
  std::size_t numEdges() const { return Edges.size(); }
  const std::vector<ExplodedNode> &nodes() const { return Nodes; }
  const std::vector<ExplodedEdge> &edges() const { return Edges; }

  /// Returns the node for (P, S), creating it if needed. \p Created tells
  /// which happened.
  int getNode(const ProgramPoint &P, ProgramStateRef S, bool &Created);
  /// A node that is never merged with another one.
  int addSink(const ProgramPoint &P, ProgramStateRef S);
  void addEdge(int From, int To, std::vector<NoteTag> Notes);

private:
  std::vector<ExplodedNode> Nodes;
  std::vector<ExplodedEdge> Edges;
  std::unordered_map<std::size_t, std::vector<int>> Index;
};

struct SinkReport {
  PendingReport report;
  int node;
};

/// Everything produced by analyzing one top-level function.
struct FunctionAnalysis {
  const Node *function = nullptr;
  std::unique_ptr<SymbolicContext> symbols;
  ExplodedGraph graph;
  std::vector<SinkReport> sinks;
  /// The node budget ran out.
  bool incomplete = false;
  /// Nodes with nothing left to execute on a path that did not end in a bug.
  std::vector<int> leaves;
};

struct AnalysisResult {
  std::vector<BugReport> reports;
  /// Names of functions whose analysis hit the node budget.
  std::vector<std::string> incomplete;
  /// Filled when requested; one entry per analyzed top-level function.
  std::vector<FunctionAnalysis> functions;
};

/// Analyzes one function as an entry point. Functions inlined along the way
/// are added to \p Inlined.
FunctionAnalysis analyzeFunction(const TranslationUnit &TU, const Node &Function,
                                 const CheckerRegistry &Checkers, const AnalysisLimits &Limits,
                                 std::set<const Node *> &Inlined);

/// Analyzes every defined function in declaration order, skipping functions
/// already inlined into an earlier one. Reports are deduplicated and sorted.
AnalysisResult analyzeTranslationUnit(const TranslationUnit &TU, const CheckerRegistry &Checkers,
                                      const AnalysisLimits &Limits = {},
                                      bool KeepGraphs = false);

/// `graph`, `node`, indented state and `edge` lines.
std::string dumpExplodedGraph(const FunctionAnalysis &FA);

/// Human-readable point, e.g. `g@0:B2.1`.
std::string pointName(const FunctionAnalysis &FA, const ProgramPoint &P);

} // namespace viewlint
