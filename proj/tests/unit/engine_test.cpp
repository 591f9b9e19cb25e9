//===- engine_test.cpp - Exploded graph construction ----------------------===//

#include "support/support.hpp"

#include <gtest/gtest.h>

using namespace viewlint;
using testsupport::analyzeText;

namespace {

const FunctionAnalysis *analysisOf(const SourceAnalysis &A, const std::string &Name) {
  for (const FunctionAnalysis &FA : A.analysis.functions)
    if (FA.function->name == Name)
      return &FA;
  return nullptr;
}

std::vector<std::string> leafDumps(const FunctionAnalysis &FA) {
  std::vector<std::string> Out;
  for (int L : FA.leaves)
    Out.push_back(FA.graph.node(L).state->dump(*FA.symbols));
  return Out;
}

const char *BranchAssign = "void g(int b, int &x) {\n"
                           "  if (b)\n"
                           "    x = b + 1;\n"
                           "  else\n"
                           "    x = 42;\n"
                           "}\n";

} // namespace

TEST(Engine, BranchAssignLeaves) {
  SourceAnalysis A = analyzeText(BranchAssign, "g.cvl", {}, true);
  ASSERT_TRUE(A.ok());
  const FunctionAnalysis *FA = analysisOf(A, "g");
  ASSERT_NE(FA, nullptr);
  auto Leaves = leafDumps(*FA);
  ASSERT_EQ(Leaves.size(), 2u);
  // The true branch is explored first.
  EXPECT_EQ(Leaves[0], "store: b: $b, x: $b+1\nconstraint: $b : [IMIN, -1] ∪ [1, IMAX]\n");
  EXPECT_EQ(Leaves[1], "store: b: $b, x: 42\nconstraint: $b : [0, 0]\n");
  EXPECT_FALSE(FA->incomplete);
}

TEST(Engine, GraphInvariants) {
  SourceAnalysis A = analyzeText(BranchAssign, "g.cvl", {}, true);
  const ExplodedGraph &G = A.analysis.functions[0].graph;
  ASSERT_GT(G.numNodes(), 0u);
  EXPECT_TRUE(G.node(0).inEdges.empty());
  for (std::size_t N = 1; N < G.numNodes(); ++N)
    EXPECT_FALSE(G.node(static_cast<int>(N)).inEdges.empty()) << N;
  for (std::size_t E = 0; E < G.numEdges(); ++E) {
    const ExplodedEdge &Ed = G.edge(static_cast<int>(E));
    EXPECT_NE(Ed.from, Ed.to);
  }
}

TEST(Engine, DeadConditionSymbolLetsPathsMerge) {
  SourceAnalysis A = analyzeText("int g();\n"
                                 "int f() {\n"
                                 "  if (g()) {\n"
                                 "  }\n"
                                 "  int z = 2;\n"
                                 "  return z;\n"
                                 "}\n",
                                 "m.cvl", {}, true);
  ASSERT_TRUE(A.ok());
  const FunctionAnalysis *FA = analysisOf(A, "f");
  ASSERT_NE(FA, nullptr);
  EXPECT_EQ(FA->leaves.size(), 1u);
  // Some node has two predecessors.
  bool Joined = false;
  for (std::size_t N = 0; N < FA->graph.numNodes(); ++N)
    Joined |= FA->graph.node(static_cast<int>(N)).inEdges.size() >= 2;
  EXPECT_TRUE(Joined);
}

TEST(Engine, InfeasibleBranchPruned) {
  SourceAnalysis A = analyzeText("int f(int a) {\n"
                                 "  int r = 0;\n"
                                 "  if (a < 0) {\n"
                                 "    if (a > 5) {\n"
                                 "      r = 1;\n"
                                 "    }\n"
                                 "  }\n"
                                 "  return r;\n"
                                 "}\n",
                                 "i.cvl", {}, true);
  const FunctionAnalysis *FA = analysisOf(A, "f");
  ASSERT_NE(FA, nullptr);
  for (const std::string &D : leafDumps(*FA))
    EXPECT_EQ(D.find("r: 1"), std::string::npos) << D;
}

TEST(Engine, LoopUnrollBound) {
  const char *Src = "int loop(int n) {\n"
                    "  int i = 0;\n"
                    "  while (i < n) {\n"
                    "    i = i + 1;\n"
                    "  }\n"
                    "  return i;\n"
                    "}\n";
  for (int Unroll : {0, 1, 4}) {
    AnalysisLimits L;
    L.maxLoopUnroll = Unroll;
    SourceAnalysis A = analyzeText(Src, "l.cvl", L, true);
    const FunctionAnalysis *FA = analysisOf(A, "loop");
    ASSERT_NE(FA, nullptr);
    EXPECT_EQ(FA->leaves.size(), static_cast<std::size_t>(Unroll + 1)) << Unroll;
  }
}

TEST(Engine, NodeBudgetMarksIncomplete) {
  AnalysisLimits L;
  L.maxNodes = 5;
  SourceAnalysis A = analyzeText(BranchAssign, "g.cvl", L, true);
  ASSERT_EQ(A.analysis.incomplete, std::vector<std::string>{"g"});
  EXPECT_TRUE(A.analysis.functions[0].incomplete);
  EXPECT_LE(A.analysis.functions[0].graph.numNodes(), 6u);
}

TEST(Engine, InlinedCalleeKeepsCallerFrameIntact) {
  SourceAnalysis A = analyzeText("int helper(int a) {\n"
                                 "  int x = a + 1;\n"
                                 "  return x;\n"
                                 "}\n"
                                 "int f() {\n"
                                 "  int x = 5;\n"
                                 "  int y = helper(1);\n"
                                 "  return x + y;\n"
                                 "}\n",
                                 "fr.cvl", {}, true);
  const FunctionAnalysis *FA = analysisOf(A, "f");
  ASSERT_NE(FA, nullptr);
  auto Leaves = leafDumps(*FA);
  ASSERT_EQ(Leaves.size(), 1u);
  EXPECT_EQ(Leaves[0], "store: x: 5, y: 2\n");
}

TEST(Engine, InlinedFunctionSkippedAtTopLevel) {
  SourceAnalysis A = analyzeText("int f() {\n"
                                 "  return helper(1);\n"
                                 "}\n"
                                 "int helper(int a) {\n"
                                 "  return a;\n"
                                 "}\n",
                                 "sk.cvl", {}, true);
  ASSERT_TRUE(A.ok()) << A.frontend.errors[0].str();
  EXPECT_NE(analysisOf(A, "f"), nullptr);
  EXPECT_EQ(analysisOf(A, "helper"), nullptr);
}

TEST(Engine, RecursionTerminates) {
  SourceAnalysis A = analyzeText("int rec(int n) {\n"
                                 "  if (n < 1)\n"
                                 "    return 0;\n"
                                 "  return rec(n - 1);\n"
                                 "}\n",
                                 "r.cvl", {}, true);
  const FunctionAnalysis *FA = analysisOf(A, "rec");
  ASSERT_NE(FA, nullptr);
  EXPECT_FALSE(FA->incomplete);
  EXPECT_EQ(FA->leaves.size(), 2u);
}

TEST(Engine, InlineDepthLimit) {
  const char *Src = "std::string_view leaf() {\n"
                    "  std::string s(\"x\");\n"
                    "  return s;\n"
                    "}\n"
                    "std::string_view mid() {\n"
                    "  return leaf();\n"
                    "}\n"
                    "std::string_view top() {\n"
                    "  return mid();\n"
                    "}\n";
  // leaf() is the first function, so it is analyzed on its own either way.
  AnalysisLimits Shallow;
  Shallow.maxInlineDepth = 1;
  SourceAnalysis A = analyzeText(Src, "d.cvl", Shallow);
  ASSERT_EQ(A.analysis.reports.size(), 1u);
  EXPECT_EQ(A.analysis.reports[0].category, BugCategory::StackUseAfterReturn);
  EXPECT_EQ(A.analysis.reports[0].loc.line, 3);
}

TEST(Engine, Deterministic) {
  std::string Src = testsupport::matrixProgram(*lookupMethod(TypeKind::String, "append"));
  SourceAnalysis A = analyzeText(Src, "d.cvl", {}, true);
  SourceAnalysis B = analyzeText(Src, "d.cvl", {}, true);
  ASSERT_EQ(A.analysis.functions.size(), B.analysis.functions.size());
  for (std::size_t I = 0; I < A.analysis.functions.size(); ++I)
    EXPECT_EQ(dumpExplodedGraph(A.analysis.functions[I]),
              dumpExplodedGraph(B.analysis.functions[I]));
  EXPECT_EQ(renderText(A.analysis.reports), renderText(B.analysis.reports));
}

TEST(Engine, EgraphDumpFormat) {
  SourceAnalysis A = analyzeText(BranchAssign, "g.cvl", {}, true);
  std::string D = dumpExplodedGraph(A.analysis.functions[0]);
  EXPECT_EQ(D.rfind("graph g\n", 0), 0u);
  EXPECT_NE(D.find("node 0 point="), std::string::npos);
  EXPECT_NE(D.find("edge 0 1"), std::string::npos);
}

TEST(Engine, SinkStopsPath) {
  SourceAnalysis A = analyzeText("int f() {\n"
                                 "  std::string_view v;\n"
                                 "  {\n"
                                 "    std::string s(\"a\");\n"
                                 "    v = s;\n"
                                 "  }\n"
                                 "  int a = v[0];\n"
                                 "  int b = v[1];\n"
                                 "  return a + b;\n"
                                 "}\n",
                                 "s.cvl", {}, true);
  ASSERT_EQ(A.analysis.reports.size(), 1u);
  EXPECT_EQ(A.analysis.reports[0].loc.line, 7);
  const FunctionAnalysis &FA = A.analysis.functions[0];
  ASSERT_EQ(FA.sinks.size(), 1u);
  EXPECT_TRUE(FA.graph.node(FA.sinks[0].node).sink);
  EXPECT_TRUE(FA.graph.node(FA.sinks[0].node).outEdges.empty());
  EXPECT_TRUE(FA.leaves.empty());
}
