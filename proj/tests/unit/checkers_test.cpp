//===- checkers_test.cpp - String modeling and lifetime checkers ----------===//

#include "support/support.hpp"

#include <gtest/gtest.h>

using namespace viewlint;
using testsupport::analyzeText;

namespace {

std::vector<BugReport> reportsFor(const std::string &Src, const CheckerRegistry *Checkers = nullptr) {
  if (!Checkers)
    return analyzeText(Src, "t.cvl").analysis.reports;
  SourceAnalysis A = analyzeSource(Src, "t.cvl", *Checkers);
  EXPECT_TRUE(A.ok());
  return A.analysis.reports;
}

std::vector<std::string> lines(const std::vector<std::string> &L) {
  return L;
}

std::string program(const std::vector<std::string> &Body, const std::string &Prelude = "") {
  std::string S = Prelude + "int f() {\n";
  for (const std::string &L : lines(Body))
    S += "  " + L + "\n";
  return S + "}\n";
}

class StringMethodMatrix : public ::testing::TestWithParam<std::string> {};
class ViewMethodUse : public ::testing::TestWithParam<std::string> {};

std::vector<std::string> namesOf(std::span<const MethodInfo> Ms) {
  std::vector<std::string> Out;
  for (const MethodInfo &M : Ms)
    Out.emplace_back(M.name);
  return Out;
}

std::string paramName(const ::testing::TestParamInfo<std::string> &I) {
  std::string N;
  for (char C : I.param)
    N += std::isalnum(static_cast<unsigned char>(C)) ? C : '_';
  return N + "_" + std::to_string(I.index);
}

} // namespace

TEST(MethodTables, TwentySixStringMembers) {
  EXPECT_EQ(stringMethods().size(), 26u);
  int Invalidating = 0;
  for (const MethodInfo &M : stringMethods())
    Invalidating += M.invalidates();
  EXPECT_EQ(Invalidating, 13);
}

TEST(MethodTables, CapacityQueriesAreExempt) {
  for (const char *N : {"size", "length", "max_size", "empty"}) {
    const MethodInfo *M = lookupMethod(TypeKind::StringView, N);
    ASSERT_NE(M, nullptr) << N;
    EXPECT_FALSE(M->isUse()) << N;
  }
  EXPECT_TRUE(lookupMethod(TypeKind::StringView, "remove_prefix")->isUse());
  EXPECT_EQ(lookupMethod(TypeKind::String, "remove_prefix"), nullptr);
}

TEST_P(StringMethodMatrix, ReportsIffInvalidating) {
  const MethodInfo *M = lookupMethod(TypeKind::String, GetParam());
  ASSERT_NE(M, nullptr);
  SourceAnalysis A = analyzeText(testsupport::matrixProgram(*M), "matrix.cvl");
  ASSERT_TRUE(A.ok()) << A.frontend.errors[0].str();
  const auto &R = A.analysis.reports;
  if (!M->invalidates()) {
    EXPECT_TRUE(R.empty()) << renderText(R);
    return;
  }
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].loc.line, testsupport::matrixUseLine());
  EXPECT_EQ(R[0].message, msg::UseAfterFree);
  ASSERT_GE(R[0].path.size(), 3u);
  EXPECT_EQ(R[0].path[1].message, std::string(msg::ReleasedPrefix) + std::string(M->name));
  EXPECT_EQ(R[0].path[1].loc.line, 5);
}

INSTANTIATE_TEST_SUITE_P(AllStringMembers, StringMethodMatrix,
                         ::testing::ValuesIn(namesOf(stringMethods())), paramName);

TEST_P(ViewMethodUse, ReportsIffUse) {
  const MethodInfo *M = lookupMethod(TypeKind::StringView, GetParam());
  ASSERT_NE(M, nullptr);
  std::string Call = "v." + GetParam() + "(";
  for (int I = 0; I < M->minArgs; ++I) {
    ArgKind K = M->args[I];
    Call += I ? ", " : "";
    Call += K == ArgKind::Int ? "0" : K == ArgKind::ViewRef ? "w" : "\"x\"";
  }
  Call += ");";
  if (GetParam() == "operator[]")
    Call = "v[0];";
  std::string Src = program({"std::string_view w = \"q\";", "std::string s(\"abc\");",
                             "std::string_view v = s;", "s.clear();", Call, "return 0;"});
  SourceAnalysis A = analyzeText(Src, "view.cvl");
  ASSERT_TRUE(A.ok()) << A.frontend.errors[0].str() << "\n" << Src;
  EXPECT_EQ(A.analysis.reports.size(), M->isUse() ? 1u : 0u) << Src;
  for (const BugReport &R : A.analysis.reports)
    EXPECT_EQ(R.loc.line, 6);
}

INSTANTIATE_TEST_SUITE_P(AllViewMembers, ViewMethodUse,
                         ::testing::ValuesIn(namesOf(viewMethods())), paramName);

TEST(StringModeling, RepeatedBufferRequestsShareSymbol) {
  SourceAnalysis A = analyzeText(program({"std::string s(\"abc\");", "const char *p = s.c_str();",
                                          "const char *q = s.data();", "return 0;"}),
                                 "t.cvl", {}, true);
  ASSERT_TRUE(A.ok());
  const FunctionAnalysis &FA = A.analysis.functions[0];
  // Look at the last node where both pointers are live.
  bool Found = false;
  for (std::size_t N = 0; N < FA.graph.numNodes(); ++N) {
    const ProgramState &S = *FA.graph.node(static_cast<int>(N)).state;
    std::optional<SVal> P, Q;
    for (const auto &[R, V] : S.store) {
      if (FA.symbols->regionName(R) == "p")
        P = V;
      if (FA.symbols->regionName(R) == "q")
        Q = V;
    }
    if (!P || !Q)
      continue;
    Found = true;
    EXPECT_TRUE(P->isPlainSymbol());
    EXPECT_EQ(*P, *Q);
  }
  EXPECT_TRUE(Found);
}

TEST(StringModeling, MutationRefreshesBuffer) {
  EXPECT_TRUE(reportsFor(program({"std::string s(\"abc\");", "const char *p = s.c_str();",
                                  "s.clear();", "p = s.c_str();", "return p[0];"}))
                  .empty());
}

TEST(StringModeling, StringSwapInvalidatesBoth) {
  auto R = reportsFor(program({"std::string a(\"a\");", "std::string b(\"b\");",
                               "std::string_view va = a;", "std::string_view vb = b;",
                               "a.swap(b);", "int x = va[0];", "return x;"}));
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].loc.line, 7);
  R = reportsFor(program({"std::string a(\"a\");", "std::string b(\"b\");",
                          "std::string_view vb = b;", "a.swap(b);", "return vb[0];"}));
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].loc.line, 6);
}

TEST(StringModeling, ViewSwapMovesAssociation) {
  // After the swap w refers to a and v to the literal.
  auto Base = std::vector<std::string>{"std::string a(\"a\");", "std::string_view v = a;",
                                       "std::string_view w = \"lit\";", "v.swap(w);", "a.clear();"};
  auto UseV = Base, UseW = Base;
  UseV.push_back("return v[0];");
  UseW.push_back("return w[0];");
  EXPECT_TRUE(reportsFor(program(UseV)).empty());
  auto R = reportsFor(program(UseW));
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].loc.line, 7);
}

TEST(StringModeling, ViewCopyInheritsAssociation) {
  auto R = reportsFor(program({"std::string a(\"a\");", "std::string_view v = a;",
                               "std::string_view w = v;", "a.append(\"x\");", "return w[0];"}));
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].loc.line, 6);
}

TEST(StringModeling, SubstrKeepsAssociation) {
  auto R = reportsFor(program({"std::string a(\"abc\");", "std::string_view v = a;",
                               "std::string_view w = v.substr(1);", "a.clear();",
                               "return w[0];"}));
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].loc.line, 6);
}

TEST(Lifetime, ReassignmentClearsRelease) {
  EXPECT_TRUE(reportsFor(program({"std::string a(\"a\");", "std::string_view v = a;", "a.clear();",
                                  "v = a;", "return v[0];"}))
                  .empty());
}

TEST(Lifetime, DestructorReleaseNote) {
  auto R = reportsFor(program({"std::string_view v;", "{", "  std::string s(\"abc\");", "  v = s;",
                               "}", "return v[0];"}));
  ASSERT_EQ(R.size(), 1u);
  ASSERT_EQ(R[0].path.size(), 3u);
  EXPECT_EQ(R[0].path[0].message, msg::Obtained);
  EXPECT_EQ(R[0].path[1].message, std::string(msg::ReleasedPrefix) + "destructor");
  EXPECT_EQ(R[0].path[1].loc.line, 6);
}

TEST(Lifetime, NonConstRefExternalCallInvalidates) {
  const char *Decl = "void mutate(std::string &s);\nvoid look(const std::string &s);\n";
  auto R = reportsFor(program({"std::string a(\"a\");", "std::string_view v = a;", "mutate(a);",
                               "return v[0];"},
                              Decl));
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].path[1].message, std::string(msg::ReleasedPrefix) + "mutate");
  EXPECT_TRUE(reportsFor(program({"std::string a(\"a\");", "std::string_view v = a;", "look(a);",
                                  "return v[0];"},
                                 Decl))
                  .empty());
}

TEST(Lifetime, ViewPassedToNonConstRefIsRefreshed) {
  const char *Decl = "void reseat(std::string_view &v);\n";
  EXPECT_TRUE(reportsFor(program({"std::string a(\"a\");", "std::string_view v = a;", "a.clear();",
                                  "reseat(v);", "return v[0];"},
                                 Decl))
                  .empty());
}

TEST(Lifetime, DanglingViewPassedByValue) {
  const char *Decl = "void consume(std::string_view v);\n";
  auto R = reportsFor(program({"std::string a(\"a\");", "std::string_view v = a;", "a.clear();",
                               "consume(v);", "return 0;"},
                              Decl));
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].loc.line, 6);
}

TEST(Lifetime, DataOfDanglingView) {
  auto R = reportsFor(program({"std::string a(\"a\");", "std::string_view v = a;", "a.clear();",
                               "const char *p = v.data();", "return 0;"}));
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].loc.line, 5);
}

TEST(Lifetime, RawPointerUsedAfterDestruction) {
  const char *Decl = "void takes(const char *p);\n";
  auto R = reportsFor(program({"const char *p = \"\";", "{", "  std::string s(\"abc\");",
                               "  p = s.c_str();", "}", "takes(p);", "return 0;"},
                              Decl));
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].checkerId, checker_ids::InnerPointer);
  EXPECT_EQ(R[0].loc.line, 8);
}

TEST(Lifetime, ReturnViewOfLocal) {
  auto R = reportsFor("std::string_view f() {\n  std::string s(\"a\");\n  return s;\n}\n");
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].category, BugCategory::StackUseAfterReturn);
  EXPECT_EQ(R[0].message,
            "Address of stack memory associated with local variable 's' returned to caller");
}

TEST(Lifetime, ReturnViewOfTemporary) {
  auto R = reportsFor("std::string_view f() {\n  std::string a(\"a\");\n  return a + \"b\";\n}\n");
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].category, BugCategory::StackUseAfterReturn);
  EXPECT_EQ(R[0].message, "Address of stack memory associated with temporary object returned to caller");
}

TEST(Lifetime, ReturnViewOfConstRefParamIsFine) {
  EXPECT_TRUE(reportsFor("std::string_view f(const std::string &s) {\n  return s;\n}\n").empty());
  EXPECT_TRUE(reportsFor("std::string_view f(std::string_view s) {\n  return s;\n}\n").empty());
}

TEST(Lifetime, ReturnViewOfByValueParam) {
  auto R = reportsFor("std::string_view f(std::string s) {\n  return s;\n}\n");
  ASSERT_EQ(R.size(), 1u);
  EXPECT_EQ(R[0].category, BugCategory::StackUseAfterReturn);
}

TEST(Lifetime, ReturnPointerIntoLocal) {
  auto R = reportsFor("const char *f() {\n  std::string s(\"a\");\n  return s.c_str();\n}\n");
  // The buffer is released only after the return value is computed; the
  // pointer itself is not a view, so nothing is reported here.
  EXPECT_TRUE(R.empty()) << renderText(R);
}

TEST(Registry, DisabledCheckersStaySilent) {
  std::string Src = program({"std::string s(\"abc\");", "std::string_view v(s);", "s = \"xyz\";",
                             "v.remove_prefix(1);", "return 0;"});
  CheckerRegistry C = builtinRegistry();
  EXPECT_EQ(reportsFor(Src, &C).size(), 1u);
  ASSERT_TRUE(C.setEnabled(std::string(checker_ids::StringViewChecker), false));
  EXPECT_TRUE(reportsFor(Src, &C).empty());
  EXPECT_FALSE(C.setEnabled("no.such.Checker", false));
}

TEST(Registry, BuiltinOrder) {
  CheckerRegistry C = builtinRegistry();
  ASSERT_EQ(C.checkers().size(), 4u);
  EXPECT_EQ(C.checkers()[0].id, checker_ids::StringModeling);
  EXPECT_EQ(C.checkers()[1].id, checker_ids::StringViewModeling);
  EXPECT_EQ(C.checkers()[2].id, checker_ids::InnerPointer);
  EXPECT_EQ(C.checkers()[3].id, checker_ids::StringViewChecker);
  EXPECT_EQ(C.traits().all().size(), 5u);
}

TEST(Paths, FirstEventIsAssociation) {
  for (const char *Sub : {"reference", "tp"})
    for (const auto &P : testsupport::corpusFiles(Sub)) {
      SourceAnalysis A = testsupport::analyzeFile(P);
      for (const BugReport &R : A.analysis.reports) {
        auto It = std::find_if(R.path.begin(), R.path.end(), [](const PathNote &N) {
          return N.kind == PathNote::Kind::Event;
        });
        ASSERT_NE(It, R.path.end());
        EXPECT_EQ(It->message, msg::Obtained) << P;
        EXPECT_EQ(R.path.back().message, R.message);
        EXPECT_EQ(R.path.back().loc, R.loc);
      }
    }
}
