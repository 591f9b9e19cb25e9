//===- diag_test.cpp - Rendering, JSON and the verify harness -------------===//

#include "support/support.hpp"
#include "viewlint/lexer.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

using namespace viewlint;
using testsupport::analyzeText;

namespace {

BugReport sample() {
  BugReport R;
  R.checkerId = "cplusplus.StringViewChecker";
  R.category = BugCategory::UseAfterFree;
  R.message = std::string(msg::UseAfterFree);
  R.loc = {"a.cvl", 5, 3};
  R.path = {{PathNote::Kind::Event, std::string(msg::Obtained), {"a.cvl", 3, 3}},
            {PathNote::Kind::Control, "Assuming 'c' is true", {"a.cvl", 4, 7}},
            {PathNote::Kind::Event, R.message, R.loc}};
  return R;
}

std::vector<Directive> directivesOf(const std::string &Src) {
  DirectiveParse P = parseDirectives(lex(Src, "d.cvl").tokens);
  EXPECT_TRUE(P.errors.empty());
  return P.directives;
}

} // namespace

TEST(Render, TextFormat) {
  std::string T = renderText({sample()});
  EXPECT_EQ(T, "a.cvl:5:3: warning: Inner pointer of container used after re/deallocation "
               "[cplusplus.StringViewChecker]\n"
               "  a.cvl:3:3: note: Pointer to inner buffer of 'std::string' obtained here\n"
               "  a.cvl:4:7: note: Assuming 'c' is true\n"
               "  a.cvl:5:3: note: Inner pointer of container used after re/deallocation\n");
  EXPECT_EQ(renderText({}), "");
}

TEST(Render, JsonSchema) {
  auto J = nlohmann::json::parse(renderJson({sample()}));
  ASSERT_TRUE(J.contains("reports"));
  const auto &R = J["reports"][0];
  EXPECT_EQ(R["checker"], "cplusplus.StringViewChecker");
  EXPECT_EQ(R["category"], "use-after-free");
  EXPECT_EQ(R["line"], 5);
  EXPECT_EQ(R["col"], 3);
  EXPECT_EQ(R["file"], "a.cvl");
  EXPECT_EQ(R["path"][1]["kind"], "control");
  EXPECT_EQ(R["path"][0]["kind"], "event");
  EXPECT_EQ(nlohmann::json::parse(renderJson({}))["reports"].size(), 0u);
}

TEST(Render, JsonRoundTripOnCorpus) {
  std::vector<BugReport> All;
  for (const char *Sub : {"reference", "tp"})
    for (const auto &P : testsupport::corpusFiles(Sub)) {
      auto R = testsupport::analyzeFile(P).analysis.reports;
      All.insert(All.end(), R.begin(), R.end());
    }
  ASSERT_GE(All.size(), 16u);
  EXPECT_EQ(reportsFromJson(renderJson(All)), All);
}

TEST(Render, MalformedJsonRejected) {
  EXPECT_THROW(reportsFromJson("{"), std::runtime_error);
  EXPECT_THROW(reportsFromJson("{\"reports\":[{\"checker\":\"x\"}]}"), std::runtime_error);
  EXPECT_THROW(reportsFromJson(R"({"reports":[{"checker":"x","category":"bogus","message":"m",
      "file":"f","line":1,"col":1,"path":[]}]})"),
               std::runtime_error);
}

TEST(Render, CategoryNames) {
  EXPECT_EQ(categoryName(BugCategory::StackUseAfterReturn), "stack-use-after-return");
  EXPECT_EQ(categoryFromName("use-after-free"), BugCategory::UseAfterFree);
  EXPECT_FALSE(categoryFromName("UseAfterFree"));
}

TEST(Directives, ParseForms) {
  auto D = directivesOf("int x; // expected-warning {{abc ...}}\n"
                        "// expected-note@-1 {{def}}\n"
                        "/* expected-warning@-2{{ghi}} expected-note {{jkl}} */\n");
  ASSERT_EQ(D.size(), 4u);
  EXPECT_EQ(D[0].kind, Directive::Kind::Warning);
  EXPECT_EQ(D[0].line, 1);
  EXPECT_EQ(D[0].pattern, "abc");
  EXPECT_EQ(D[1].kind, Directive::Kind::Note);
  EXPECT_EQ(D[1].line, 1);
  EXPECT_EQ(D[2].line, 1);
  EXPECT_EQ(D[2].pattern, "ghi");
  EXPECT_EQ(D[3].line, 3);
}

TEST(Directives, MalformedReported) {
  for (const char *Bad : {"// expected-warning abc\n", "// expected-warning {{}}\n",
                          "// expected-note@-5 {{x}}\n"}) {
    DirectiveParse P = parseDirectives(lex(Bad, "d.cvl").tokens);
    EXPECT_FALSE(P.errors.empty()) << Bad;
    EXPECT_EQ(P.errors[0].loc.line, 1);
  }
}

TEST(Verify, CopyAssignFilePasses) {
  SourceAnalysis A = testsupport::analyzeFile(testsupport::corpusDir() / "reference" / "copy_assign_verify.cvl");
  VerifyResult V = verifySource(A);
  EXPECT_TRUE(V.passed) << (V.mismatches.empty() ? "" : V.mismatches[0]);
}

TEST(Verify, OffByOneFails) {
  SourceAnalysis A = testsupport::analyzeFile(testsupport::corpusDir() / "reference" / "copy_assign_verify.cvl");
  DirectiveParse P = parseDirectives(A.frontend.tokens);
  ASSERT_FALSE(P.directives.empty());
  for (std::size_t I = 0; I < P.directives.size(); ++I)
    for (int Delta : {-1, 1}) {
      auto D = P.directives;
      D[I].line += Delta;
      EXPECT_FALSE(verifyDirectives(D, A.analysis.reports).passed) << I << " " << Delta;
    }
}

TEST(Verify, ExpectedButNotSeen) {
  SourceAnalysis A = analyzeText("int f() {\n  return 0; // expected-warning {{boom}}\n}\n");
  VerifyResult V = verifySource(A);
  EXPECT_FALSE(V.passed);
  ASSERT_EQ(V.mismatches.size(), 1u);
  EXPECT_NE(V.mismatches[0].find("expected warning but not seen: {{boom}}"), std::string::npos);
}

TEST(Verify, SeenButNotExpected) {
  SourceAnalysis A = analyzeText("std::string_view f() {\n  std::string s;\n  return s;\n}\n");
  VerifyResult V = verifySource(A);
  EXPECT_FALSE(V.passed);
  ASSERT_EQ(V.mismatches.size(), 1u);
  EXPECT_NE(V.mismatches[0].find("warning seen but not expected"), std::string::npos);
}

TEST(Verify, MultisetSemantics) {
  BugReport R = sample();
  R.path.clear();
  std::vector<Directive> One = directivesOf("\n\n\n\n// expected-warning {{Inner pointer}}\n");
  std::vector<Directive> Two = directivesOf("\n\n\n\n// expected-warning {{Inner pointer}} "
                                            "expected-warning {{Inner}}\n");
  EXPECT_TRUE(verifyDirectives(One, {R}).passed);
  EXPECT_FALSE(verifyDirectives(Two, {R}).passed);
  EXPECT_TRUE(verifyDirectives(Two, {R, R}).passed);
  EXPECT_FALSE(verifyDirectives(One, {R, R}).passed);
}

TEST(Verify, MatchingIsNotGreedy) {
  // A greedy first-fit would give the broad pattern the specific message.
  BugReport A = sample(), B = sample();
  A.path.clear();
  B.path.clear();
  B.message = "Inner pointer of container used after something else";
  auto D = directivesOf("\n\n\n\n// expected-warning {{Inner pointer}} "
                        "expected-warning {{re/deallocation}}\n");
  EXPECT_TRUE(verifyDirectives(D, {A, B}).passed);
}

TEST(Verify, NotesCheckedOnlyWhenExpected) {
  BugReport R = sample();
  auto W = directivesOf("\n\n\n\n// expected-warning {{Inner}}\n");
  EXPECT_TRUE(verifyDirectives(W, {R}).passed);
  auto WN = directivesOf("\n\n\n\n// expected-warning {{Inner}} expected-note {{Inner}}\n");
  EXPECT_FALSE(verifyDirectives(WN, {R}).passed);
}

TEST(BugPath, DeterministicOrdering) {
  std::vector<BugReport> Rs = {sample(), sample()};
  Rs[1].loc.line = 2;
  std::stable_sort(Rs.begin(), Rs.end(), reportLess);
  EXPECT_EQ(Rs[0].loc.line, 2);
}
