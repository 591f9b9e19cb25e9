//===- diag.cpp - Bug paths, rendering and the verify harness -------------===//

#include "viewlint/diag.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace viewlint {

std::string_view categoryName(BugCategory C) {
  return C == BugCategory::UseAfterFree ? "use-after-free" : "stack-use-after-return";
}

std::optional<BugCategory> categoryFromName(std::string_view S) {
  if (S == "use-after-free")
    return BugCategory::UseAfterFree;
  if (S == "stack-use-after-return")
    return BugCategory::StackUseAfterReturn;
  return std::nullopt;
}

bool reportLess(const BugReport &A, const BugReport &B) {
  return std::tie(A.loc, A.checkerId, A.message) < std::tie(B.loc, B.checkerId, B.message);
}

//===----------------------------------------------------------------------===//
// Bug paths
//===----------------------------------------------------------------------===//

std::vector<PathNote> buildBugPath(const FunctionAnalysis &FA, const SinkReport &SR) {
  const ExplodedGraph &G = FA.graph;
  // Backward BFS from the sink; Via[n] is the edge leaving n toward the sink.
  std::vector<int> Via(G.numNodes(), -1);
  std::vector<bool> Seen(G.numNodes(), false);
  std::deque<int> Queue{SR.node};
  Seen[SR.node] = true;
  while (!Queue.empty() && !Seen[0]) {
    int N = Queue.front();
    Queue.pop_front();
    for (int E : G.node(N).inEdges) {
      int From = G.edge(E).from;
      if (Seen[From])
        continue;
      Seen[From] = true;
      Via[From] = E;
      Queue.push_back(From);
    }
  }
  std::vector<int> Edges;
  for (int N = 0; N != SR.node && Via[N] >= 0; N = G.edge(Via[N]).to)
    Edges.push_back(Via[N]);

  std::set<FrameId> Stack;
  for (const FrameRecord &F : G.node(SR.node).state->frames)
    Stack.insert(F.id);
  std::set<RegionId> Views(SR.report.views.begin(), SR.report.views.end());
  std::set<SymbolId> Syms(SR.report.syms.begin(), SR.report.syms.end());

  std::vector<PathNote> Rev;
  auto Emit = [&](const NoteTag &T, PathNote::Kind K = PathNote::Kind::Event) {
    Rev.push_back({K, T.message, T.loc});
  };
  for (auto E = Edges.rbegin(); E != Edges.rend(); ++E) {
    const auto &Notes = G.edge(*E).notes;
    for (auto It = Notes.rbegin(); It != Notes.rend(); ++It) {
      const NoteTag &T = *It;
      switch (T.kind) {
      case NoteTag::Kind::Release: {
        bool Hit = Syms.contains(T.sym);
        for (RegionId V : T.views)
          Hit |= Views.contains(V);
        if (Hit)
          Emit(T);
        break;
      }
      case NoteTag::Kind::Assoc:
        if (Views.erase(T.view))
          Emit(T);
        break;
      case NoteTag::Kind::ReleasedCopy:
        if (Views.erase(T.view)) {
          Emit(T);
          Views.insert(T.other);
        }
        break;
      case NoteTag::Kind::Swap: {
        bool A = Views.erase(T.view) > 0;
        bool B = Views.erase(T.other) > 0;
        if (A)
          Views.insert(T.other);
        if (B)
          Views.insert(T.view);
        break;
      }
      case NoteTag::Kind::BufferObtained:
      case NoteTag::Kind::CastCreated:
        if (Syms.erase(T.sym))
          Emit(T);
        break;
      case NoteTag::Kind::Control:
        if (Stack.contains(T.frame))
          Emit(T, PathNote::Kind::Control);
        break;
      }
    }
  }
  std::vector<PathNote> Path(Rev.rbegin(), Rev.rend());
  Path.push_back({PathNote::Kind::Event, SR.report.message, SR.report.loc});
  return Path;
}

//===----------------------------------------------------------------------===//
// Rendering
//===----------------------------------------------------------------------===//

static std::string locText(const SourceLocation &L) {
  return L.file + ":" + std::to_string(L.line) + ":" + std::to_string(L.column);
}

std::string renderText(const std::vector<BugReport> &Reports) {
  std::ostringstream OS;
  for (const BugReport &R : Reports) {
    OS << locText(R.loc) << ": warning: " << R.message << " [" << R.checkerId << "]\n";
    for (const PathNote &N : R.path)
      OS << "  " << locText(N.loc) << ": note: " << N.message << '\n';
  }
  return OS.str();
}

std::string renderJson(const std::vector<BugReport> &Reports) {
  nlohmann::json Arr = nlohmann::json::array();
  for (const BugReport &R : Reports) {
    nlohmann::json Path = nlohmann::json::array();
    for (const PathNote &N : R.path)
      Path.push_back({{"kind", N.kind == PathNote::Kind::Event ? "event" : "control"},
                      {"message", N.message},
                      {"line", N.loc.line},
                      {"col", N.loc.column}});
    Arr.push_back({{"checker", R.checkerId},
                   {"category", std::string(categoryName(R.category))},
                   {"message", R.message},
                   {"file", R.loc.file},
                   {"line", R.loc.line},
                   {"col", R.loc.column},
                   {"path", std::move(Path)}});
  }
  return nlohmann::json{{"reports", std::move(Arr)}}.dump(2) + "\n";
}

std::vector<BugReport> reportsFromJson(const std::string &Json) {
  std::vector<BugReport> Out;
  try {
    auto Doc = nlohmann::json::parse(Json);
    for (const auto &J : Doc.at("reports")) {
      BugReport R;
      R.checkerId = J.at("checker").get<std::string>();
      auto Cat = categoryFromName(J.at("category").get<std::string>());
      if (!Cat)
        throw std::runtime_error("unknown category");
      R.category = *Cat;
      R.message = J.at("message").get<std::string>();
      R.loc = {J.at("file").get<std::string>(), J.at("line").get<int>(), J.at("col").get<int>()};
      for (const auto &N : J.at("path")) {
        std::string Kind = N.at("kind").get<std::string>();
        if (Kind != "event" && Kind != "control")
          throw std::runtime_error("unknown note kind '" + Kind + "'");
        R.path.push_back({Kind == "event" ? PathNote::Kind::Event : PathNote::Kind::Control,
                          N.at("message").get<std::string>(),
                          {R.loc.file, N.at("line").get<int>(), N.at("col").get<int>()}});
      }
      Out.push_back(std::move(R));
    }
  } catch (const nlohmann::json::exception &E) {
    throw std::runtime_error(std::string("malformed report JSON: ") + E.what());
  }
  return Out;
}

//===----------------------------------------------------------------------===//
// Verify
//===----------------------------------------------------------------------===//

static std::string trim(std::string S) {
  auto NotSpace = [](unsigned char C) { return !std::isspace(C); };
  S.erase(S.begin(), std::find_if(S.begin(), S.end(), NotSpace));
  S.erase(std::find_if(S.rbegin(), S.rend(), NotSpace).base(), S.end());
  return S;
}

DirectiveParse parseDirectives(const std::vector<Token> &Tokens) {
  static const std::regex Word(R"(expected-(warning|note))");
  static const std::regex Full(R"(^expected-(warning|note)(@-([0-9]+))?[ \t]*\{\{(.*?)\}\})");
  DirectiveParse Out;
  for (const Token &T : Tokens) {
    if (T.kind != TokenKind::Comment)
      continue;
    const std::string &Text = T.text;
    for (auto It = std::sregex_iterator(Text.begin(), Text.end(), Word);
         It != std::sregex_iterator(); ++It) {
      std::smatch M;
      auto Begin = Text.begin() + It->position();
      if (!std::regex_search(Begin, Text.end(), M, Full)) {
        Out.errors.push_back({FrontendErrorKind::Parse, T.loc,
                              "malformed directive '" + It->str() +
                                  "': expected '{{pattern}}' after the directive"});
        continue;
      }
      Directive D;
      D.kind = M[1] == "warning" ? Directive::Kind::Warning : Directive::Kind::Note;
      D.loc = T.loc;
      D.line = T.loc.line - (M[3].matched ? std::stoi(M[3]) : 0);
      std::string Pat = trim(M[4]);
      if (Pat.size() >= 3 && Pat.compare(Pat.size() - 3, 3, "...") == 0)
        Pat = trim(Pat.substr(0, Pat.size() - 3));
      D.pattern = std::move(Pat);
      if (D.pattern.empty() || D.line < 1) {
        Out.errors.push_back({FrontendErrorKind::Parse, T.loc, "malformed directive: empty "
                                                               "pattern or line before file start"});
        continue;
      }
      Out.directives.push_back(std::move(D));
    }
  }
  return Out;
}

namespace {
struct Seen {
  Directive::Kind kind;
  int line;
  std::string message;
  SourceLocation loc;
};
} // namespace

VerifyResult verifyDirectives(const std::vector<Directive> &Directives,
                              const std::vector<BugReport> &Reports) {
  bool CheckNotes = std::any_of(Directives.begin(), Directives.end(),
                                [](const Directive &D) { return D.kind == Directive::Kind::Note; });
  std::vector<Seen> Diags;
  for (const BugReport &R : Reports) {
    Diags.push_back({Directive::Kind::Warning, R.loc.line, R.message, R.loc});
    if (CheckNotes)
      for (const PathNote &N : R.path)
        Diags.push_back({Directive::Kind::Note, N.loc.line, N.message, N.loc});
  }
  auto Matches = [&](const Directive &D, const Seen &S) {
    return D.kind == S.kind && D.line == S.line && S.message.find(D.pattern) != std::string::npos;
  };

  // Maximum bipartite matching with augmenting paths.
  std::vector<int> DiagOwner(Diags.size(), -1);
  std::vector<int> DirMatch(Directives.size(), -1);
  std::vector<bool> Visited;
  std::function<bool(int)> Augment = [&](int D) {
    for (std::size_t S = 0; S < Diags.size(); ++S) {
      if (Visited[S] || !Matches(Directives[D], Diags[S]))
        continue;
      Visited[S] = true;
      if (DiagOwner[S] < 0 || Augment(DiagOwner[S])) {
        DiagOwner[S] = D;
        DirMatch[D] = static_cast<int>(S);
        return true;
      }
    }
    return false;
  };
  for (std::size_t D = 0; D < Directives.size(); ++D) {
    Visited.assign(Diags.size(), false);
    Augment(static_cast<int>(D));
  }

  VerifyResult R;
  auto KindName = [](Directive::Kind K) { return K == Directive::Kind::Warning ? "warning" : "note"; };
  for (std::size_t D = 0; D < Directives.size(); ++D)
    if (DirMatch[D] < 0) {
      const Directive &Dir = Directives[D];
      R.mismatches.push_back(Dir.loc.file + ":" + std::to_string(Dir.line) + ": expected " +
                             KindName(Dir.kind) + " but not seen: {{" + Dir.pattern + "}}");
    }
  for (std::size_t S = 0; S < Diags.size(); ++S)
    if (DiagOwner[S] < 0)
      R.mismatches.push_back(locText(Diags[S].loc) + ": " + KindName(Diags[S].kind) +
                             " seen but not expected: " + Diags[S].message);
  R.passed = R.mismatches.empty();
  return R;
}

} // namespace viewlint
