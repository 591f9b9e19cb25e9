//===- cfg.cpp - Per-function control-flow graph --------------------------===//

#include "viewlint/cfg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace viewlint {

namespace {

class CfgBuilder {
public:
  explicit CfgBuilder(const Node &F) : F(F) {}

  Cfg run() {
    G.function = &F;
    G.entry = newBlock();
    G.exit = newBlock();
    G.blocks[G.exit].term.kind = Terminator::Kind::Exit;
    Cur = G.entry;

    const Node *Body = F.body();
    SourceLocation End = Body ? Body->range.end : F.range.end;
    Scopes.push_back({{}, End});
    for (const Node *P : F.params())
      if (P->type.isTracked() && !P->type.isRef())
        Scopes.back().decls.push_back(P);
    if (Body)
      buildBlock(*Body);
    emitScopeExit(Scopes.back(), End);
    Scopes.pop_back();
    jump(Cur, G.exit);
    return finish();
  }

private:
  struct Scope {
    std::vector<const Node *> decls;
    SourceLocation end;
  };

  int newBlock() {
    CfgBlock B;
    B.id = static_cast<int>(G.blocks.size());
    B.term.kind = Terminator::Kind::Jump;
    G.blocks.push_back(std::move(B));
    return G.blocks.back().id;
  }

  void emit(CfgElement::Kind K, const Node *N, SourceLocation L) {
    G.blocks[Cur].elements.push_back({K, N, std::move(L)});
  }

  void jump(int From, int To) {
    Terminator &T = G.blocks[From].term;
    T.kind = Terminator::Kind::Jump;
    T.succs = {To};
  }

  void emitScopeExit(const Scope &S, const SourceLocation &L) {
    for (auto It = S.decls.rbegin(); It != S.decls.rend(); ++It)
      emit(CfgElement::Kind::Destroy, *It, L);
  }

  /// Post-order over the expression tree; records temporaries in creation
  /// order.
  void linearize(const Node &E, std::vector<const Node *> &Temps) {
    for (const auto &C : E.children)
      linearize(*C, Temps);
    emit(CfgElement::Kind::Expr, &E, E.loc());
    if (E.temporary)
      Temps.push_back(&E);
  }

  void destroyTemps(const std::vector<const Node *> &Temps, const SourceLocation &L) {
    for (auto It = Temps.rbegin(); It != Temps.rend(); ++It)
      emit(CfgElement::Kind::TempDestroy, *It, L);
  }

  void fullStatement(const Node &S, const Node *Value) {
    std::vector<const Node *> Temps;
    if (Value)
      linearize(*Value, Temps);
    emit(CfgElement::Kind::Stmt, &S, S.loc());
    destroyTemps(Temps, S.range.end);
  }

  void buildBlock(const Node &B) {
    Scopes.push_back({{}, B.range.end});
    for (const auto &S : B.children)
      buildStmt(*S);
    emitScopeExit(Scopes.back(), B.range.end);
    Scopes.pop_back();
  }

  void buildStmt(const Node &S) {
    switch (S.kind) {
    case NodeKind::Block:
      buildBlock(S);
      return;
    case NodeKind::VarDecl:
      fullStatement(S, S.children.empty() ? nullptr : S.children[0].get());
      if (S.type.isTracked())
        Scopes.back().decls.push_back(&S);
      return;
    case NodeKind::ExprStmt:
      fullStatement(S, S.children[0].get());
      return;
    case NodeKind::Assign:
      fullStatement(S, S.children[1].get());
      return;
    case NodeKind::Return: {
      fullStatement(S, S.children.empty() ? nullptr : S.children[0].get());
      for (auto It = Scopes.rbegin(); It != Scopes.rend(); ++It)
        emitScopeExit(*It, S.loc());
      Terminator &T = G.blocks[Cur].term;
      T.kind = Terminator::Kind::Return;
      T.succs = {G.exit};
      Cur = newBlock();
      return;
    }
    case NodeKind::If: {
      const Node &Cond = *S.children[0];
      std::vector<const Node *> Temps;
      linearize(Cond, Temps);
      destroyTemps(Temps, Cond.range.end);
      int Head = Cur;
      int Then = newBlock();
      int Else = S.children.size() > 2 ? newBlock() : -1;
      Cur = Then;
      buildBlock(*S.children[1]);
      int ThenEnd = Cur;
      int ElseEnd = -1;
      if (Else >= 0) {
        Cur = Else;
        buildBlock(*S.children[2]);
        ElseEnd = Cur;
      }
      int Join = newBlock();
      Terminator &T = G.blocks[Head].term;
      T.kind = Terminator::Kind::Branch;
      T.cond = &Cond;
      T.succs = {Then, Else >= 0 ? Else : Join};
      jump(ThenEnd, Join);
      if (ElseEnd >= 0)
        jump(ElseEnd, Join);
      Cur = Join;
      return;
    }
    case NodeKind::While: {
      const Node &Cond = *S.children[0];
      int Header = newBlock();
      jump(Cur, Header);
      Cur = Header;
      std::vector<const Node *> Temps;
      linearize(Cond, Temps);
      destroyTemps(Temps, Cond.range.end);
      int CondEnd = Cur;
      int Body = newBlock();
      Cur = Body;
      buildBlock(*S.children[1]);
      jump(Cur, Header);
      int After = newBlock();
      Terminator &T = G.blocks[CondEnd].term;
      T.kind = Terminator::Kind::Branch;
      T.cond = &Cond;
      T.succs = {Body, After};
      Cur = After;
      return;
    }
    default:
      return;
    }
  }

  /// Drops unreachable blocks, renumbers in creation order, and fills in
  /// predecessors and back edges.
  Cfg finish() {
    std::vector<bool> Reachable(G.blocks.size(), false);
    std::vector<int> Work = {G.entry};
    Reachable[G.entry] = true;
    while (!Work.empty()) {
      int B = Work.back();
      Work.pop_back();
      for (int S : G.blocks[B].term.succs)
        if (!Reachable[S]) {
          Reachable[S] = true;
          Work.push_back(S);
        }
    }
    Reachable[G.exit] = true;

    std::map<int, int> Remap;
    Cfg Out;
    Out.function = G.function;
    for (const CfgBlock &B : G.blocks)
      if (Reachable[B.id])
        Remap[B.id] = static_cast<int>(Remap.size());
    for (const CfgBlock &B : G.blocks) {
      if (!Reachable[B.id])
        continue;
      CfgBlock NB = B;
      NB.id = Remap[B.id];
      for (int &S : NB.term.succs)
        S = Remap[S];
      NB.preds.clear();
      Out.blocks.push_back(std::move(NB));
    }
    Out.entry = Remap[G.entry];
    Out.exit = Remap[G.exit];
    for (const CfgBlock &B : Out.blocks)
      for (int S : B.term.succs)
        Out.blocks[S].preds.push_back(B.id);

    // Back edges: successor is on the DFS stack.
    std::vector<int> State(Out.blocks.size(), 0);
    std::function<void(int)> Dfs = [&](int B) {
      State[B] = 1;
      for (int S : Out.blocks[B].term.succs) {
        if (State[S] == 1)
          Out.backEdges.insert({B, S});
        else if (State[S] == 0)
          Dfs(S);
      }
      State[B] = 2;
    };
    Dfs(Out.entry);
    return Out;
  }

  const Node &F;
  Cfg G;
  int Cur = 0;
  std::vector<Scope> Scopes;
};

} // namespace

Cfg buildCfg(const Node &FunctionDecl) { return CfgBuilder(FunctionDecl).run(); }

std::vector<int> topoOrder(const Cfg &G) {
  std::vector<int> Post;
  std::vector<bool> Seen(G.blocks.size(), false);
  std::function<void(int)> Dfs = [&](int B) {
    Seen[B] = true;
    const auto &Succs = G.blocks[B].term.succs;
    // Visit the false edge first so the true branch comes first once the
    // post-order is reversed.
    for (auto It = Succs.rbegin(); It != Succs.rend(); ++It)
      if (!Seen[*It])
        Dfs(*It);
    Post.push_back(B);
  };
  Dfs(G.entry);
  std::reverse(Post.begin(), Post.end());
  return Post;
}

std::string describeElement(const CfgElement &E) {
  switch (E.kind) {
  case CfgElement::Kind::Expr:
    return printExpr(*E.node);
  case CfgElement::Kind::Stmt: {
    std::string S = printStmtHeader(*E.node);
    if (!S.empty() && S.back() == ';')
      S.pop_back();
    return S;
  }
  case CfgElement::Kind::Destroy:
    return "~" + E.node->name;
  case CfgElement::Kind::TempDestroy:
    return "~temp(" + printExpr(*E.node) + ")";
  }
  return "?";
}

std::string Cfg::dump() const {
  std::ostringstream OS;
  OS << "cfg " << (function ? function->name : "?") << '\n';
  for (const CfgBlock &B : blocks) {
    OS << 'B' << B.id << ": [";
    for (std::size_t I = 0; I < B.elements.size(); ++I) {
      if (I)
        OS << " | ";
      OS << describeElement(B.elements[I]);
    }
    OS << "] ->";
    if (B.term.kind == Terminator::Kind::Exit) {
      OS << " exit";
    } else {
      if (B.term.kind == Terminator::Kind::Branch)
        OS << " if (" << printExpr(*B.term.cond) << ")";
      if (B.term.kind == Terminator::Kind::Return)
        OS << " return";
      for (int S : B.term.succs)
        OS << " B" << S;
    }
    OS << '\n';
  }
  return OS.str();
}

} // namespace viewlint
