//===- engine.cpp - Path-sensitive symbolic execution ---------------------===//

#include "viewlint/engine.hpp"
#include "viewlint/diag.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace viewlint {

//===----------------------------------------------------------------------===//
// ExplodedGraph
//===----------------------------------------------------------------------===//

static std::size_t pointHash(const ProgramPoint &P, const ProgramState &S) {
  std::size_t H = S.hash();
  H = hashCombine(H, std::hash<int>()(P.frame));
  H = hashCombine(H, std::hash<int>()(P.block));
  return hashCombine(H, std::hash<int>()(P.index));
}

int ExplodedGraph::getNode(const ProgramPoint &P, ProgramStateRef S, bool &Created) {
  std::size_t H = pointHash(P, *S);
  auto &Bucket = Index[H];
  for (int Id : Bucket)
    if (Nodes[Id].point == P && *Nodes[Id].state == *S) {
      Created = false;
      return Id;
    }
  int Id = static_cast<int>(Nodes.size());
  Nodes.push_back({Id, P, std::move(S), {}, {}, false});
  Bucket.push_back(Id);
  Created = true;
  return Id;
}

int ExplodedGraph::addSink(const ProgramPoint &P, ProgramStateRef S) {
  int Id = static_cast<int>(Nodes.size());
  Nodes.push_back({Id, P, std::move(S), {}, {}, true});
  return Id;
}

void ExplodedGraph::addEdge(int From, int To, std::vector<NoteTag> Notes) {
  int Id = static_cast<int>(Edges.size());
  Edges.push_back({From, To, std::move(Notes)});
  Nodes[From].outEdges.push_back(Id);
  Nodes[To].inEdges.push_back(Id);
}

//===----------------------------------------------------------------------===//
// Engine
//===----------------------------------------------------------------------===//

namespace {

bool isObject(TypeKind K) { return K == TypeKind::String || K == TypeKind::StringView; }

class Engine {
public:
  Engine(const TranslationUnit &TU, const CheckerRegistry &Checkers, const AnalysisLimits &Limits,
         std::set<const Node *> &Inlined)
      : TU(TU), Checkers(Checkers), Limits(Limits), Inlined(Inlined) {}

  FunctionAnalysis run(const Node &Fn);

private:
  const Cfg &cfgFor(const Node *Fn) {
    auto It = Cfgs.find(Fn);
    if (It == Cfgs.end())
      It = Cfgs.emplace(Fn, buildCfg(*Fn)).first;
    return It->second;
  }
  const Node *functionOf(FrameId F) const { return SC->frameInfo(F).function; }

  void process(int Id);
  void evalElement(int From, const ProgramPoint &P, ProgramStateRef S, const CfgElement &El);
  void evalTerminator(int From, const ProgramPoint &P, ProgramStateRef S, const Cfg &G,
                      const CfgBlock &B);
  void popFrame(int From, const ProgramPoint &P, ProgramStateRef S);

  ProgramStateRef evalExpr(CheckerContext &C, ProgramStateRef S, const Node &E,
                           const ProgramPoint &P, ProgramPoint &Next);
  ProgramStateRef evalCall(CheckerContext &C, ProgramStateRef S, const Node &E,
                           const ProgramPoint &P, ProgramPoint &Next);
  ProgramStateRef enterCall(CheckerContext &C, ProgramStateRef S, const Node &E, const Node &Def,
                            const ProgramPoint &P, ProgramPoint &Next);
  ProgramStateRef evalMethodCall(CheckerContext &C, ProgramStateRef S, const Node &E);
  ProgramStateRef evalStmt(CheckerContext &C, ProgramStateRef S, const Node &St);

  CallEvent functionCall(const ProgramState &S, const Node &E, FrameId F) const;
  ProgramStateRef runCall(CheckerContext &C, ProgramStateRef S, CallEvent &Ev, SVal Result);
  SVal conjure(const Node &N, FrameId F, int Iter) {
    return SVal::symbol(SC->symbol(SymbolOrigin::Conjured, &N, F, -1, Iter));
  }
  ProgramStateRef bindView(CheckerContext &C, ProgramStateRef S, RegionId R, SVal V,
                           const Node *Stmt) {
    return Checkers.dispatch(&CheckerCallbacks::bind, C, std::move(S), BindEvent{R, V, Stmt});
  }

  ProgramStateRef collectDeadSymbols(CheckerContext &C, ProgramStateRef S);
  /// Adds the successor of \p From produced by one transition.
  void emit(int From, const ProgramPoint &Cur, const ProgramPoint &Next, ProgramStateRef S,
            CheckerContext &C);

  const TranslationUnit &TU;
  const CheckerRegistry &Checkers;
  const AnalysisLimits &Limits;
  std::set<const Node *> &Inlined;
  std::map<const Node *, Cfg> Cfgs;

  FunctionAnalysis *FA = nullptr;
  SymbolicContext *SC = nullptr;
  std::vector<int> Worklist;
  std::vector<int> Pending;
};

FunctionAnalysis Engine::run(const Node &Fn) {
  FunctionAnalysis Result;
  Result.function = &Fn;
  Result.symbols = std::make_unique<SymbolicContext>();
  FA = &Result;
  SC = Result.symbols.get();

  FrameId F0 = SC->frame(-1, nullptr, &Fn, 0);
  FrameRecord Top;
  Top.id = F0;
  auto S = ProgramState::make();
  std::vector<std::pair<RegionId, SVal>> Binds;
  for (const Node *P : Fn.params()) {
    TypeKind K = P->type.kind;
    RegionId R;
    if (P->type.isRef()) {
      R = SC->region(RegionKind::CallerOwned, P, F0, K);
      Top.aliases[P] = R;
    } else {
      R = SC->region(RegionKind::Param, P, F0, K);
    }
    SVal V = isObject(K) ? SVal::unknown()
                         : SVal::symbol(SC->symbol(SymbolOrigin::ParamInit, P, F0, R, 0));
    Binds.emplace_back(R, V);
  }
  S = S->withFrames({Top});
  for (auto &[R, V] : Binds)
    S = S->bind(R, V);

  const Cfg &G = cfgFor(&Fn);
  bool Created;
  int Root = Result.graph.getNode({F0, G.entry, 0}, S, Created);
  Worklist.push_back(Root);
  while (!Worklist.empty()) {
    if (Result.graph.numNodes() >= static_cast<std::size_t>(Limits.maxNodes)) {
      Result.incomplete = true;
      break;
    }
    int Id = Worklist.back();
    Worklist.pop_back();
    process(Id);
    // Successors created in order (true branch first) are explored in order.
    for (auto It = Pending.rbegin(); It != Pending.rend(); ++It)
      Worklist.push_back(*It);
    Pending.clear();
  }
  FA = nullptr;
  SC = nullptr;
  return Result;
}

void Engine::process(int Id) {
  ProgramPoint P = FA->graph.node(Id).point;
  ProgramStateRef S = FA->graph.node(Id).state;
  const Cfg &G = cfgFor(functionOf(P.frame));
  const CfgBlock &B = G.block(P.block);
  if (P.index < static_cast<int>(B.elements.size()))
    evalElement(Id, P, S, B.elements[P.index]);
  else
    evalTerminator(Id, P, S, G, B);
}

void Engine::emit(int From, const ProgramPoint &Cur, const ProgramPoint &Next, ProgramStateRef S,
                  CheckerContext &C) {
  if (!C.isSink())
    S = collectDeadSymbols(C, S);
  ExplodedGraph &G = FA->graph;
  if (C.isSink()) {
    int Sink = G.addSink(Cur, S);
    G.addEdge(From, Sink, std::move(C.Notes));
    for (PendingReport &R : C.Reports)
      FA->sinks.push_back({std::move(R), Sink});
    return;
  }
  bool Created;
  int Id = G.getNode(Next, S, Created);
  G.addEdge(From, Id, std::move(C.Notes));
  if (Created)
    Pending.push_back(Id);
}

ProgramStateRef Engine::collectDeadSymbols(CheckerContext &C, ProgramStateRef S) {
  std::set<SymbolId> Live;
  auto Mark = [&](const SVal &V) {
    if (V.isSymbolic())
      Live.insert(V.sym);
  };
  for (const auto &[R, V] : S->store)
    Mark(V);
  for (const auto &[K, V] : S->env)
    Mark(V);
  for (const FrameRecord &F : S->frames)
    Mark(F.retVal);
  const auto &Traits = Checkers.traits().all();
  for (const TraitDesc &D : Traits)
    if (D.options.symbolValues)
      for (const auto &[K, V] : S->traitMap(D.id))
        if (const auto *Sym = std::get_if<std::int64_t>(&V))
          Live.insert(static_cast<SymbolId>(*Sym));

  std::set<SymbolId> Dead;
  for (const auto &[Sym, R] : S->constraints)
    if (!Live.contains(Sym))
      Dead.insert(Sym);
  for (const TraitDesc &D : Traits)
    if (D.options.symbolKeys)
      for (const auto &[K, V] : S->traitMap(D.id))
        if (!Live.contains(static_cast<SymbolId>(K)))
          Dead.insert(static_cast<SymbolId>(K));
  if (Dead.empty())
    return S;

  ConstraintMap M = S->constraints;
  for (SymbolId Sym : Dead)
    M = M.erase(Sym);
  S = S->withConstraints(std::move(M));
  for (const TraitDesc &D : Traits)
    if (D.options.symbolKeys)
      S = S->withTraitMap(D.id, S->traitMap(D.id).eraseIf([&](TraitKey K, const TraitValue &) {
        return Dead.contains(static_cast<SymbolId>(K));
      }));
  return Checkers.dispatch(&CheckerCallbacks::deadSymbols, C, S,
                           DeadSymbolsEvent{{Dead.begin(), Dead.end()}});
}

//===----------------------------------------------------------------------===//
// Elements
//===----------------------------------------------------------------------===//

void Engine::evalElement(int From, const ProgramPoint &P, ProgramStateRef S,
                         const CfgElement &El) {
  CheckerContext C(*SC, P.frame, El.loc);
  C.iteration = S->top().iterations;
  ProgramPoint Next{P.frame, P.block, P.index + 1};
  const Node &N = *El.node;
  switch (El.kind) {
  case CfgElement::Kind::Expr:
    S = evalExpr(C, S, N, P, Next);
    break;
  case CfgElement::Kind::Stmt:
    S = evalStmt(C, S, N);
    if (!C.isSink())
      S = S->clearEnv(P.frame);
    break;
  case CfgElement::Kind::Destroy: {
    RegionId R = regionForDecl(*S, *SC, N);
    if (S->isLive(R)) {
      S = Checkers.dispatch(&CheckerCallbacks::destroyRegion, C, S, DestroyEvent{R, El.loc});
      S = S->kill(R);
    }
    break;
  }
  case CfgElement::Kind::TempDestroy:
    if (auto R = SC->findRegion(RegionKind::Temp, &N, P.frame); R && S->isLive(*R)) {
      S = Checkers.dispatch(&CheckerCallbacks::destroyRegion, C, S, DestroyEvent{*R, El.loc});
      S = S->kill(*R);
    }
    break;
  }
  emit(From, P, Next, S, C);
}

static BinOp binOpFor(const std::string &Op) {
  if (Op == "+")
    return BinOp::Add;
  if (Op == "-")
    return BinOp::Sub;
  if (Op == "==")
    return BinOp::EQ;
  if (Op == "!=")
    return BinOp::NE;
  if (Op == "<")
    return BinOp::LT;
  return BinOp::GT;
}

ProgramStateRef Engine::evalExpr(CheckerContext &C, ProgramStateRef S, const Node &E,
                                 const ProgramPoint &P, ProgramPoint &Next) {
  FrameId F = P.frame;
  auto Value = [&](const Node &Sub) { return S->exprValue(Sub, F); };
  auto Fresh = [&]() { return conjure(E, F, C.iteration).sym; };

  switch (E.kind) {
  case NodeKind::Literal:
    if (E.literalKind == LiteralKind::String)
      return S->bindExpr(E, F, SVal::unknown());
    return S->bindExpr(E, F, SVal::concrete(E.intValue));

  case NodeKind::VarRef: {
    RegionId R = regionForDecl(*S, *SC, *E.decl);
    if (isObject(E.decl->type.kind))
      return S->bindExpr(E, F, SVal::regionVal(R));
    const SVal *V = S->load(R);
    return S->bindExpr(E, F, V ? *V : SVal::unknown());
  }

  case NodeKind::Convert: {
    CallEvent Ev;
    Ev.kind = CallEvent::Kind::Conversion;
    Ev.expr = &E;
    Ev.name = "operator std::string_view";
    Ev.receiver = Value(*E.children[0]);
    return runCall(C, S, Ev, SVal::unknown());
  }

  case NodeKind::UnaryOp: {
    SVal V = Value(*E.children[0]);
    SVal R = E.name == "!" ? evalNot(V, Fresh)
                           : evalBinOp(SVal::concrete(0), BinOp::Sub, V, Fresh);
    return S->bindExpr(E, F, R);
  }

  case NodeKind::BinaryOp: {
    SVal L = Value(*E.children[0]);
    SVal R = Value(*E.children[1]);
    if (!E.method)
      return S->bindExpr(E, F, evalBinOp(L, binOpFor(E.name), R, Fresh));
    CallEvent Ev;
    Ev.kind = CallEvent::Kind::Operator;
    Ev.expr = &E;
    Ev.name = "operator" + E.name;
    Ev.method = E.method;
    for (int I = 0; I < 2; ++I) {
      const Node &A = *E.children[I];
      CvlType T = E.method->argKind(I) == ArgKind::View
                      ? CvlType{TypeKind::StringView, RefKind::None}
                      : CvlType{A.type.kind, RefKind::ConstRef};
      Ev.args.push_back({I == 0 ? L : R, &A, T});
    }
    SVal Result;
    if (E.type.kind == TypeKind::String) {
      RegionId T = SC->region(RegionKind::Temp, &E, F, TypeKind::String);
      S = S->bind(T, SVal::unknown());
      Result = SVal::regionVal(T);
    } else {
      Result = conjure(E, F, C.iteration);
    }
    return runCall(C, S, Ev, Result);
  }

  case NodeKind::Index: {
    const Node &Base = *E.children[0];
    CallEvent Ev;
    Ev.expr = &E;
    SVal Idx = Value(*E.children[1]);
    if (E.method) {
      Ev.kind = CallEvent::Kind::Method;
      Ev.name = "operator[]";
      Ev.method = E.method;
      Ev.receiver = Value(Base);
      Ev.args.push_back({Idx, E.children[1].get(), {TypeKind::Int, RefKind::None}});
    } else {
      Ev.kind = CallEvent::Kind::PointerIndex;
      Ev.name = "operator[]";
      Ev.args.push_back({Value(Base), &Base, {TypeKind::CharPtr, RefKind::None}});
      Ev.args.push_back({Idx, E.children[1].get(), {TypeKind::Int, RefKind::None}});
    }
    return runCall(C, S, Ev, conjure(E, F, C.iteration));
  }

  case NodeKind::MethodCall:
    return evalMethodCall(C, S, E);

  case NodeKind::Call:
    return evalCall(C, S, E, P, Next);

  default:
    return S;
  }
}

ProgramStateRef Engine::runCall(CheckerContext &C, ProgramStateRef S, CallEvent &Ev,
                                SVal Result) {
  FrameId F = C.frame();
  S = Checkers.dispatch(&CheckerCallbacks::preCall, C, S, Ev);
  if (C.isSink())
    return S;
  S = S->bindExpr(*Ev.expr, F, Result);
  Ev.result = Result;
  return Checkers.dispatch(&CheckerCallbacks::postCall, C, S, Ev);
}

static CvlType methodParam(ArgKind K, TypeKind ArgType) {
  switch (K) {
  case ArgKind::Int:
    return {TypeKind::Int, RefKind::None};
  case ArgKind::StringLike:
    return {ArgType, RefKind::ConstRef};
  case ArgKind::View:
    return {TypeKind::StringView, RefKind::None};
  case ArgKind::StringRef:
    return {TypeKind::String, RefKind::MutRef};
  case ArgKind::ViewRef:
    return {TypeKind::StringView, RefKind::MutRef};
  }
  return {};
}

ProgramStateRef Engine::evalMethodCall(CheckerContext &C, ProgramStateRef S, const Node &E) {
  FrameId F = C.frame();
  CallEvent Ev;
  Ev.kind = CallEvent::Kind::Method;
  Ev.expr = &E;
  Ev.name = E.name;
  Ev.method = E.method;
  Ev.receiver = S->exprValue(*E.children[0], F);
  for (std::size_t I = 1; I < E.children.size(); ++I) {
    const Node &A = *E.children[I];
    Ev.args.push_back({S->exprValue(A, F), &A,
                       methodParam(E.method->argKind(static_cast<int>(I) - 1), A.type.kind)});
  }
  SVal Result;
  switch (E.method->result) {
  case TypeKind::Void:
    break;
  case TypeKind::String:
  case TypeKind::StringView: {
    RegionId T = SC->region(RegionKind::Temp, &E, F, E.method->result);
    S = S->bind(T, SVal::unknown());
    Result = SVal::regionVal(T);
    break;
  }
  default:
    Result = conjure(E, F, C.iteration);
    break;
  }
  return runCall(C, S, Ev, Result);
}

CallEvent Engine::functionCall(const ProgramState &S, const Node &E, FrameId F) const {
  CallEvent Ev;
  Ev.kind = CallEvent::Kind::Function;
  Ev.expr = &E;
  Ev.name = E.name;
  Ev.callee = E.decl;
  auto Params = E.decl->params();
  for (std::size_t I = 0; I < E.children.size(); ++I)
    Ev.args.push_back({S.exprValue(*E.children[I], F), E.children[I].get(), Params[I]->type});
  return Ev;
}

ProgramStateRef Engine::evalCall(CheckerContext &C, ProgramStateRef S, const Node &E,
                                 const ProgramPoint &P, ProgramPoint &Next) {
  FrameId F = C.frame();
  CallEvent Ev = functionCall(*S, E, F);
  const Node *Def = TU.findFunction(E.name);
  bool Recursive = false;
  for (const FrameRecord &R : S->frames)
    Recursive |= functionOf(R.id) == Def;
  Ev.inlined = Def && Def->hasBody && !Recursive &&
               static_cast<int>(S->frames.size()) < Limits.maxInlineDepth;

  S = Checkers.dispatch(&CheckerCallbacks::preCall, C, S, Ev);
  if (C.isSink())
    return S;
  if (Ev.inlined)
    return enterCall(C, S, E, *Def, P, Next);

  // Conservative evaluation.
  SVal Result;
  TypeKind RT = E.decl->type.kind;
  if (isObject(RT)) {
    RegionId T = SC->region(RegionKind::Temp, &E, F, RT);
    S = S->bind(T, SVal::unknown());
    Result = SVal::regionVal(T);
  } else if (RT != TypeKind::Void) {
    Result = conjure(E, F, C.iteration);
  }
  for (const CallArg &A : Ev.args)
    if (A.param.ref == RefKind::MutRef && !isObject(A.param.kind) &&
        A.expr->kind == NodeKind::VarRef)
      S = S->bind(regionForDecl(*S, *SC, *A.expr->decl), conjure(*A.expr, F, C.iteration));
  S = S->bindExpr(E, F, Result);
  Ev.result = Result;
  return Checkers.dispatch(&CheckerCallbacks::postCall, C, S, Ev);
}

ProgramStateRef Engine::enterCall(CheckerContext &C, ProgramStateRef S, const Node &E,
                                  const Node &Def, const ProgramPoint &P, ProgramPoint &Next) {
  FrameId Parent = P.frame;
  FrameId NF = SC->frame(Parent, &E, &Def, S->top().iterations);
  FrameRecord FR;
  FR.id = NF;
  FR.retBlock = P.block;
  FR.retIndex = P.index;
  FR.callExpr = &E;

  auto Params = Def.params();
  std::vector<std::pair<RegionId, SVal>> ByValue;
  for (std::size_t I = 0; I < Params.size(); ++I) {
    const Node *Pd = Params[I];
    const Node &A = *E.children[I];
    SVal V = S->exprValue(A, Parent);
    TypeKind K = Pd->type.kind;
    if (Pd->type.isRef() && A.kind == NodeKind::VarRef && A.type.kind == K) {
      FR.aliases[Pd] = regionForDecl(*S, *SC, *A.decl);
      continue;
    }
    if (Pd->type.ref == RefKind::ConstRef && isObject(K)) {
      if (V.isRegion()) {
        FR.aliases[Pd] = V.region;
        continue;
      }
      // Materialize the temporary the reference binds to.
      RegionId T = SC->region(RegionKind::Temp, &A, Parent, K);
      S = S->bind(T, SVal::unknown());
      if (K == TypeKind::StringView)
        S = bindView(C, S, T, V, &E);
      FR.aliases[Pd] = T;
      continue;
    }
    RegionId R = SC->region(RegionKind::Param, Pd, NF, K);
    ByValue.emplace_back(R, V);
  }

  std::vector<FrameRecord> Frames = S->frames;
  Frames.push_back(std::move(FR));
  S = S->withFrames(std::move(Frames));
  Inlined.insert(&Def);

  CheckerContext Inner(*SC, NF, E.loc());
  for (auto &[R, V] : ByValue) {
    TypeKind K = SC->regionInfo(R).type;
    S = S->bind(R, isObject(K) ? SVal::unknown() : V);
    if (K == TypeKind::StringView)
      S = bindView(Inner, S, R, V, &E);
  }
  for (NoteTag &N : Inner.Notes)
    C.Notes.push_back(std::move(N));
  for (PendingReport &R : Inner.Reports)
    C.Reports.push_back(std::move(R));

  Next = {NF, cfgFor(&Def).entry, 0};
  return S;
}

ProgramStateRef Engine::evalStmt(CheckerContext &C, ProgramStateRef S, const Node &St) {
  FrameId F = C.frame();
  switch (St.kind) {
  case NodeKind::VarDecl: {
    RegionId R = regionForDecl(*S, *SC, St);
    const Node *Init = St.children.empty() ? nullptr : St.children[0].get();
    SVal V = Init ? S->exprValue(*Init, F) : SVal::unknown();
    switch (St.type.kind) {
    case TypeKind::Int:
    case TypeKind::Bool:
      return S->bind(R, Init ? V : conjure(St, F, C.iteration));
    case TypeKind::CharPtr:
      return S->bind(R, V);
    case TypeKind::String:
      if (Init && Init->type.kind != TypeKind::String) {
        CallEvent Ev;
        Ev.kind = CallEvent::Kind::Constructor;
        Ev.expr = &St;
        Ev.name = "std::string";
        Ev.args.push_back({V, Init, {Init->type.kind, RefKind::None}});
        S = Checkers.dispatch(&CheckerCallbacks::preCall, C, S, Ev);
        if (C.isSink())
          return S;
        Ev.result = SVal::regionVal(R);
        S = Checkers.dispatch(&CheckerCallbacks::postCall, C, S, Ev);
      }
      return S->bind(R, SVal::unknown());
    case TypeKind::StringView:
      S = S->bind(R, Init ? SVal::unknown() : SVal::uninit());
      return bindView(C, S, R, Init ? V : SVal::uninit(), &St);
    default:
      return S;
    }
  }

  case NodeKind::Assign: {
    const Node &Target = *St.children[0];
    RegionId R = regionForDecl(*S, *SC, *Target.decl);
    SVal V = S->exprValue(*St.children[1], F);
    if (Target.type.kind == TypeKind::StringView)
      return bindView(C, S->bind(R, SVal::unknown()), R, V, &St);
    return S->bind(R, V);
  }

  case NodeKind::Return: {
    SVal V = St.children.empty() ? SVal::unknown() : S->exprValue(*St.children[0], F);
    const Node *Fn = functionOf(F);
    S = Checkers.dispatch(&CheckerCallbacks::preReturn, C, S, ReturnEvent{V, &St, F, Fn});
    if (C.isSink())
      return S;
    std::vector<FrameRecord> Frames = S->frames;
    FrameRecord &Top = Frames.back();
    TypeKind RT = Fn->type.kind;
    if (Frames.size() > 1 && isObject(RT)) {
      FrameId Parent = Frames[Frames.size() - 2].id;
      RegionId T = SC->region(RegionKind::Temp, Top.callExpr, Parent, RT);
      S = S->bind(T, SVal::unknown());
      if (RT == TypeKind::StringView)
        S = bindView(C, S, T, V, &St);
      Top.retVal = SVal::regionVal(T);
    } else {
      Top.retVal = V;
    }
    return S->withFrames(std::move(Frames));
  }

  default:
    return S;
  }
}

//===----------------------------------------------------------------------===//
// Terminators
//===----------------------------------------------------------------------===//

void Engine::evalTerminator(int From, const ProgramPoint &P, ProgramStateRef S, const Cfg &G,
                            const CfgBlock &B) {
  const Terminator &T = B.term;
  FrameId F = P.frame;
  switch (T.kind) {
  case Terminator::Kind::Jump: {
    int To = T.succs[0];
    if (G.isBackEdge(P.block, To)) {
      const int *Count = S->loopCounts.lookup({F, To});
      int N = Count ? *Count : 0;
      if (N >= Limits.maxLoopUnroll)
        return;
      S = S->withLoopCount(F, To, N + 1);
      std::vector<FrameRecord> Frames = S->frames;
      ++Frames.back().iterations;
      S = S->withFrames(std::move(Frames));
    }
    CheckerContext C(*SC, F, SourceLocation{});
    emit(From, P, {F, To, 0}, S, C);
    return;
  }

  case Terminator::Kind::Branch: {
    SVal V = S->exprValue(*T.cond, F);
    S = S->clearEnv(F);
    bool LoopHeader = false;
    for (const auto &[A, Bk] : G.backEdges)
      LoopHeader |= Bk == P.block;
    std::optional<ConstraintMap> Outcome[2] = {assume(S->constraints, V, true),
                                               assume(S->constraints, V, false)};
    bool Both = Outcome[0] && Outcome[1];
    for (int I = 0; I < 2; ++I) {
      if (!Outcome[I])
        continue;
      ProgramStateRef NS = S->withConstraints(std::move(*Outcome[I]));
      if (I == 1 && LoopHeader && NS->loopCounts.contains({F, P.block})) {
        auto Copy = std::make_shared<ProgramState>(*NS);
        Copy->loopCounts = Copy->loopCounts.erase({F, P.block});
        NS = Copy;
      }
      CheckerContext C(*SC, F, T.cond->loc());
      if (Both) {
        NoteTag N{NoteTag::Kind::Control,
                  "Assuming '" + printExpr(*T.cond) + "' is " + (I == 0 ? "true" : "false"),
                  T.cond->loc()};
        N.assumption = I == 0;
        C.addNote(std::move(N));
      }
      emit(From, P, {F, T.succs[I], 0}, NS, C);
    }
    return;
  }

  case Terminator::Kind::Return: {
    CheckerContext C(*SC, F, SourceLocation{});
    emit(From, P, {F, T.succs[0], 0}, S, C);
    return;
  }

  case Terminator::Kind::Exit:
    if (S->frames.size() == 1) {
      FA->leaves.push_back(From);
      return;
    }
    popFrame(From, P, S);
    return;
  }
}

void Engine::popFrame(int From, const ProgramPoint &P, ProgramStateRef S) {
  FrameRecord FR = S->top();
  auto Copy = std::make_shared<ProgramState>(*S);
  Copy->frames.pop_back();
  FrameId Callee = FR.id;
  Copy->store = Copy->store.eraseIf(
      [&](RegionId R, const SVal &) { return SC->regionInfo(R).frame == Callee; });
  Copy->env = Copy->env.eraseIf([&](const EnvKey &K, const SVal &) { return K.second == Callee; });
  Copy->loopCounts = Copy->loopCounts.eraseIf(
      [&](const std::pair<FrameId, int> &K, int) { return K.first == Callee; });
  S = Copy;

  FrameId Parent = S->frame();
  const Node &CallE = *FR.callExpr;
  S = S->bindExpr(CallE, Parent, FR.retVal);
  CheckerContext C(*SC, Parent, CallE.loc());
  C.iteration = S->top().iterations;
  CallEvent Ev = functionCall(*S, CallE, Parent);
  Ev.inlined = true;
  Ev.result = FR.retVal;
  S = Checkers.dispatch(&CheckerCallbacks::postCall, C, S, Ev);
  emit(From, P, {Parent, FR.retBlock, FR.retIndex + 1}, S, C);
}

} // namespace

//===----------------------------------------------------------------------===//
// Entry points
//===----------------------------------------------------------------------===//

FunctionAnalysis analyzeFunction(const TranslationUnit &TU, const Node &Function,
                                 const CheckerRegistry &Checkers, const AnalysisLimits &Limits,
                                 std::set<const Node *> &Inlined) {
  Engine E(TU, Checkers, Limits, Inlined);
  return E.run(Function);
}

AnalysisResult analyzeTranslationUnit(const TranslationUnit &TU, const CheckerRegistry &Checkers,
                                      const AnalysisLimits &Limits, bool KeepGraphs) {
  AnalysisResult Result;
  std::set<const Node *> Inlined;
  using Key = std::tuple<std::string, std::string, SourceLocation>;
  std::map<Key, BugReport> Unique;
  for (const NodePtr &Fn : TU.functions) {
    if (!Fn->hasBody || Inlined.contains(Fn.get()))
      continue;
    FunctionAnalysis FA = analyzeFunction(TU, *Fn, Checkers, Limits, Inlined);
    if (FA.incomplete)
      Result.incomplete.push_back(Fn->name);
    for (const SinkReport &SR : FA.sinks) {
      BugReport R;
      R.checkerId = SR.report.checkerId;
      R.category = SR.report.category;
      R.message = SR.report.message;
      R.loc = SR.report.loc;
      R.path = buildBugPath(FA, SR);
      Key K{R.checkerId, R.message, R.loc};
      auto It = Unique.find(K);
      if (It == Unique.end())
        Unique.emplace(K, std::move(R));
      else if (R.path.size() < It->second.path.size())
        It->second = std::move(R);
    }
    if (KeepGraphs)
      Result.functions.push_back(std::move(FA));
  }
  for (auto &[K, R] : Unique)
    Result.reports.push_back(std::move(R));
  std::stable_sort(Result.reports.begin(), Result.reports.end(), reportLess);
  return Result;
}

std::string pointName(const FunctionAnalysis &FA, const ProgramPoint &P) {
  std::ostringstream OS;
  OS << FA.symbols->frameInfo(P.frame).function->name << '@' << P.frame << ":B" << P.block << '.'
     << P.index;
  return OS.str();
}

std::string dumpExplodedGraph(const FunctionAnalysis &FA) {
  std::ostringstream OS;
  OS << "graph " << FA.function->name << '\n';
  for (const ExplodedNode &N : FA.graph.nodes()) {
    OS << "node " << N.id << " point=" << pointName(FA, N.point) << (N.sink ? " sink" : "")
       << '\n';
    std::istringstream Lines(N.state->dump(*FA.symbols));
    for (std::string L; std::getline(Lines, L);)
      OS << "  " << L << '\n';
  }
  for (const ExplodedEdge &E : FA.graph.edges())
    OS << "edge " << E.from << ' ' << E.to << '\n';
  return OS.str();
}

} // namespace viewlint
